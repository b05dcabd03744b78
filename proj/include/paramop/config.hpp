#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paramop/disc.hpp"
#include "paramop/numerics.hpp"

namespace paramop {

/// Problem selector plus per-problem parameters. Fields irrelevant to the
/// chosen problem keep their defaults and are ignored.
struct ProblemConfig {
    std::string name = "affine-matrix";
    int dim = 2;
    Scalar k_star{0.0, 0.0};          // "diag-near-singular" singular point
    std::vector<Scalar> jump_rhs;     // "remark12" rhs g; empty selects the first basis vector
    std::string kernel = "separable-xy";  // "fredholm" kernel registry name
    int quad_nodes = 8;                   // "fredholm" Gauss rule size
    std::string nonlinearity = "cubic";   // "semilinear" g registry name
    Real operator_k = 1.0;                // "semilinear" screening parameter of the operator
    Real domain_radius = 1.0;             // "semilinear" ball radius a
    int radial_nodes = 16;                // "semilinear" radial Gauss rule size

    bool operator==(const ProblemConfig&) const = default;
};

struct DiscConfig {
    Scalar center{0.0, 0.0};
    Real radius = 1.0;
    int samples = 5;
    GridKind grid = GridKind::real_chord;
    std::vector<Real> h_sequence = default_h_sequence();

    bool operator==(const DiscConfig&) const = default;
};

struct ToleranceConfig {
    Real newton_tol = 1e-12;
    Real slope_min = 0.9;
    Real zero_floor = 1e-13;
    Real ball_radius = 1.0;  // radius of the bounded set in the assumption checks

    bool operator==(const ToleranceConfig&) const = default;
};

struct RunConfig {
    ProblemConfig problem;
    DiscConfig disc;
    std::vector<std::string> tasks;
    std::string output_dir = "paramop-out";
    std::uint64_t seed = 0;
    ToleranceConfig tolerances;

    bool operator==(const RunConfig&) const = default;
};

/// All task names run_sweep understands.
[[nodiscard]] const std::vector<std::string>& known_tasks();

/// Parse and validate a JSON config. Strict: unknown keys are errors with a
/// nearest-known-key suggestion; invalid ranges raise ConfigError naming the
/// field; an unknown problem/kernel/nonlinearity name raises NotFoundError
/// listing the candidates.
[[nodiscard]] RunConfig parse_config(const std::string& text);

/// Canonical JSON serialization; parse_config(serialize_config(cfg)) == cfg.
[[nodiscard]] std::string serialize_config(const RunConfig& cfg);

}  // namespace paramop
