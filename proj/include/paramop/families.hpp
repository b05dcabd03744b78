#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "paramop/numerics.hpp"

namespace paramop {

/// A family k -> A(k) of square matrices over the parameter disc, with an
/// optional directional derivative dA/dk along `direction` (a unit complex
/// number; the default differentiates along the real axis).
struct LinearFamily {
    int dim = 0;
    std::function<Mat(Scalar)> eval;
    std::function<Mat(Scalar)> deriv;  // null when the family carries no derivative
    Scalar direction{1.0, 0.0};
    std::string label;

    [[nodiscard]] bool has_deriv() const { return static_cast<bool>(deriv); }
};

/// Right-hand-side family k -> f(k), optional directional derivative.
struct RhsFamily {
    int dim = 0;
    std::function<Vec(Scalar)> eval;
    std::function<Vec(Scalar)> deriv;
    std::string label;

    [[nodiscard]] bool has_deriv() const { return static_cast<bool>(deriv); }
};

/// Nonlinear family (u, k) -> A(u, k) with optional Frechet derivative in u
/// and optional directional partial derivative in k.
struct NonlinearFamily {
    int dim = 0;
    std::function<Vec(const Vec&, Scalar)> eval;
    std::function<Mat(const Vec&, Scalar)> frechet;
    std::function<Vec(const Vec&, Scalar)> partial_k;
    Scalar direction{1.0, 0.0};
    std::string label;

    [[nodiscard]] bool has_frechet() const { return static_cast<bool>(frechet); }
    [[nodiscard]] bool has_partial_k() const { return static_cast<bool>(partial_k); }
};

struct LinearProblem {
    LinearFamily family;
    RhsFamily rhs;
};

struct NonlinearProblem {
    NonlinearFamily family;
    RhsFamily rhs;
};

/// View a linear family as a nonlinear one: A(u,k) = A(k)u, A'(u,k) = A(k),
/// dA/dk(u,k) = (dA/dk)(k) u.
[[nodiscard]] NonlinearFamily wrap_linear(const LinearFamily& fam);
[[nodiscard]] NonlinearProblem wrap_linear(const LinearProblem& problem);

/// Parameters accepted by the built-in family registry. Unused fields are
/// ignored by constructors that do not need them.
struct RegistryOptions {
    int dim = 2;
    std::uint64_t seed = 0;
    Scalar center{0.0, 0.0};     // jump point of the "remark12" family
    Scalar k_star{0.0, 0.0};     // singular point of "diag-near-singular"
    std::optional<Vec> jump_rhs; // constant rhs g of "remark12"
};

/// A = I with a smooth seeded affine rhs.
[[nodiscard]] LinearProblem build_identity(int dim, std::uint64_t seed);

/// A(k) = A0 + k A1 + k^2 A2 drawn from a deterministic seeded generator,
/// well conditioned on |k| <= 1; rhs f(k) = f0 + k f1 from the same stream.
[[nodiscard]] LinearProblem build_affine_matrix(int dim, std::uint64_t seed);

/// A(k) = diag(1, ..., 1, k - k_star); singular exactly at k_star.
[[nodiscard]] LinearProblem build_diag_near_singular(int dim, Scalar k_star);

/// A(center) = I and A(k) = 2I for every k != center, with constant rhs g.
/// The solution jumps by ||g||/2 at the center no matter how small the step.
[[nodiscard]] LinearProblem build_remark12(const Vec& g, Scalar center = Scalar(0.0, 0.0));

/// Componentwise A(u,k) = u + k u^3 with rhs f = 2 (constant), the standard
/// smooth nonlinear test family.
[[nodiscard]] NonlinearProblem build_cubic_pointwise(int dim);

[[nodiscard]] std::vector<std::string> registry_names();

/// Build a named family. Throws NotFoundError (listing the known names) for
/// an unknown name, InvalidInputError for incomplete parameters.
[[nodiscard]] std::variant<LinearProblem, NonlinearProblem> registry_build(
    const std::string& name, const RegistryOptions& opts);

/// Max relative gap between the Frechet derivative and a central difference
/// of the family along each direction:
///   max_d ||[A(u+hd,k) - A(u-hd,k)]/(2h) - A'(u,k) d|| / (||A'(u,k) d|| + 1e-14).
[[nodiscard]] Real frechet_check(const NonlinearFamily& nf, const Vec& u, Scalar k,
                                 std::span<const Vec> directions, Real h);

/// Deterministic uniform(-1, 1) stream. The generator (std::mt19937_64) has
/// standard-mandated output; the bit-to-double mapping is fixed here rather
/// than delegated to uniform_real_distribution, whose algorithm is
/// implementation-defined. Seeded families are therefore identical across
/// platforms and standard libraries.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : gen_(seed) {}
    [[nodiscard]] Real next();
    [[nodiscard]] Scalar next_complex();
    [[nodiscard]] Mat next_matrix(int rows, int cols);
    [[nodiscard]] Vec next_vector(int dim);

private:
    std::mt19937_64 gen_;
};

}  // namespace paramop
