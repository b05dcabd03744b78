#pragma once

#include <vector>

#include "paramop/numerics.hpp"

namespace paramop {

enum class GridKind { real_chord, polar };

/// Closed disc {k : |k - center| <= radius} with a sampling grid and the
/// step sequence used by continuity sweeps.
struct ParameterDisc {
    Scalar center{0.0, 0.0};
    Real radius = 1.0;
    std::vector<Scalar> grid;
    std::vector<Real> h_sequence;

    [[nodiscard]] bool contains(Scalar k) const { return std::abs(k - center) <= radius * (1.0 + 1e-12); }
};

/// The default step sequence {1e-1, 1e-2, ..., 1e-6}.
[[nodiscard]] std::vector<Real> default_h_sequence();

/// Build a disc with n_samples grid points. The default grid is the uniform
/// partition of the real chord [center - r, center + r]; the polar grid
/// places the samples equally spaced on the circle of radius r/2 (n = 1
/// gives just the center in either mode).
[[nodiscard]] ParameterDisc make_disc(Scalar center, Real radius, int n_samples,
                                      GridKind kind = GridKind::real_chord,
                                      std::vector<Real> h_sequence = default_h_sequence());

}  // namespace paramop
