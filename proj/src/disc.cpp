#include "paramop/disc.hpp"

#include <cmath>
#include <numbers>

namespace paramop {

std::vector<Real> default_h_sequence() {
    return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

ParameterDisc make_disc(Scalar center, Real radius, int n_samples, GridKind kind,
                        std::vector<Real> h_sequence) {
    if (!(radius > 0.0)) {
        throw InvalidInputError("make_disc: radius must be positive");
    }
    if (n_samples < 1) {
        throw InvalidInputError("make_disc: need at least one sample");
    }
    if (h_sequence.empty()) {
        throw InvalidInputError("make_disc: empty h sequence");
    }
    for (std::size_t i = 0; i < h_sequence.size(); ++i) {
        if (!(h_sequence[i] > 0.0)) {
            throw InvalidInputError("make_disc: h sequence entries must be positive");
        }
        if (i > 0 && !(h_sequence[i] < h_sequence[i - 1])) {
            throw InvalidInputError("make_disc: h sequence must be strictly decreasing");
        }
    }
    ParameterDisc disc;
    disc.center = center;
    disc.radius = radius;
    disc.h_sequence = std::move(h_sequence);
    disc.grid.reserve(static_cast<std::size_t>(n_samples));
    if (n_samples == 1) {
        disc.grid.push_back(center);
    } else if (kind == GridKind::real_chord) {
        for (int i = 0; i < n_samples; ++i) {
            const Real t = -1.0 + 2.0 * i / (n_samples - 1.0);
            disc.grid.push_back(center + Scalar(radius * t, 0.0));
        }
    } else {
        for (int i = 0; i < n_samples; ++i) {
            const Real theta = 2.0 * std::numbers::pi * i / n_samples;
            disc.grid.push_back(center + 0.5 * radius * Scalar(std::cos(theta), std::sin(theta)));
        }
    }
    return disc;
}

}  // namespace paramop
