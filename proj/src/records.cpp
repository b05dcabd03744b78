#include "paramop/records.hpp"

#include <algorithm>
#include <cmath>

#include "paramop/errors.hpp"

namespace paramop {

Verdict assess_decrease(std::span<const Real> hs, std::span<const Real> values,
                        const VerdictOptions& opts) {
    if (hs.size() != values.size()) {
        throw InvalidInputError("assess_decrease: h and value lists differ in length");
    }
    Verdict verdict;
    if (values.empty()) {
        return verdict;
    }
    const std::size_t n = values.size();
    const std::size_t tail = std::min<std::size_t>(static_cast<std::size_t>(opts.tail), n);
    const std::size_t start = n - tail;

    bool all_floored = true;
    for (std::size_t i = start; i < n; ++i) {
        if (!(values[i] <= opts.zero_floor)) {
            all_floored = false;
            break;
        }
    }
    if (all_floored) {
        verdict.converged = true;
        verdict.slope = std::numeric_limits<Real>::infinity();
        return verdict;
    }
    if (tail < 2) {
        return verdict;  // a single above-floor value carries no trend
    }

    // Trailing decrease: each step must drop strictly, except that landing at
    // or below the floor always counts as a drop.
    bool decreasing = true;
    for (std::size_t i = start; i + 1 < n; ++i) {
        const bool drops = values[i] > values[i + 1];
        const bool lands_on_floor = values[i + 1] <= opts.zero_floor;
        if (!drops && !lands_on_floor) {
            decreasing = false;
            break;
        }
    }

    // Tail log-log regression with sub-floor values clamped to the floor so
    // logs stay finite.
    std::vector<Real> tail_h(hs.begin() + static_cast<std::ptrdiff_t>(start), hs.end());
    std::vector<Real> tail_v(tail);
    for (std::size_t i = 0; i < tail; ++i) {
        tail_v[i] = std::max(values[start + i], opts.zero_floor);
    }
    verdict.slope = loglog_slope(tail_h, tail_v);
    verdict.converged = decreasing && std::isfinite(verdict.slope) && verdict.slope >= opts.slope_min;
    return verdict;
}

Real sensitivity_rel_gap(const Vec& udot, const Vec& fd_udot) {
    return (udot - fd_udot).norm() / (fd_udot.norm() + 1e-14);
}

}  // namespace paramop
