#pragma once

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paramop/numerics.hpp"

namespace paramop {

/// Thresholds for the empirical "decreases to zero" verdict shared by the
/// continuity, Hilbert-Schmidt, and assumption-modulus sweeps.
struct VerdictOptions {
    Real slope_min = 0.9;   // minimum log-log regression slope over the tail
    int tail = 3;           // number of trailing records examined
    Real zero_floor = 1e-13;  // values at or below this count as "already zero"
};

struct Verdict {
    bool converged = false;
    Real slope = std::numeric_limits<Real>::quiet_NaN();
};

/// Decide whether `values(h)` tends to zero as h decreases. `hs` must be
/// strictly decreasing and positive, matching how sweeps are run. The verdict
/// requires the trailing values to decrease and the tail log-log slope to
/// clear slope_min; values at or below zero_floor count as converged drops
/// (an exactly-zero modulus is the strongest possible convergence).
[[nodiscard]] Verdict assess_decrease(std::span<const Real> hs, std::span<const Real> values,
                                      const VerdictOptions& opts = {});

/// One measurement omega(h) = ||u(k+h) - u(k)|| at a fixed k. `proxy` carries
/// the secondary modulus some sweeps report (NaN when not applicable).
struct ContinuityRecord {
    Scalar k;
    Real h = 0.0;
    Real omega = 0.0;
    Real proxy = std::numeric_limits<Real>::quiet_NaN();
};

/// All records for one k, sorted by decreasing h, plus the sweep verdict.
/// `failures` lists samples that produced no record (singular or unsolvable
/// steps); `notes` carries informational events (e.g. a cold-start fallback)
/// that do not affect the verdict.
struct ContinuitySweep {
    Scalar k;
    std::vector<ContinuityRecord> records;
    Real slope = std::numeric_limits<Real>::quiet_NaN();
    bool converged = false;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

/// u-dot at one grid point with its finite-difference cross-check.
struct SensitivityRecord {
    Scalar k;
    Vec u;
    Vec udot;
    Vec fd_udot;
    Real rel_gap = 0.0;
};

[[nodiscard]] Real sensitivity_rel_gap(const Vec& udot, const Vec& fd_udot);

}  // namespace paramop
