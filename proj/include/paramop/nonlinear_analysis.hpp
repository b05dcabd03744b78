#pragma once

#include <span>
#include <utility>
#include <vector>

#include "paramop/disc.hpp"
#include "paramop/families.hpp"
#include "paramop/numerics.hpp"
#include "paramop/records.hpp"

namespace paramop {

/// Damped-Newton controls. The damping is a step-halving line search on the
/// residual norm; a step is accepted once it strictly improves the residual.
struct NewtonOptions {
    Real tol = 1e-12;      // absolute tolerance on ||A(u,k) - f(k)||
    int max_iter = 50;
    int max_halvings = 30;
    Real fd_jacobian_step = 1e-6;  // scaled by (1 + ||u||) when the fallback runs
};

struct NewtonResult {
    Vec u;
    int iterations = 0;
    bool used_fd_jacobian = false;
    std::vector<Real> residual_history;  // residual norm before each step, then final
};

/// One probe row of the bounded-inverse check for the Frechet derivative.
struct InverseProbe {
    Scalar k;
    Vec u;
    Real inverse_norm = 0.0;  // ||[A'(u,k)]^{-1}||; +inf when singular
    bool singular = false;
};

struct AssumptionJReport {
    Real c3 = 0.0;  // max finite inverse norm over the probes
    bool all_nonsingular = true;
    std::vector<InverseProbe> probes;
};

/// Solve A(u,k) = f(k) by damped Newton from u0. Uses the family's Frechet
/// derivative when present, otherwise a flagged column-wise central
/// finite-difference Jacobian. Throws SingularJacobianError when a Jacobian
/// is singular at an iterate, NonConvergenceError (carrying the residual
/// history) when max_iter is exhausted.
[[nodiscard]] NewtonResult newton_solve(const NonlinearFamily& nf, const RhsFamily& rhs, Scalar k,
                                        const Vec& u0, const NewtonOptions& opts = {});

/// Implicit sensitivity at a solved point:
///   u-dot = [A'(u,k)]^{-1} (f-dot(k) - A-dot(u,k))
/// by one linear solve. After computing u-dot the defining relation
/// A-dot + A' u-dot = f-dot is re-evaluated and must hold to 1e-9; a larger
/// residual raises NumericalConsistencyError.
[[nodiscard]] Vec nonlinear_sensitivity(const NonlinearFamily& nf, const RhsFamily& rhs, Scalar k,
                                        const Vec& u);

/// c3 estimate: max over probes of ||[A'(u,k)]^{-1}||, with singular probes
/// flagged rather than thrown.
[[nodiscard]] AssumptionJReport check_assumption_j(const NonlinearFamily& nf,
                                                   std::span<const std::pair<Vec, Scalar>> probes);

/// omega(h) = ||u(k+h) - u(k)|| via warm-started Newton solves, with the
/// shared convergence verdict. Each record's proxy column carries
/// ||A(u(k+h), k) - A(u(k), k)||, the image-space modulus at the base k.
[[nodiscard]] ContinuitySweep nonlinear_continuity(const NonlinearFamily& nf, const RhsFamily& rhs,
                                                   Scalar k, std::span<const Real> h_seq,
                                                   const NewtonOptions& opts = {},
                                                   const VerdictOptions& vopts = {});

struct SensitivityContinuityResult {
    std::vector<SensitivityRecord> records;       // one per grid k, in grid order
    std::vector<ContinuitySweep> udot_sweeps;     // ||udot(k+h) - udot(k)|| tails per grid k
};

/// u-dot at every grid point of the disc, each cross-checked against the
/// central-difference oracle of the solved path (step 1e-4), plus the
/// ||u-dot(k+h) - u-dot(k)|| tails over the disc's h sequence.
[[nodiscard]] SensitivityContinuityResult sensitivity_continuity(const NonlinearFamily& nf,
                                                                 const RhsFamily& rhs,
                                                                 const ParameterDisc& disc,
                                                                 const NewtonOptions& opts = {},
                                                                 const VerdictOptions& vopts = {});

}  // namespace paramop
