#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paramop/disc.hpp"
#include "paramop/families.hpp"
#include "paramop/numerics.hpp"
#include "paramop/records.hpp"

namespace paramop {

/// Residual of the exact algebraic identity
///   A^{-1}(k+h) - A^{-1}(k) = -A^{-1}(k+h) [A(k+h) - A(k)] A^{-1}(k),
/// together with both sides' spectral norms for reporting. The identity holds
/// for the assembled matrices exactly, so the residual is roundoff-level; the
/// inverses are computed in extended precision to keep it visibly so.
struct InverseDifferenceResult {
    Real residual = 0.0;
    Real lhs_norm = 0.0;  // ||A^{-1}(k+h) - A^{-1}(k)||
    Real rhs_norm = 0.0;  // ||A^{-1}(k+h) [A(k+h) - A(k)] A^{-1}(k)||
};

/// Empirical standing of the linear assumption set on a disc: bounded rhs
/// (c0), bounded inverse (c1), the continuity modulus of the family per step
/// h, plus the sup of ||A(k)|| (c2) as a diagnostic.
struct AssumptionReport {
    Real c0 = 0.0;
    Real c1 = 0.0;
    Real c2 = 0.0;
    Real ball_radius = 1.0;
    std::vector<std::pair<Real, Real>> modulus_c;  // (h, sup_k ||A(k+h) - A(k)|| * ball_radius)
    Verdict modulus_verdict;
    bool solvable_everywhere = true;
    std::vector<std::pair<Scalar, std::string>> failures;
};

struct BlowupSample {
    Scalar k;
    Vec worst_rhs;       // unit rhs maximizing ||A^{-1}(k) f||
    Real growth = 0.0;   // ||A^{-1}(k) worst_rhs||; +inf when A(k) is singular
    bool singular = false;
};

struct BlowupProbe {
    std::vector<BlowupSample> samples;
    std::optional<Real> fitted_p;  // exponent in growth ~ C * |k - pole|^{-p}
};

/// The jump ||u(k0+h) - u(k0)|| of the discontinuous built-in counterexample,
/// per step h. The values are h-independent and equal ||g||/2 exactly.
struct JumpResult {
    std::vector<Real> h_values;
    std::vector<Real> jumps;
    Real jump = 0.0;  // the common value ||g||/2
};

/// Solve A(k) u = f(k). Throws SingularOperatorError tagged with k when A(k)
/// is singular to tolerance.
[[nodiscard]] Vec solve_at(const LinearFamily& fam, const RhsFamily& rhs, Scalar k);

[[nodiscard]] InverseDifferenceResult inverse_difference_identity(const LinearFamily& fam,
                                                                  Scalar k, Real h);

/// d/dk A^{-1}(k) = -A^{-1}(k) (dA/dk)(k) A^{-1}(k).
/// Throws CapabilityError when the family has no derivative.
[[nodiscard]] Mat inverse_derivative(const LinearFamily& fam, Scalar k);

/// u-dot(k) = [d/dk A^{-1}](k) f(k) + A^{-1}(k) f-dot(k), evaluated via two
/// solves against one factorization.
[[nodiscard]] Vec linear_sensitivity(const LinearFamily& fam, const RhsFamily& rhs, Scalar k);

/// omega(h) = ||u(k+h) - u(k)|| for each h, with the convergence verdict.
/// Singular samples become failure notes rather than exceptions.
[[nodiscard]] ContinuitySweep continuity_modulus(const LinearFamily& fam, const RhsFamily& rhs,
                                                 Scalar k, std::span<const Real> h_seq,
                                                 const VerdictOptions& vopts = {});

/// Grid-sampled standing of the assumption set: solvability everywhere,
/// c0 = sup ||f||, c1 = sup ||A^{-1}||, c2 = sup ||A||, and the family
/// modulus sup_k ||A(k+h) - A(k)|| * ball_radius per h (exact for linear
/// maps: the sup of ||Mv|| over ||v|| <= R is R ||M||).
[[nodiscard]] AssumptionReport check_assumptions_A1(const LinearFamily& fam, const RhsFamily& rhs,
                                                    const ParameterDisc& disc,
                                                    Real ball_radius = 1.0,
                                                    const VerdictOptions& vopts = {});

/// For each k, the unit rhs maximizing ||A^{-1}(k) f|| (smallest singular
/// direction by inverse power iteration with a deterministic start) and the
/// attained growth. When a pole location is supplied, fits the divergence
/// exponent p of growth ~ C |k - pole|^{-p} over the nonsingular samples.
[[nodiscard]] BlowupProbe blowup_probe(const LinearFamily& fam, std::span<const Scalar> k_seq,
                                       std::optional<Scalar> pole = std::nullopt);

/// Build the discontinuous counterexample family for rhs g and measure the
/// solution jump at the center for each h (default: the standard h sequence).
/// Verifies internally that every jump equals ||g||/2 exactly.
[[nodiscard]] JumpResult remark12_counterexample(const Vec& g, std::span<const Real> h_values = {});

}  // namespace paramop
