#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paramop/disc.hpp"
#include "paramop/families.hpp"
#include "paramop/nonlinear_analysis.hpp"
#include "paramop/numerics.hpp"
#include "paramop/records.hpp"

namespace paramop {

/// The screened-potential envelope bound m(k, a) = (1 - (1+ka) e^{-ka}) / k^2,
/// the closed form of the integral of e^{-s} s over [0, ka] divided by k^2.
/// Small ka switches to the alternating series to dodge cancellation.
[[nodiscard]] Real m_bound(Real k, Real a);

/// Exact angular average of the screened-Coulomb kernel over the sphere:
///   kappa(r, s) = e^{-k max(r,s)} sinh(k min(r,s)) / (k r s),
/// with the stable limit kappa(0, s) = e^{-ks}/s. Requires s > 0, r >= 0.
[[nodiscard]] Real yukawa_kappa(Real k, Real r, Real s);

/// Radial collocation of the majorant-kernel integral operator
///   v(s) -> integral over the ball of e^{-k|x-y|}/(4 pi |x-y|) v(|y|) dy
/// on a Gauss rule over [0, a]. `action` is the node-to-node collocation
/// matrix M[i][j] = w_j s_j^2 kappa(r_i, s_j); `matrix` is its diagonal
/// symmetrization D^{1/2} K D^{1/2} (D = diag(w_j s_j^2)), which shares M's
/// spectrum and whose spectral norm therefore respects the m(k, a) envelope
/// that the plain nonsymmetric collocation matrix can overshoot.
struct RadialOperator {
    Real k = 1.0;
    Real a = 1.0;
    Quadrature radial_nodes;
    Mat matrix;  // symmetrized form; spectral norm <= m_bound(k, a) (1 + 1e-6)
    Mat action;  // collocation form applied to node values

    [[nodiscard]] Vec apply(const Vec& v) const;

    /// Operator applied to node values, evaluated at an arbitrary radius
    /// r in [0, a] (r = 0 allowed). Throws DomainError outside.
    [[nodiscard]] Scalar value_at(Real r, const Vec& v) const;

    /// value_at(0, v): for v = 1 this is the integral of s e^{-ks} over
    /// [0, a], i.e. m_bound(k, a) itself.
    [[nodiscard]] Scalar center_value(const Vec& v) const;
};

[[nodiscard]] RadialOperator yukawa_radial_operator(Real k, Real a, int n_nodes);

/// Scalar nonlinearity g(u, k) applied componentwise, with du = dg/du and
/// dk = dg/dk, plus the envelope R -> max over the stored k-grid of |g(R, k)|.
struct NonlinearityG {
    std::function<Scalar(Scalar, Scalar)> eval;
    std::function<Scalar(Scalar, Scalar)> du;
    std::function<Scalar(Scalar, Scalar)> dk;
    std::vector<Scalar> envelope_grid;
    std::string label;

    [[nodiscard]] Real envelope(Real R) const;
};

[[nodiscard]] std::vector<std::string> nonlinearity_names();

/// Built-ins: "linear" (k u), "cubic" (k u^3), "exp" (k (e^u - 1)).
[[nodiscard]] NonlinearityG nonlinearity_registry(const std::string& name,
                                                  std::vector<Scalar> envelope_grid);

/// Standing of the self-map and uniqueness conditions.
struct SelfmapReport {
    Real literal_inf = 0.0;     // min over R_grid of envelope(R)/R
    Real m_inverse = 0.0;       // 1/m
    bool literal_holds = false; // literal_inf <= 1/m
    std::optional<Real> invariant_ball_radius;  // smallest grid R with m g(R) + f_inf <= R
    bool ball_invariance_holds = false;
    bool uniqueness_flag = false;  // du > 0 over the (u, k) probe grid
};

/// (i) the literal condition inf_R envelope(R)/R <= 1/m; (ii) the explicit
/// ball-invariance test: exists R in R_grid with m*envelope(R) + f_inf <= R;
/// (iii) the uniqueness flag du > 0 sampled at u in R_grid, k in the
/// envelope grid. The two self-map tests are reported separately and are not
/// claimed to coincide.
[[nodiscard]] SelfmapReport selfmap_check(const NonlinearityG& g, Real m,
                                          std::span<const Real> R_grid, Real f_inf = 0.0);

/// Fixed-point form of the semilinear problem as a nonlinear family:
///   A(u, k) = u + Linv g(u, k),  f(k) = Linv f1(k),
/// with Frechet derivative I + Linv diag(du) and k-derivative Linv dk.
/// `f1_family` supplies f1(k) at the nodes.
[[nodiscard]] NonlinearProblem assemble_semilinear(const NonlinearityG& g, const Mat& linv_action,
                                                   const RhsFamily& f1_family);

struct SemilinearResult {
    Vec u;
    int newton_iterations = 0;
    bool used_picard = false;
    std::optional<Real> contraction_factor;  // certificate m * sup|g'| when Picard ran
};

/// Solve u + Linv g(u, k) = Linv f1 by Newton (via the nonlinear-analysis
/// solver). When Newton fails and the contraction certificate
/// m * sup|g'| < 1 holds, falls back to certified Picard iteration.
[[nodiscard]] SemilinearResult semilinear_solve(const NonlinearityG& g, const Mat& linv_action,
                                                const Vec& f1_nodes, Scalar k,
                                                const NewtonOptions& opts = {});

[[nodiscard]] SemilinearResult semilinear_solve(const NonlinearityG& g, const RadialOperator& linv,
                                                const Vec& f1_nodes, Scalar k,
                                                const NewtonOptions& opts = {});

struct SemilinearContinuityResult {
    std::vector<ContinuitySweep> sweeps;          // one per grid k
    SensitivityContinuityResult sensitivity;
};

/// Continuity and sensitivity sweeps of the assembled fixed-point family
/// over the disc, delegated to the nonlinear-analysis operations.
[[nodiscard]] SemilinearContinuityResult semilinear_continuity(const NonlinearityG& g,
                                                               const Mat& linv_action,
                                                               const RhsFamily& f1_family,
                                                               const ParameterDisc& disc,
                                                               const NewtonOptions& opts = {},
                                                               const VerdictOptions& vopts = {});

}  // namespace paramop
