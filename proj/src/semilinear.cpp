#include "paramop/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paramop/errors.hpp"
#include "paramop/nonlinear_analysis.hpp"

namespace paramop {

namespace {

Real sinhc(Real z) {
    // sinh(z)/z with the removable singularity filled by its Taylor series.
    if (std::abs(z) < 1e-4) {
        const Real z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

}  // namespace

Real m_bound(Real k, Real a) {
    if (!(k > 0.0) || !(a > 0.0)) {
        throw InvalidInputError("m_bound requires k > 0 and a > 0");
    }
    const Real x = k * a;
    if (x < 0.5) {
        // 1 - (1+x)e^{-x} cancels catastrophically for small x; sum the
        // alternating series of the integral instead:
        //   integral of s e^{-s} over [0, x] = sum_{n>=2} (-1)^n x^n (n-1)/n!
        // so m = a^2 sum_{n>=2} (-1)^n x^{n-2} (n-1)/n!.
        Real sum = 0.0;
        Real factorial = 2.0;  // n!
        Real power = 1.0;      // x^{n-2}
        Real sign = 1.0;
        for (int n = 2; n <= 40; ++n) {
            const Real term = sign * power * static_cast<Real>(n - 1) / factorial;
            sum += term;
            if (std::abs(term) < 1e-20 * std::abs(sum)) {
                break;
            }
            sign = -sign;
            power *= x;
            factorial *= static_cast<Real>(n + 1);
        }
        return a * a * sum;
    }
    return (1.0 - (1.0 + x) * std::exp(-x)) / (k * k);
}

Real yukawa_kappa(Real k, Real r, Real s) {
    if (!(k > 0.0)) {
        throw InvalidInputError("yukawa_kappa requires k > 0");
    }
    if (r < 0.0 || !(s > 0.0)) {
        throw InvalidInputError("yukawa_kappa requires r >= 0 and s > 0");
    }
    const Real lo = std::min(r, s);
    const Real hi = std::max(r, s);
    // e^{-k hi} sinh(k lo)/(k r s) rewritten via sinh(z)/z so r = 0 is exact.
    return std::exp(-k * hi) * sinhc(k * lo) / hi;
}

Vec RadialOperator::apply(const Vec& v) const {
    if (v.size() != action.rows()) {
        throw InvalidInputError("radial operator applied to a vector of wrong length");
    }
    return action * v;
}

Scalar RadialOperator::value_at(Real r, const Vec& v) const {
    if (v.size() != action.rows()) {
        throw InvalidInputError("radial operator applied to a vector of wrong length");
    }
    if (r < 0.0 || r > a * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "radius " << r << " outside the ball [0, " << a << "]";
        throw DomainError(msg.str());
    }
    Scalar sum(0.0, 0.0);
    for (int j = 0; j < radial_nodes.size(); ++j) {
        const Real s = radial_nodes.nodes(j);
        sum += radial_nodes.weights(j) * s * s * yukawa_kappa(k, r, s) * v(j);
    }
    return sum;
}

Scalar RadialOperator::center_value(const Vec& v) const { return value_at(0.0, v); }

RadialOperator yukawa_radial_operator(Real k, Real a, int n_nodes) {
    if (!(k > 0.0) || !(a > 0.0)) {
        throw InvalidInputError("yukawa_radial_operator requires k > 0 and a > 0");
    }
    if (n_nodes < 2) {
        throw InvalidInputError("yukawa_radial_operator requires at least 2 nodes");
    }
    RadialOperator op;
    op.k = k;
    op.a = a;
    op.radial_nodes = gauss_legendre(n_nodes, 0.0, a);

    const int n = n_nodes;
    Mat kernel(n, n);  // kappa(r_i, s_j), symmetric by construction
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            kernel(i, j) = yukawa_kappa(k, op.radial_nodes.nodes(i), op.radial_nodes.nodes(j));
        }
    }
    op.action = Mat(n, n);
    op.matrix = Mat(n, n);
    RealVec sqrt_d(n);
    for (int j = 0; j < n; ++j) {
        sqrt_d(j) = std::sqrt(op.radial_nodes.weights(j) * op.radial_nodes.nodes(j) *
                              op.radial_nodes.nodes(j));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Real dj = op.radial_nodes.weights(j) * op.radial_nodes.nodes(j) *
                            op.radial_nodes.nodes(j);
            op.action(i, j) = kernel(i, j) * dj;
            // Grouping the weight product first keeps the symmetrization
            // bit-exactly symmetric: sqrt_d(i) * sqrt_d(j) is a single
            // commutative multiply shared by the (i, j) and (j, i) entries.
            op.matrix(i, j) = kernel(i, j).real() * (sqrt_d(i) * sqrt_d(j));
        }
    }
    return op;
}

Real NonlinearityG::envelope(Real R) const {
    if (envelope_grid.empty()) {
        throw InvalidInputError("nonlinearity has no k-grid for its envelope");
    }
    Real worst = 0.0;
    for (const Scalar k : envelope_grid) {
        worst = std::max(worst, std::abs(eval(Scalar(R, 0.0), k)));
    }
    return worst;
}

std::vector<std::string> nonlinearity_names() { return {"linear", "cubic", "exp"}; }

NonlinearityG nonlinearity_registry(const std::string& name, std::vector<Scalar> envelope_grid) {
    NonlinearityG g;
    g.envelope_grid = std::move(envelope_grid);
    g.label = name;
    if (name == "linear") {
        g.eval = [](Scalar u, Scalar k) -> Scalar { return k * u; };
        g.du = [](Scalar, Scalar k) -> Scalar { return k; };
        g.dk = [](Scalar u, Scalar) -> Scalar { return u; };
        return g;
    }
    if (name == "cubic") {
        g.eval = [](Scalar u, Scalar k) -> Scalar { return k * u * u * u; };
        g.du = [](Scalar u, Scalar k) -> Scalar { return 3.0 * k * u * u; };
        g.dk = [](Scalar u, Scalar) -> Scalar { return u * u * u; };
        return g;
    }
    if (name == "exp") {
        g.eval = [](Scalar u, Scalar k) -> Scalar { return k * (std::exp(u) - 1.0); };
        g.du = [](Scalar u, Scalar k) -> Scalar { return k * std::exp(u); };
        g.dk = [](Scalar u, Scalar) -> Scalar { return std::exp(u) - 1.0; };
        return g;
    }
    std::ostringstream msg;
    msg << "unknown nonlinearity '" << name << "'; available:";
    for (const auto& known : nonlinearity_names()) {
        msg << " " << known;
    }
    throw NotFoundError(msg.str());
}

SelfmapReport selfmap_check(const NonlinearityG& g, Real m, std::span<const Real> R_grid,
                            Real f_inf) {
    if (R_grid.empty()) {
        throw InvalidInputError("selfmap_check requires a nonempty R grid");
    }
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        if (!(R_grid[i] > 0.0) || (i > 0 && !(R_grid[i] > R_grid[i - 1]))) {
            throw InvalidInputError("R grid must be positive and increasing");
        }
    }
    if (!(m >= 0.0)) {
        throw InvalidInputError("m must be nonnegative");
    }
    SelfmapReport report;
    report.m_inverse = (m > 0.0) ? 1.0 / m : std::numeric_limits<Real>::infinity();

    Real literal_inf = std::numeric_limits<Real>::infinity();
    for (const Real R : R_grid) {
        literal_inf = std::min(literal_inf, g.envelope(R) / R);
        const bool invariant = m * g.envelope(R) + f_inf <= R;
        if (invariant && !report.invariant_ball_radius.has_value()) {
            report.invariant_ball_radius = R;
        }
    }
    report.literal_inf = literal_inf;
    report.literal_holds = literal_inf <= report.m_inverse;
    report.ball_invariance_holds = report.invariant_ball_radius.has_value();

    // Uniqueness shadow: dg/du > 0 (real and positive) at every probe of the
    // (u, k) grid spanned by R_grid and the envelope k-grid.
    bool unique = true;
    for (const Real u : R_grid) {
        for (const Scalar k : g.envelope_grid) {
            const Scalar du = g.du(Scalar(u, 0.0), k);
            const bool positive =
                du.real() > 0.0 && std::abs(du.imag()) <= 1e-12 * (1.0 + std::abs(du));
            if (!positive) {
                unique = false;
                break;
            }
        }
        if (!unique) {
            break;
        }
    }
    report.uniqueness_flag = unique;
    return report;
}

NonlinearProblem assemble_semilinear(const NonlinearityG& g, const Mat& linv_action,
                                     const RhsFamily& f1_family) {
    if (linv_action.rows() != linv_action.cols()) {
        throw InvalidInputError("semilinear operator matrix must be square");
    }
    const int n = static_cast<int>(linv_action.rows());
    if (f1_family.dim != n) {
        throw InvalidInputError("f1 dimension does not match the operator");
    }
    auto geval = g.eval;
    auto gdu = g.du;
    auto gdk = g.dk;
    const Mat linv = linv_action;

    NonlinearFamily fam;
    fam.dim = n;
    fam.label = "semilinear(" + g.label + ")";
    fam.eval = [linv, geval, n](const Vec& u, Scalar k) -> Vec {
        Vec gu(n);
        for (int i = 0; i < n; ++i) {
            gu(i) = geval(u(i), k);
        }
        return u + linv * gu;
    };
    fam.frechet = [linv, gdu, n](const Vec& u, Scalar k) -> Mat {
        Vec d(n);
        for (int i = 0; i < n; ++i) {
            d(i) = gdu(u(i), k);
        }
        Mat jac = Mat::Identity(n, n);
        jac += linv * d.asDiagonal();
        return jac;
    };
    fam.partial_k = [linv, gdk, n](const Vec& u, Scalar k) -> Vec {
        Vec d(n);
        for (int i = 0; i < n; ++i) {
            d(i) = gdk(u(i), k);
        }
        return linv * d;
    };

    auto f1_eval = f1_family.eval;
    RhsFamily rhs;
    rhs.dim = n;
    rhs.label = "Linv(" + f1_family.label + ")";
    rhs.eval = [linv, f1_eval](Scalar k) -> Vec { return linv * f1_eval(k); };
    if (f1_family.deriv) {
        auto f1_deriv = f1_family.deriv;
        rhs.deriv = [linv, f1_deriv](Scalar k) -> Vec { return linv * f1_deriv(k); };
    }
    return NonlinearProblem{std::move(fam), std::move(rhs)};
}

namespace {

RhsFamily constant_f1(const Vec& f1_nodes) {
    RhsFamily rhs;
    rhs.dim = static_cast<int>(f1_nodes.size());
    const Vec f1 = f1_nodes;
    rhs.eval = [f1](Scalar) -> Vec { return f1; };
    rhs.deriv = [n = rhs.dim](Scalar) -> Vec { return Vec::Zero(n); };
    rhs.label = "f1";
    return rhs;
}

}  // namespace

SemilinearResult semilinear_solve(const NonlinearityG& g, const Mat& linv_action,
                                  const Vec& f1_nodes, Scalar k, const NewtonOptions& opts) {
    const NonlinearProblem problem = assemble_semilinear(g, linv_action, constant_f1(f1_nodes));
    const int n = static_cast<int>(linv_action.rows());
    const Vec zero = Vec::Zero(n);
    SemilinearResult result;
    try {
        NewtonResult newton = newton_solve(problem.family, problem.rhs, k, zero, opts);
        result.u = std::move(newton.u);
        result.newton_iterations = newton.iterations;
        return result;
    } catch (const NonConvergenceError&) {
        // fall through to the certified Picard fallback below
    } catch (const SingularJacobianError&) {
        // fall through as well
    }

    // Contraction certificate for u <- Linv f1 - Linv g(u, k): the Lipschitz
    // factor is at most ||Linv||_inf * sup |g'| over the relevant amplitude
    // range (real amplitudes up to twice the linear response).
    const Vec base = linv_action * f1_nodes;
    const Real m_est = infinity_norm(linv_action);
    const Real amplitude = 2.0 * base.cwiseAbs().maxCoeff() + 1.0;
    Real sup_gprime = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const Real u = amplitude * static_cast<Real>(i) / 50.0;
        sup_gprime = std::max(sup_gprime, std::abs(g.du(Scalar(u, 0.0), k)));
    }
    const Real q = m_est * sup_gprime;
    if (!(q < 1.0)) {
        throw NonConvergenceError(
            "Newton failed and the Picard contraction certificate does not hold (q = " +
                std::to_string(q) + ")",
            std::numeric_limits<Real>::quiet_NaN());
    }
    Vec u = base;
    const int picard_cap = 10000;
    for (int iter = 0; iter < picard_cap; ++iter) {
        Vec gu(n);
        for (int i = 0; i < n; ++i) {
            gu(i) = g.eval(u(i), k);
        }
        const Vec next = base - linv_action * gu;
        const Real step = (next - u).norm();
        u = next;
        if (step <= opts.tol * (1.0 - q) / std::max(q, 1e-16)) {
            result.u = u;
            result.used_picard = true;
            result.contraction_factor = q;
            return result;
        }
    }
    throw NonConvergenceError("Picard fallback exhausted its iteration budget",
                              std::numeric_limits<Real>::quiet_NaN());
}

SemilinearResult semilinear_solve(const NonlinearityG& g, const RadialOperator& linv,
                                  const Vec& f1_nodes, Scalar k, const NewtonOptions& opts) {
    return semilinear_solve(g, linv.action, f1_nodes, k, opts);
}

SemilinearContinuityResult semilinear_continuity(const NonlinearityG& g, const Mat& linv_action,
                                                 const RhsFamily& f1_family,
                                                 const ParameterDisc& disc,
                                                 const NewtonOptions& opts,
                                                 const VerdictOptions& vopts) {
    const NonlinearProblem problem = assemble_semilinear(g, linv_action, f1_family);
    SemilinearContinuityResult result;
    for (const Scalar k : disc.grid) {
        result.sweeps.push_back(
            nonlinear_continuity(problem.family, problem.rhs, k, disc.h_sequence, opts, vopts));
    }
    result.sensitivity = sensitivity_continuity(problem.family, problem.rhs, disc, opts, vopts);
    return result;
}

}  // namespace paramop
