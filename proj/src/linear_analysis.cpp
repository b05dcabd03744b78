#include "paramop/linear_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paramop/errors.hpp"
#include "paramop/xprec.hpp"

namespace paramop {

namespace {

Mat eval_checked(const LinearFamily& fam, Scalar k) {
    Mat a = fam.eval(k);
    if (a.rows() != fam.dim || a.cols() != fam.dim) {
        throw InvalidInputError("family evaluation returned a matrix of wrong shape");
    }
    return a;
}

std::string format_k(Scalar k) {
    std::ostringstream out;
    out << "(" << k.real() << (k.imag() < 0 ? "-" : "+") << std::abs(k.imag()) << "i)";
    return out.str();
}

}  // namespace

Vec solve_at(const LinearFamily& fam, const RhsFamily& rhs, Scalar k) {
    const Mat a = eval_checked(fam, k);
    const Vec f = rhs.eval(k);
    if (f.size() != fam.dim) {
        throw InvalidInputError("rhs dimension does not match the family");
    }
    return solve_dense(a, f, k);
}

InverseDifferenceResult inverse_difference_identity(const LinearFamily& fam, Scalar k, Real h) {
    const Scalar kh = k + Scalar(h, 0.0);
    const Mat a0 = eval_checked(fam, k);
    const Mat a1 = eval_checked(fam, kh);

    // Double-precision factorizations supply the singularity verdicts (and
    // the k-tagged errors); the identity itself is then evaluated in extended
    // precision so its residual sits far below the double roundoff of either
    // side.
    DenseLu lu0(a0, k);
    DenseLu lu1(a1, kh);
    if (lu0.singular()) {
        throw SingularOperatorError("operator singular at base point", k);
    }
    if (lu1.singular()) {
        throw SingularOperatorError("operator singular at stepped point", kh);
    }

    const xprec::MatX inv0 = xprec::inverse(xprec::widen(a0));
    const xprec::MatX inv1 = xprec::inverse(xprec::widen(a1));
    const xprec::MatX delta = xprec::widen(a1) - xprec::widen(a0);

    const xprec::MatX lhs = inv1 - inv0;               // A^{-1}(k+h) - A^{-1}(k)
    const xprec::MatX rhs = inv1 * delta * inv0;       // A^{-1}(k+h) dA A^{-1}(k)

    InverseDifferenceResult result;
    result.lhs_norm = operator_norm(xprec::narrow(lhs));
    result.rhs_norm = operator_norm(xprec::narrow(rhs));
    result.residual = operator_norm(xprec::narrow(lhs + rhs));
    return result;
}

Mat inverse_derivative(const LinearFamily& fam, Scalar k) {
    if (!fam.has_deriv()) {
        throw CapabilityError("inverse_derivative requires a family derivative");
    }
    const Mat a = eval_checked(fam, k);
    const Mat adot = fam.deriv(k);
    DenseLu lu(a, k);
    const Mat inv = lu.inverse();
    return -(inv * adot * inv);
}

Vec linear_sensitivity(const LinearFamily& fam, const RhsFamily& rhs, Scalar k) {
    if (!fam.has_deriv()) {
        throw CapabilityError("linear_sensitivity requires a family derivative");
    }
    if (!rhs.has_deriv()) {
        throw CapabilityError("linear_sensitivity requires an rhs derivative");
    }
    const Mat a = eval_checked(fam, k);
    const Mat adot = fam.deriv(k);
    const Vec f = rhs.eval(k);
    const Vec fdot = rhs.deriv(k);
    DenseLu lu(a, k);
    const Vec u = lu.solve(f);
    // -A^{-1} Adot A^{-1} f + A^{-1} fdot, sharing the single factorization.
    return lu.solve(Vec(fdot - adot * u));
}

ContinuitySweep continuity_modulus(const LinearFamily& fam, const RhsFamily& rhs, Scalar k,
                                   std::span<const Real> h_seq, const VerdictOptions& vopts) {
    ContinuitySweep sweep;
    sweep.k = k;
    Vec base;
    try {
        base = solve_at(fam, rhs, k);
    } catch (const SingularOperatorError& err) {
        sweep.failures.emplace_back(std::string("base point ") + format_k(k) + ": " + err.what());
        return sweep;
    }
    std::vector<Real> hs;
    std::vector<Real> omegas;
    for (const Real h : h_seq) {
        const Scalar kh = k + Scalar(h, 0.0);
        try {
            const Vec shifted = solve_at(fam, rhs, kh);
            const Real omega = (shifted - base).norm();
            sweep.records.push_back(ContinuityRecord{k, h, omega,
                                                     std::numeric_limits<Real>::quiet_NaN()});
            hs.push_back(h);
            omegas.push_back(omega);
        } catch (const SingularOperatorError& err) {
            sweep.failures.emplace_back(std::string("step ") + format_k(kh) + ": " + err.what());
        }
    }
    const Verdict verdict = assess_decrease(hs, omegas, vopts);
    sweep.slope = verdict.slope;
    sweep.converged = verdict.converged && sweep.records.size() == h_seq.size();
    return sweep;
}

AssumptionReport check_assumptions_A1(const LinearFamily& fam, const RhsFamily& rhs,
                                      const ParameterDisc& disc, Real ball_radius,
                                      const VerdictOptions& vopts) {
    if (disc.grid.empty()) {
        throw InvalidInputError("check_assumptions_A1 requires a nonempty grid");
    }
    if (!(ball_radius > 0.0)) {
        throw InvalidInputError("ball_radius must be positive");
    }
    AssumptionReport report;
    report.ball_radius = ball_radius;
    for (const Scalar k : disc.grid) {
        const Mat a = eval_checked(fam, k);
        const Vec f = rhs.eval(k);
        report.c0 = std::max(report.c0, f.norm());
        report.c2 = std::max(report.c2, operator_norm(a));
        DenseLu lu(a, k);
        if (lu.singular()) {
            report.solvable_everywhere = false;
            report.failures.emplace_back(k, "operator singular to tolerance");
            continue;
        }
        report.c1 = std::max(report.c1, operator_norm(lu.inverse()));
    }
    std::vector<Real> hs;
    std::vector<Real> sups;
    for (const Real h : disc.h_sequence) {
        Real sup = 0.0;
        for (const Scalar k : disc.grid) {
            const Mat diff = eval_checked(fam, k + Scalar(h, 0.0)) - eval_checked(fam, k);
            sup = std::max(sup, operator_norm(diff) * ball_radius);
        }
        report.modulus_c.emplace_back(h, sup);
        hs.push_back(h);
        sups.push_back(sup);
    }
    report.modulus_verdict = assess_decrease(hs, sups, vopts);
    return report;
}

BlowupProbe blowup_probe(const LinearFamily& fam, std::span<const Scalar> k_seq,
                         std::optional<Scalar> pole) {
    BlowupProbe probe;
    for (const Scalar k : k_seq) {
        BlowupSample sample;
        sample.k = k;
        const Mat a = eval_checked(fam, k);
        DenseLu lu_a(a, k);
        if (lu_a.singular()) {
            sample.singular = true;
            sample.growth = std::numeric_limits<Real>::infinity();
            sample.worst_rhs = Vec::Zero(fam.dim);
            probe.samples.push_back(std::move(sample));
            continue;
        }
        DenseLu lu_ah(a.adjoint().eval(), k);
        // Inverse power iteration on A A^H: v <- A^{-H} (A^{-1} v) converges
        // to the left singular vector of the smallest singular value, which
        // is the unit rhs maximizing ||A^{-1} f||. Deterministic start with a
        // small index-dependent tilt so no built-in starts orthogonal to the
        // target direction.
        Vec v(fam.dim);
        for (int i = 0; i < fam.dim; ++i) {
            v(i) = Scalar(1.0 + 1e-3 * static_cast<Real>(i), 0.0);
        }
        v.normalize();
        for (int iter = 0; iter < 200; ++iter) {
            Vec w = lu_ah.solve(Vec(lu_a.solve(v)));
            w.normalize();
            const Real align = std::abs(w.dot(v));
            v = std::move(w);
            if (std::abs(1.0 - align) < 1e-15) {
                break;
            }
        }
        sample.worst_rhs = v;
        sample.growth = lu_a.solve(v).norm();
        probe.samples.push_back(std::move(sample));
    }
    if (pole.has_value()) {
        std::vector<Real> dists;
        std::vector<Real> growths;
        for (const BlowupSample& sample : probe.samples) {
            if (sample.singular || !std::isfinite(sample.growth)) {
                continue;
            }
            const Real dist = std::abs(sample.k - *pole);
            if (dist > 0.0 && sample.growth > 0.0) {
                dists.push_back(dist);
                growths.push_back(sample.growth);
            }
        }
        if (dists.size() >= 2) {
            probe.fitted_p = -loglog_slope(dists, growths);
        }
    }
    return probe;
}

JumpResult remark12_counterexample(const Vec& g, std::span<const Real> h_values) {
    if (g.size() == 0 || g.norm() == 0.0) {
        throw InvalidInputError("counterexample rhs g must be nonzero");
    }
    std::vector<Real> hs(h_values.begin(), h_values.end());
    if (hs.empty()) {
        hs = default_h_sequence();
    }
    const LinearProblem problem = build_remark12(g);
    const Scalar center(0.0, 0.0);
    const Vec base = solve_at(problem.family, problem.rhs, center);

    JumpResult result;
    result.jump = g.norm() / 2.0;
    for (const Real h : hs) {
        if (h == 0.0) {
            throw InvalidInputError("jump steps must be nonzero");
        }
        const Vec shifted = solve_at(problem.family, problem.rhs, center + Scalar(h, 0.0));
        const Real jump = (shifted - base).norm();
        if (jump != result.jump) {
            std::ostringstream msg;
            msg << "counterexample jump " << jump << " at h=" << h
                << " differs from ||g||/2 = " << result.jump;
            throw NumericalConsistencyError(msg.str());
        }
        result.h_values.push_back(h);
        result.jumps.push_back(jump);
    }
    return result;
}

}  // namespace paramop
