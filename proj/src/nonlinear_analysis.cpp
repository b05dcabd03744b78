#include "paramop/nonlinear_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paramop/errors.hpp"

namespace paramop {

namespace {

void validate_options(const NewtonOptions& opts) {
    if (!(opts.tol > 0.0)) {
        throw InvalidInputError("Newton tolerance must be positive");
    }
    if (opts.max_iter < 1) {
        throw InvalidInputError("Newton max_iter must be >= 1");
    }
}

Mat fd_jacobian(const NonlinearFamily& nf, const Vec& u, Scalar k, Real base_step) {
    const int n = nf.dim;
    const Real h = base_step * (1.0 + u.norm());
    Mat jac(n, n);
    Vec probe = u;
    for (int j = 0; j < n; ++j) {
        const Scalar uj = probe(j);
        probe(j) = uj + Scalar(h, 0.0);
        const Vec plus = nf.eval(probe, k);
        probe(j) = uj - Scalar(h, 0.0);
        const Vec minus = nf.eval(probe, k);
        probe(j) = uj;
        jac.col(j) = (plus - minus) / (2.0 * h);
    }
    return jac;
}

std::string format_k(Scalar k) {
    std::ostringstream out;
    out << "(" << k.real() << (k.imag() < 0 ? "-" : "+") << std::abs(k.imag()) << "i)";
    return out.str();
}

}  // namespace

NewtonResult newton_solve(const NonlinearFamily& nf, const RhsFamily& rhs, Scalar k, const Vec& u0,
                          const NewtonOptions& opts) {
    validate_options(opts);
    if (u0.size() != nf.dim) {
        throw InvalidInputError("Newton start vector dimension does not match the family");
    }
    const Vec f = rhs.eval(k);
    if (f.size() != nf.dim) {
        throw InvalidInputError("rhs dimension does not match the family");
    }

    NewtonResult result;
    result.u = u0;
    result.used_fd_jacobian = !nf.has_frechet();

    Vec residual = nf.eval(result.u, k) - f;
    Real res_norm = residual.norm();
    result.residual_history.push_back(res_norm);

    while (res_norm > opts.tol) {
        if (result.iterations >= opts.max_iter) {
            throw NonConvergenceError("Newton iteration budget exhausted", res_norm,
                                      result.residual_history);
        }
        const Mat jac = nf.has_frechet() ? nf.frechet(result.u, k)
                                         : fd_jacobian(nf, result.u, k, opts.fd_jacobian_step);
        DenseLu lu(jac, k);
        if (lu.singular()) {
            throw SingularJacobianError("Jacobian singular at Newton iterate", k,
                                        result.iterations);
        }
        const Vec step = lu.solve(Vec(-residual));

        // Step-halving line search: accept the first step length that
        // strictly improves the residual norm.
        Real t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opts.max_halvings; ++halving) {
            const Vec candidate = result.u + t * step;
            const Vec cand_residual = nf.eval(candidate, k) - f;
            const Real cand_norm = cand_residual.norm();
            if (cand_norm < res_norm) {
                result.u = candidate;
                residual = cand_residual;
                res_norm = cand_norm;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        ++result.iterations;
        result.residual_history.push_back(res_norm);
        if (!accepted) {
            throw NonConvergenceError("Newton line search stalled", res_norm,
                                      result.residual_history);
        }
    }
    return result;
}

Vec nonlinear_sensitivity(const NonlinearFamily& nf, const RhsFamily& rhs, Scalar k, const Vec& u) {
    if (!nf.has_frechet()) {
        throw CapabilityError("nonlinear_sensitivity requires a Frechet derivative");
    }
    if (!nf.has_partial_k()) {
        throw CapabilityError("nonlinear_sensitivity requires the family's k-derivative");
    }
    if (!rhs.has_deriv()) {
        throw CapabilityError("nonlinear_sensitivity requires an rhs derivative");
    }
    if (u.size() != nf.dim) {
        throw InvalidInputError("solution vector dimension does not match the family");
    }
    const Mat jac = nf.frechet(u, k);
    const Vec adot = nf.partial_k(u, k);
    const Vec fdot = rhs.deriv(k);
    DenseLu lu(jac, k);
    if (lu.singular()) {
        throw SingularJacobianError("Frechet derivative singular at the solution", k, 0);
    }
    const Vec udot = lu.solve(Vec(fdot - adot));

    // The defining relation of the implicit derivative must close to 1e-9;
    // anything larger means the solve or the supplied derivatives are
    // inconsistent, and silently returning would poison downstream sweeps.
    const Real defect = (adot + jac * udot - fdot).norm();
    if (!(defect <= 1e-9)) {
        std::ostringstream msg;
        msg << "sensitivity defect " << defect << " exceeds 1e-9 at k=" << format_k(k);
        throw NumericalConsistencyError(msg.str());
    }
    return udot;
}

AssumptionJReport check_assumption_j(const NonlinearFamily& nf,
                                     std::span<const std::pair<Vec, Scalar>> probes) {
    if (!nf.has_frechet()) {
        throw CapabilityError("check_assumption_j requires a Frechet derivative");
    }
    AssumptionJReport report;
    for (const auto& [u, k] : probes) {
        InverseProbe probe;
        probe.k = k;
        probe.u = u;
        const Mat jac = nf.frechet(u, k);
        DenseLu lu(jac, k);
        if (lu.singular()) {
            probe.singular = true;
            probe.inverse_norm = std::numeric_limits<Real>::infinity();
            report.all_nonsingular = false;
        } else {
            probe.inverse_norm = operator_norm(lu.inverse());
            report.c3 = std::max(report.c3, probe.inverse_norm);
        }
        report.probes.push_back(std::move(probe));
    }
    return report;
}

ContinuitySweep nonlinear_continuity(const NonlinearFamily& nf, const RhsFamily& rhs, Scalar k,
                                     std::span<const Real> h_seq, const NewtonOptions& opts,
                                     const VerdictOptions& vopts) {
    ContinuitySweep sweep;
    sweep.k = k;
    const Vec zero = Vec::Zero(nf.dim);
    Vec base;
    try {
        base = newton_solve(nf, rhs, k, zero, opts).u;
    } catch (const Error& err) {
        sweep.failures.emplace_back(std::string("base point ") + format_k(k) + ": " + err.what());
        return sweep;
    }

    std::vector<Real> hs;
    std::vector<Real> omegas;
    Vec warm = base;
    for (const Real h : h_seq) {
        const Scalar kh = k + Scalar(h, 0.0);
        Vec shifted;
        bool solved = false;
        try {
            shifted = newton_solve(nf, rhs, kh, warm, opts).u;
            solved = true;
        } catch (const Error& warm_err) {
            try {
                shifted = newton_solve(nf, rhs, kh, zero, opts).u;
                solved = true;
                sweep.notes.emplace_back(std::string("step ") + format_k(kh) +
                                         ": warm start failed (" + warm_err.what() +
                                         "); cold start succeeded");
            } catch (const Error& cold_err) {
                sweep.failures.emplace_back(std::string("step ") + format_k(kh) + ": " +
                                            cold_err.what());
            }
        }
        if (!solved) {
            continue;
        }
        warm = shifted;
        const Real omega = (shifted - base).norm();
        const Real proxy = (nf.eval(shifted, k) - nf.eval(base, k)).norm();
        sweep.records.push_back(ContinuityRecord{k, h, omega, proxy});
        hs.push_back(h);
        omegas.push_back(omega);
    }
    const Verdict verdict = assess_decrease(hs, omegas, vopts);
    sweep.slope = verdict.slope;
    sweep.converged = verdict.converged && sweep.records.size() == h_seq.size();
    return sweep;
}

SensitivityContinuityResult sensitivity_continuity(const NonlinearFamily& nf, const RhsFamily& rhs,
                                                   const ParameterDisc& disc,
                                                   const NewtonOptions& opts,
                                                   const VerdictOptions& vopts) {
    SensitivityContinuityResult result;
    const Real fd_step = 1e-4;
    const Vec zero = Vec::Zero(nf.dim);

    // Warm-started sweep along the grid; each solve seeds the next.
    Vec warm = zero;
    for (const Scalar k : disc.grid) {
        const Vec u = newton_solve(nf, rhs, k, warm, opts).u;
        warm = u;

        SensitivityRecord record;
        record.k = k;
        record.u = u;
        record.udot = nonlinear_sensitivity(nf, rhs, k, u);

        const Vec plus = newton_solve(nf, rhs, k + Scalar(fd_step, 0.0), u, opts).u;
        const Vec minus = newton_solve(nf, rhs, k - Scalar(fd_step, 0.0), u, opts).u;
        record.fd_udot = (plus - minus) / (2.0 * fd_step);
        record.rel_gap = sensitivity_rel_gap(record.udot, record.fd_udot);
        result.records.push_back(std::move(record));
    }

    for (const SensitivityRecord& base : result.records) {
        ContinuitySweep sweep;
        sweep.k = base.k;
        std::vector<Real> hs;
        std::vector<Real> omegas;
        Vec warm_step = base.u;
        for (const Real h : disc.h_sequence) {
            const Scalar kh = base.k + Scalar(h, 0.0);
            try {
                const Vec u_h = newton_solve(nf, rhs, kh, warm_step, opts).u;
                warm_step = u_h;
                const Vec udot_h = nonlinear_sensitivity(nf, rhs, kh, u_h);
                const Real omega = (udot_h - base.udot).norm();
                sweep.records.push_back(
                    ContinuityRecord{base.k, h, omega, std::numeric_limits<Real>::quiet_NaN()});
                hs.push_back(h);
                omegas.push_back(omega);
            } catch (const Error& err) {
                sweep.failures.emplace_back(std::string("step ") + format_k(kh) + ": " +
                                            err.what());
            }
        }
        const Verdict verdict = assess_decrease(hs, omegas, vopts);
        sweep.slope = verdict.slope;
        sweep.converged = verdict.converged && sweep.records.size() == disc.h_sequence.size();
        result.udot_sweeps.push_back(std::move(sweep));
    }
    return result;
}

}  // namespace paramop
