#include "paramop/fredholm.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "paramop/errors.hpp"

namespace paramop {

namespace {

Scalar kernel_at(const KernelFamily& kf, Real x, Real y, Scalar k) {
    const Scalar value = kf.eval(x, y, k);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        std::ostringstream msg;
        msg << "kernel evaluation not finite at x=" << x << ", y=" << y << ", k=(" << k.real()
            << "," << k.imag() << ")";
        throw InvalidInputError(msg.str());
    }
    return value;
}

void require_rule_on_domain(const KernelFamily& kf, const Quadrature& q) {
    if (q.size() < 1) {
        throw InvalidInputError("quadrature rule is empty");
    }
    const Real pad = 1e-12 * (std::abs(kf.hi - kf.lo) + 1.0);
    if (q.lo < kf.lo - pad || q.hi > kf.hi + pad) {
        throw InvalidInputError("quadrature rule does not live on the kernel domain");
    }
}

}  // namespace

std::vector<std::string> kernel_names() {
    return {"separable-xy", "gaussian", "exp-screened"};
}

KernelFamily kernel_registry(const std::string& name) {
    KernelFamily kf;
    kf.lo = 0.0;
    kf.hi = 1.0;
    kf.label = name;
    if (name == "separable-xy") {
        kf.eval = [](Real x, Real y, Scalar k) -> Scalar { return k * x * y; };
        kf.deriv_k = [](Real x, Real y, Scalar) -> Scalar { return Scalar(x * y, 0.0); };
        return kf;
    }
    if (name == "gaussian") {
        kf.eval = [](Real x, Real y, Scalar k) -> Scalar {
            return k * std::exp(-(x - y) * (x - y));
        };
        kf.deriv_k = [](Real x, Real y, Scalar) -> Scalar {
            return Scalar(std::exp(-(x - y) * (x - y)), 0.0);
        };
        return kf;
    }
    if (name == "exp-screened") {
        kf.eval = [](Real x, Real y, Scalar k) -> Scalar {
            return 0.5 * std::exp(-k * std::abs(x - y));
        };
        kf.deriv_k = [](Real x, Real y, Scalar k) -> Scalar {
            const Real d = std::abs(x - y);
            return -0.5 * d * std::exp(-k * d);
        };
        return kf;
    }
    std::ostringstream msg;
    msg << "unknown kernel '" << name << "'; available:";
    for (const auto& known : kernel_names()) {
        msg << " " << known;
    }
    throw NotFoundError(msg.str());
}

ScalarRhs linear_x_rhs() {
    ScalarRhs rhs;
    rhs.eval = [](Real x, Scalar) -> Scalar { return Scalar(x, 0.0); };
    rhs.deriv_k = [](Real, Scalar) -> Scalar { return Scalar(0.0, 0.0); };
    rhs.label = "linear-x";
    return rhs;
}

NystromSystem nystrom_build(const KernelFamily& kf, const Quadrature& q, Scalar k) {
    require_rule_on_domain(kf, q);
    const int n = q.size();
    NystromSystem sys;
    sys.quad = q;
    sys.k = k;
    sys.B = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sys.B(i, j) = q.weights(j) * kernel_at(kf, q.nodes(i), q.nodes(j), k);
        }
    }
    sys.system = Mat::Identity(n, n) - sys.B;
    return sys;
}

HsTable hs_continuity(const KernelFamily& kf, const Quadrature& q, Scalar k,
                      std::span<const Real> h_seq, const VerdictOptions& vopts) {
    require_rule_on_domain(kf, q);
    const int n = q.size();
    HsTable table;
    std::vector<Real> hs;
    std::vector<Real> values;
    for (const Real h : h_seq) {
        const Scalar kh = k + Scalar(h, 0.0);
        Real sum = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Scalar diff = kernel_at(kf, q.nodes(i), q.nodes(j), kh) -
                                    kernel_at(kf, q.nodes(i), q.nodes(j), k);
                sum += q.weights(i) * q.weights(j) * std::norm(diff);
            }
        }
        const Real value = std::sqrt(sum);
        table.rows.push_back(HsRow{h, value});
        hs.push_back(h);
        values.push_back(value);
    }
    table.verdict = assess_decrease(hs, values, vopts);
    return table;
}

Vec fredholm_solve(const KernelFamily& kf, const ScalarRhs& rhs, const Quadrature& q, Scalar k) {
    const NystromSystem sys = nystrom_build(kf, q, k);
    const int n = q.size();
    Vec f(n);
    for (int i = 0; i < n; ++i) {
        f(i) = rhs.eval(q.nodes(i), k);
    }
    DenseLu lu(sys.system, k);
    if (lu.singular()) {
        std::ostringstream msg;
        msg << "characteristic value: I - B(k) singular at k=(" << k.real() << "," << k.imag()
            << ")";
        throw CharacteristicValueError(msg.str(), k);
    }
    return lu.solve(f);
}

Vec fredholm_sensitivity(const KernelFamily& kf, const ScalarRhs& rhs, const Quadrature& q,
                         Scalar k, SensitivitySign sign) {
    if (!kf.has_deriv()) {
        throw CapabilityError("fredholm_sensitivity requires the kernel's k-derivative");
    }
    if (!rhs.has_deriv()) {
        throw CapabilityError("fredholm_sensitivity requires the rhs k-derivative");
    }
    const NystromSystem sys = nystrom_build(kf, q, k);
    const int n = q.size();
    Vec f(n);
    Vec fdot(n);
    for (int i = 0; i < n; ++i) {
        f(i) = rhs.eval(q.nodes(i), k);
        fdot(i) = rhs.deriv_k(q.nodes(i), k);
    }
    Mat bdot(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bdot(i, j) = sys.quad.weights(j) * kf.deriv_k(sys.quad.nodes(i), sys.quad.nodes(j), k);
        }
    }
    DenseLu lu(sys.system, k);
    if (lu.singular()) {
        std::ostringstream msg;
        msg << "characteristic value: I - B(k) singular at k=(" << k.real() << "," << k.imag()
            << ")";
        throw CharacteristicValueError(msg.str(), k);
    }
    const Vec u = lu.solve(f);
    const Real s = (sign == SensitivitySign::plus) ? 1.0 : -1.0;
    return lu.solve(Vec(fdot + s * (bdot * u)));
}

Scalar nystrom_interpolate(const NystromSystem& sys, const KernelFamily& kf, const ScalarRhs& rhs,
                           const Vec& u_nodes, Real x) {
    if (u_nodes.size() != sys.quad.nodes.size()) {
        throw InvalidInputError("node solution length does not match the quadrature rule");
    }
    const Real pad = 1e-12 * (std::abs(kf.hi - kf.lo) + 1.0);
    if (x < kf.lo - pad || x > kf.hi + pad) {
        std::ostringstream msg;
        msg << "interpolation point x=" << x << " outside the kernel domain [" << kf.lo << ", "
            << kf.hi << "]";
        throw DomainError(msg.str());
    }
    Scalar value = rhs.eval(x, sys.k);
    for (int j = 0; j < sys.quad.size(); ++j) {
        value += sys.quad.weights(j) * kernel_at(kf, x, sys.quad.nodes(j), sys.k) * u_nodes(j);
    }
    return value;
}

}  // namespace paramop
