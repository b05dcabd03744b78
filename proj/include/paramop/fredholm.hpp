#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paramop/numerics.hpp"
#include "paramop/records.hpp"

namespace paramop {

/// Kernel family b(x, y, k) on a 1-D interval, with an optional partial
/// derivative in k.
struct KernelFamily {
    std::function<Scalar(Real, Real, Scalar)> eval;
    std::function<Scalar(Real, Real, Scalar)> deriv_k;
    Real lo = 0.0;
    Real hi = 1.0;
    std::string label;

    [[nodiscard]] bool has_deriv() const { return static_cast<bool>(deriv_k); }
};

/// Scalar right-hand side f(x, k) evaluated pointwise at quadrature nodes.
struct ScalarRhs {
    std::function<Scalar(Real, Scalar)> eval;
    std::function<Scalar(Real, Scalar)> deriv_k;
    std::string label;

    [[nodiscard]] bool has_deriv() const { return static_cast<bool>(deriv_k); }
};

/// Discretized second-kind system (I - B(k)) u = f at the quadrature nodes,
/// with B[i][j] = w_j * b(x_i, x_j, k).
struct NystromSystem {
    Quadrature quad;
    Scalar k;
    Mat B;
    Mat system;  // I - B
};

[[nodiscard]] std::vector<std::string> kernel_names();

/// Built-in kernels on [0, 1]: "separable-xy" (k*x*y), "gaussian"
/// (k*exp(-(x-y)^2)), "exp-screened" (0.5*exp(-k|x-y|)). All carry deriv_k.
[[nodiscard]] KernelFamily kernel_registry(const std::string& name);

/// f(x, k) = x, the standard closed-form companion rhs.
[[nodiscard]] ScalarRhs linear_x_rhs();

[[nodiscard]] NystromSystem nystrom_build(const KernelFamily& kf, const Quadrature& q, Scalar k);

struct HsRow {
    Real h = 0.0;
    Real value = 0.0;  // quadrature approximation of the L2 kernel difference
};

struct HsTable {
    std::vector<HsRow> rows;
    Verdict verdict;
};

/// Quadrature approximation of (integral of |b(x,y,k+h) - b(x,y,k)|^2 dx dy)^{1/2}
/// per h, with the shared decreasing-to-zero verdict.
[[nodiscard]] HsTable hs_continuity(const KernelFamily& kf, const Quadrature& q, Scalar k,
                                    std::span<const Real> h_seq, const VerdictOptions& vopts = {});

/// Solve (I - B(k)) u = f(k) at the nodes. Throws CharacteristicValueError
/// when I - B(k) is singular to tolerance (1 is in the spectrum of B(k)).
[[nodiscard]] Vec fredholm_solve(const KernelFamily& kf, const ScalarRhs& rhs, const Quadrature& q,
                                 Scalar k);

/// Sign convention of the node sensitivity. Differentiating
/// (I - B(k)) u = f gives -B-dot u + (I - B) u-dot = f-dot, hence
///   u-dot = (I - B)^{-1} (f-dot + B-dot u);
/// `plus` is that derivation's sign and the shipped default. `minus` is kept
/// so the test suite can demonstrate that the opposite convention fails the
/// finite-difference oracle.
enum class SensitivitySign { plus = +1, minus = -1 };

[[nodiscard]] Vec fredholm_sensitivity(const KernelFamily& kf, const ScalarRhs& rhs,
                                       const Quadrature& q, Scalar k,
                                       SensitivitySign sign = SensitivitySign::plus);

/// Natural interpolation of a node solution to arbitrary x in the domain:
/// u(x) = f(x, k) + sum_j w_j b(x, x_j, k) u_j. At a node this reproduces
/// the node value (up to the solve's roundoff). Throws DomainError for x
/// outside [lo, hi].
[[nodiscard]] Scalar nystrom_interpolate(const NystromSystem& sys, const KernelFamily& kf,
                                         const ScalarRhs& rhs, const Vec& u_nodes, Real x);

}  // namespace paramop
