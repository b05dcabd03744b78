#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "paramop/errors.hpp"

namespace paramop {

using Real = double;
using Scalar = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

/// Relative pivot threshold below which a dense factorization is declared
/// singular. Scaled by the infinity norm of the matrix, it separates genuine
/// rank deficiency from conditioning noise.
inline constexpr Real kSingularPivotRelTol = 1e-14;

[[nodiscard]] bool all_finite(const Mat& m);
[[nodiscard]] bool all_finite(const Vec& v);

/// Spectral (2-)norm via singular value decomposition.
/// Throws InvalidInputError on non-finite entries.
[[nodiscard]] Real operator_norm(const Mat& m);

/// Hilbert-Schmidt (Frobenius) norm.
[[nodiscard]] Real frobenius_norm(const Mat& m);

[[nodiscard]] Real infinity_norm(const Mat& m);

/// Partially pivoted LU of a square matrix with an explicit singularity
/// verdict. The factorization is computed once; solves reuse it.
class DenseLu {
public:
    explicit DenseLu(const Mat& m, std::optional<Scalar> k_context = {});

    [[nodiscard]] bool singular() const { return singular_; }
    [[nodiscard]] Real min_pivot() const { return min_pivot_; }

    /// Solve m x = b. Throws SingularOperatorError (with the stored k
    /// context) if the matrix was singular to tolerance.
    [[nodiscard]] Vec solve(const Vec& b) const;
    [[nodiscard]] Mat solve(const Mat& b) const;
    [[nodiscard]] Mat inverse() const;

private:
    void require_nonsingular() const;

    Eigen::PartialPivLU<Mat> lu_;
    std::optional<Scalar> k_context_;
    Real min_pivot_ = 0.0;
    bool singular_ = false;
    Eigen::Index n_ = 0;
};

/// Solve m x = b with partial pivoting. Throws SingularOperatorError when a
/// pivot falls below kSingularPivotRelTol * ||m||_inf, InvalidInputError on
/// shape mismatch or non-finite entries.
[[nodiscard]] Vec solve_dense(const Mat& m, const Vec& b, std::optional<Scalar> k_context = {});

/// Dense inverse assembled column by column from the LU factors.
[[nodiscard]] Mat inverse_dense(const Mat& m, std::optional<Scalar> k_context = {});

/// Quadrature rule on an interval. Weights are positive and sum to the
/// interval length (for the built-in Gauss rules, to roundoff).
struct Quadrature {
    RealVec nodes;
    RealVec weights;
    Real lo = 0.0;
    Real hi = 1.0;

    [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on [lo, hi], exact for polynomials of degree
/// <= 2n-1. Nodes are computed by Newton iteration on the Legendre
/// recurrence in extended precision.
[[nodiscard]] Quadrature gauss_legendre(int n, Real lo, Real hi);

/// Second-order central difference (fn(t+h) - fn(t-h)) / (2h). Works for any
/// value type supporting subtraction and division by a real scalar; the
/// result is materialized into the callable's value type so expression
/// templates cannot outlive their operands.
template <class F>
[[nodiscard]] auto central_diff(F&& fn, Real t, Real h) {
    using V = std::decay_t<decltype(fn(t))>;
    V hi = fn(t + h);
    V lo = fn(t - h);
    return V((hi - lo) / (2.0 * h));
}

/// Least-squares slope of log(y) against log(x). Inputs must be positive and
/// of equal size >= 2.
[[nodiscard]] Real loglog_slope(std::span<const Real> x, std::span<const Real> y);

}  // namespace paramop
