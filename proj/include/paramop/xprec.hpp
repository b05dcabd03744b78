#pragma once

#include <Eigen/Dense>
#include <complex>

#include "paramop/numerics.hpp"

namespace paramop::xprec {

/// Extended-precision dense kit (80-bit long double on x86-64). Used where a
/// residual must be resolved well below double roundoff: the resolvent
/// difference identity and the finite-difference oracles that pin it down.
using ScalarX = std::complex<long double>;
using MatX = Eigen::Matrix<ScalarX, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<ScalarX, Eigen::Dynamic, 1>;

[[nodiscard]] MatX widen(const Mat& m);
[[nodiscard]] Mat narrow(const MatX& m);

/// Partially pivoted LU solve in extended precision.
/// Throws SingularOperatorError on a zero pivot column.
[[nodiscard]] MatX lu_solve(const MatX& a, const MatX& b);

[[nodiscard]] MatX inverse(const MatX& a);

[[nodiscard]] Real operator_norm_approx(const MatX& m);  // Frobenius bound, for residual reporting

}  // namespace paramop::xprec
