#include "paramop/numerics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace paramop {

bool all_finite(const Mat& m) { return m.allFinite(); }
bool all_finite(const Vec& v) { return v.allFinite(); }

Real operator_norm(const Mat& m) {
    if (m.rows() != m.cols()) {
        throw InvalidInputError("operator_norm: matrix must be square");
    }
    if (!all_finite(m)) {
        throw InvalidInputError("operator_norm: non-finite entries");
    }
    if (m.rows() == 0) {
        throw InvalidInputError("operator_norm: empty matrix");
    }
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

Real frobenius_norm(const Mat& m) { return m.norm(); }

Real infinity_norm(const Mat& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

DenseLu::DenseLu(const Mat& m, std::optional<Scalar> k_context)
    : lu_(Mat()), k_context_(k_context), n_(m.rows()) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidInputError("DenseLu: matrix must be square with dimension >= 1");
    }
    if (!all_finite(m)) {
        throw InvalidInputError("DenseLu: non-finite entries");
    }
    lu_.compute(m);
    min_pivot_ = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    const Real scale = infinity_norm(m);
    singular_ = (scale == 0.0) || (min_pivot_ < kSingularPivotRelTol * scale);
}

void DenseLu::require_nonsingular() const {
    if (!singular_) return;
    std::string what = "singular operator: smallest pivot " + std::to_string(min_pivot_);
    if (k_context_) {
        what += " at k = (" + std::to_string(k_context_->real()) + ", " +
                std::to_string(k_context_->imag()) + ")";
    }
    throw SingularOperatorError(what, k_context_);
}

Vec DenseLu::solve(const Vec& b) const {
    require_nonsingular();
    if (b.size() != n_) {
        throw InvalidInputError("DenseLu::solve: dimension mismatch");
    }
    return lu_.solve(b);
}

Mat DenseLu::solve(const Mat& b) const {
    require_nonsingular();
    if (b.rows() != n_) {
        throw InvalidInputError("DenseLu::solve: dimension mismatch");
    }
    return lu_.solve(b);
}

Mat DenseLu::inverse() const {
    return solve(Mat(Mat::Identity(n_, n_)));
}

Vec solve_dense(const Mat& m, const Vec& b, std::optional<Scalar> k_context) {
    if (!all_finite(b)) {
        throw InvalidInputError("solve_dense: non-finite right-hand side");
    }
    return DenseLu(m, k_context).solve(b);
}

Mat inverse_dense(const Mat& m, std::optional<Scalar> k_context) {
    return DenseLu(m, k_context).inverse();
}

namespace {

// Legendre value and derivative on [-1, 1] by the three-term recurrence.
std::pair<long double, long double> legendre_pair(int n, long double x) {
    long double p0 = 1.0L, p1 = x;
    for (int j = 2; j <= n; ++j) {
        long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    long double dp = n * (x * p1 - p0) / (x * x - 1.0L);
    return {p1, dp};
}

}  // namespace

Quadrature gauss_legendre(int n, Real lo, Real hi) {
    if (n < 1) {
        throw InvalidInputError("gauss_legendre: need n >= 1");
    }
    if (!(lo < hi)) {
        throw InvalidInputError("gauss_legendre: need lo < hi");
    }
    Quadrature q;
    q.lo = lo;
    q.hi = hi;
    q.nodes.resize(n);
    q.weights.resize(n);
    const long double half = 0.5L * (static_cast<long double>(hi) - lo);
    const long double mid = 0.5L * (static_cast<long double>(hi) + lo);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        if (n == 1) x = 0.0L;
        long double dp = 1.0L;
        for (int it = 0; it < 100; ++it) {
            auto [p, d] = legendre_pair(n, x);
            dp = d;
            long double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-19L * (1.0L + std::abs(x))) break;
        }
        auto [p, d] = legendre_pair(n, x);
        (void)p;
        dp = d;
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        // x is the i-th root counted from +1 downward; mirror for the lower half
        q.nodes(n - 1 - i) = static_cast<Real>(mid + half * x);
        q.nodes(i) = static_cast<Real>(mid - half * x);
        q.weights(n - 1 - i) = static_cast<Real>(half * w);
        q.weights(i) = static_cast<Real>(half * w);
    }
    return q;
}

Real loglog_slope(std::span<const Real> x, std::span<const Real> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidInputError("loglog_slope: need matching sizes >= 2");
    }
    const auto n = static_cast<Real>(x.size());
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw InvalidInputError("loglog_slope: inputs must be positive");
        }
        const Real lx = std::log(x[i]);
        const Real ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace paramop
