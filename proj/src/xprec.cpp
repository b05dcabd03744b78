#include "paramop/xprec.hpp"

#include <cmath>

namespace paramop::xprec {

MatX widen(const Mat& m) {
    return m.cast<ScalarX>();
}

Mat narrow(const MatX& m) {
    return m.cast<Scalar>();
}

MatX lu_solve(const MatX& a, const MatX& b) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw InvalidInputError("xprec::lu_solve: dimension mismatch");
    }
    MatX lu = a;
    MatX x = b;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        long double best = std::abs(lu(c, c));
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const long double v = std::abs(lu(r, c));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0L) {
            throw SingularOperatorError("xprec::lu_solve: zero pivot");
        }
        if (p != c) {
            lu.row(p).swap(lu.row(c));
            x.row(p).swap(x.row(c));
        }
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const ScalarX f = lu(r, c) / lu(c, c);
            lu(r, c) = f;
            lu.row(r).tail(n - c - 1) -= f * lu.row(c).tail(n - c - 1);
            x.row(r) -= f * x.row(c);
        }
    }
    for (Eigen::Index r = n - 1; r >= 0; --r) {
        for (Eigen::Index c = r + 1; c < n; ++c) {
            x.row(r) -= lu(r, c) * x.row(c);
        }
        x.row(r) /= lu(r, r);
    }
    return x;
}

MatX inverse(const MatX& a) {
    return lu_solve(a, MatX(MatX::Identity(a.rows(), a.rows())));
}

Real operator_norm_approx(const MatX& m) {
    long double s = 0.0L;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            s += std::norm(m(i, j));
        }
    }
    return static_cast<Real>(std::sqrt(s));
}

}  // namespace paramop::xprec
