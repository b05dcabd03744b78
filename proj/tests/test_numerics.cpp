#include <doctest.h>

#include <cmath>
#include <vector>

#include "paramop/errors.hpp"
#include "paramop/numerics.hpp"
#include "paramop/xprec.hpp"

using namespace paramop;

namespace {

Mat mat2(Scalar a, Scalar b, Scalar c, Scalar d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("operator_norm on diagonal and nilpotent matrices") {
    CHECK(std::abs(operator_norm(Mat::Identity(3, 3)) - 1.0) <= 1e-15);

    Mat diag = Mat::Zero(2, 2);
    diag(0, 0) = Scalar(2.0, 0.0);
    diag(1, 1) = Scalar(1.0, 0.0);
    CHECK(std::abs(operator_norm(diag) - 2.0) <= 1e-14);

    // For [[0,3],[0,0]], M^H M = diag(0,9): the singular values are {0,3}.
    const Mat nilpotent = mat2(Scalar(0), Scalar(3.0, 0.0), Scalar(0), Scalar(0));
    CHECK(std::abs(operator_norm(nilpotent) - 3.0) <= 1e-14);

    // Rotating the nilpotent entry into the imaginary axis keeps the norm.
    const Mat imag_entry = mat2(Scalar(0), Scalar(0.0, 3.0), Scalar(0), Scalar(0));
    CHECK(std::abs(operator_norm(imag_entry) - 3.0) <= 1e-14);
}

TEST_CASE("operator_norm of the unit shear is the golden ratio") {
    // M = [[1,1],[0,1]]: M^H M = [[1,1],[1,2]] has eigenvalues (3 +- sqrt 5)/2,
    // and sqrt((3 + sqrt 5)/2) = (1 + sqrt 5)/2.
    const Mat shear = mat2(Scalar(1.0, 0.0), Scalar(1.0, 0.0), Scalar(0), Scalar(1.0, 0.0));
    const Real phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(operator_norm(shear) - phi) <= 1e-14);
}

TEST_CASE("operator_norm input validation") {
    Mat rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS((void)operator_norm(rect), InvalidInputError);

    Mat nan_mat = Mat::Identity(2, 2);
    nan_mat(0, 0) = Scalar(std::numeric_limits<Real>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS((void)operator_norm(nan_mat), InvalidInputError);

    CHECK_THROWS_AS((void)operator_norm(Mat()), InvalidInputError);
}

TEST_CASE("frobenius and infinity norms") {
    const Mat m = mat2(Scalar(3.0, 0.0), Scalar(4.0, 0.0), Scalar(0), Scalar(0));
    CHECK(std::abs(frobenius_norm(m) - 5.0) <= 1e-14);

    const Mat rows = mat2(Scalar(1.0, 0.0), Scalar(-2.0, 0.0),
                          Scalar(3.0, 0.0), Scalar(0.0, 4.0));
    CHECK(std::abs(infinity_norm(rows) - 7.0) <= 1e-14);
}

TEST_CASE("solve_dense reproduces hand solutions") {
    SUBCASE("diagonal system") {
        const Mat a = mat2(Scalar(2.0, 0.0), Scalar(0), Scalar(0), Scalar(4.0, 0.0));
        Vec b(2);
        b << Scalar(2.0, 0.0), Scalar(8.0, 0.0);
        const Vec x = solve_dense(a, b);
        CHECK(std::abs(x(0) - Scalar(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(x(1) - Scalar(2.0, 0.0)) <= 1e-15);
    }
    SUBCASE("dense 2x2 with complex rhs") {
        // [[1,2],[3,4]] x = (1, i): det = -2, x = (-2 + i, 1.5 - 0.5 i) via
        // Cramer: x1 = (1*4 - 2*i)/(-2), x2 = (1*i - 3*1)/(-2).
        const Mat a = mat2(Scalar(1.0, 0.0), Scalar(2.0, 0.0),
                           Scalar(3.0, 0.0), Scalar(4.0, 0.0));
        Vec b(2);
        b << Scalar(1.0, 0.0), Scalar(0.0, 1.0);
        const Vec x = solve_dense(a, b);
        CHECK(std::abs(x(0) - Scalar(-2.0, 1.0)) <= 1e-14);
        CHECK(std::abs(x(1) - Scalar(1.5, -0.5)) <= 1e-14);
    }
}

TEST_CASE("solve_dense rejects singular and malformed input") {
    const Mat singular = mat2(Scalar(1.0, 0.0), Scalar(2.0, 0.0),
                              Scalar(2.0, 0.0), Scalar(4.0, 0.0));
    Vec b = Vec::Ones(2);
    CHECK_THROWS_AS((void)solve_dense(singular, b), SingularOperatorError);

    // The k context given at the solve is carried on the error.
    try {
        (void)solve_dense(singular, b, Scalar(0.25, -0.5));
        CHECK(false);
    } catch (const SingularOperatorError& err) {
        REQUIRE(err.k_context.has_value());
        CHECK(err.k_context->real() == 0.25);
        CHECK(err.k_context->imag() == -0.5);
    }

    Vec wrong = Vec::Ones(3);
    CHECK_THROWS_AS((void)solve_dense(Mat::Identity(2, 2), wrong), InvalidInputError);

    Vec bad = Vec::Ones(2);
    bad(0) = Scalar(std::numeric_limits<Real>::infinity(), 0.0);
    CHECK_THROWS_AS((void)solve_dense(Mat::Identity(2, 2), bad), InvalidInputError);
}

TEST_CASE("DenseLu factors once and reports singularity without throwing") {
    const Mat a = mat2(Scalar(2.0, 0.0), Scalar(1.0, 0.0), Scalar(0), Scalar(3.0, 0.0));
    DenseLu lu(a);
    CHECK_FALSE(lu.singular());
    CHECK(lu.min_pivot() > 0.0);

    Vec b(2);
    b << Scalar(5.0, 0.0), Scalar(6.0, 0.0);
    const Vec x = lu.solve(b);  // back-substitute: x2 = 2, x1 = (5 - 2)/2
    CHECK(std::abs(x(0) - Scalar(1.5, 0.0)) <= 1e-14);
    CHECK(std::abs(x(1) - Scalar(2.0, 0.0)) <= 1e-14);

    const Mat zero = Mat::Zero(2, 2);
    DenseLu lu_zero(zero);
    CHECK(lu_zero.singular());
    CHECK_THROWS_AS((void)lu_zero.solve(b), SingularOperatorError);
}

TEST_CASE("inverse_dense matches the adjugate formula") {
    const Mat a = mat2(Scalar(1.0, 0.0), Scalar(2.0, 0.0),
                       Scalar(3.0, 0.0), Scalar(4.0, 0.0));
    const Mat inv = inverse_dense(a);
    // det = -2, inverse = [[-2, 1], [1.5, -0.5]].
    CHECK(std::abs(inv(0, 0) - Scalar(-2.0, 0.0)) <= 1e-14);
    CHECK(std::abs(inv(0, 1) - Scalar(1.0, 0.0)) <= 1e-14);
    CHECK(std::abs(inv(1, 0) - Scalar(1.5, 0.0)) <= 1e-14);
    CHECK(std::abs(inv(1, 1) - Scalar(-0.5, 0.0)) <= 1e-14);
    CHECK(operator_norm(Mat(a * inv - Mat::Identity(2, 2))) <= 1e-14);
}

TEST_CASE("gauss_legendre two-point rule has the classic nodes") {
    const Quadrature q = gauss_legendre(2, 0.0, 1.0);
    REQUIRE(q.size() == 2);
    // Nodes 1/2 -+ 1/(2 sqrt 3), weights 1/2 each.
    const Real offset = 0.5 / std::sqrt(3.0);
    CHECK(std::abs(q.nodes(0) - (0.5 - offset)) <= 1e-15);
    CHECK(std::abs(q.nodes(1) - (0.5 + offset)) <= 1e-15);
    CHECK(std::abs(q.weights(0) - 0.5) <= 1e-15);
    CHECK(std::abs(q.weights(1) - 0.5) <= 1e-15);
}

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n-1") {
    for (int n = 1; n <= 8; ++n) {
        const Quadrature q = gauss_legendre(n, 0.0, 1.0);
        Real weight_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(q.weights(i) > 0.0);
            weight_sum += q.weights(i);
        }
        CHECK(std::abs(weight_sum - 1.0) <= 1e-14);
        for (int degree = 0; degree <= 2 * n - 1; ++degree) {
            Real integral = 0.0;
            for (int i = 0; i < n; ++i) {
                integral += q.weights(i) * std::pow(q.nodes(i), degree);
            }
            const Real exact = 1.0 / (degree + 1.0);
            CHECK(std::abs(integral - exact) <= 1e-13);
        }
    }
}

TEST_CASE("gauss_legendre respects the requested interval") {
    const Quadrature q = gauss_legendre(1, -1.0, 1.0);
    CHECK(std::abs(q.nodes(0) - 0.0) <= 1e-15);
    CHECK(std::abs(q.weights(0) - 2.0) <= 1e-15);

    const Quadrature shifted = gauss_legendre(5, 2.0, 4.0);
    for (int i = 0; i < 5; ++i) {
        CHECK(shifted.nodes(i) > 2.0);
        CHECK(shifted.nodes(i) < 4.0);
    }
    // integral of x over [2,4] = 6.
    Real first_moment = 0.0;
    for (int i = 0; i < 5; ++i) {
        first_moment += shifted.weights(i) * shifted.nodes(i);
    }
    CHECK(std::abs(first_moment - 6.0) <= 1e-13);

    CHECK_THROWS_AS((void)gauss_legendre(0, 0.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS((void)gauss_legendre(3, 1.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS((void)gauss_legendre(3, 2.0, 1.0), InvalidInputError);
}

TEST_CASE("central_diff has second-order truncation") {
    auto cubic = [](Real t) { return t * t * t; };
    // Derivative 3 at t = 1; the stencil error is exactly h^2 for a cubic.
    const Real d = central_diff(cubic, 1.0, 1e-5);
    CHECK(std::abs(d - 3.0) <= 2e-10);
    CHECK(std::abs(d - 3.0) >= 1e-11);  // the h^2 term is visible, not roundoff

    // Works on vector values too.
    auto vector_fn = [](Real t) {
        Vec v(2);
        v << Scalar(t * t, 0.0), Scalar(std::sin(t), 0.0);
        return v;
    };
    const Vec vd = central_diff(vector_fn, 0.5, 1e-6);
    CHECK(std::abs(vd(0) - Scalar(1.0, 0.0)) <= 1e-9);
    CHECK(std::abs(vd(1) - Scalar(std::cos(0.5), 0.0)) <= 1e-9);
}

TEST_CASE("loglog_slope recovers exact power laws") {
    const std::vector<Real> x = {1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<Real> y;
    for (const Real xi : x) {
        y.push_back(2.0 * std::pow(xi, 1.5));
    }
    CHECK(std::abs(loglog_slope(x, y) - 1.5) <= 1e-12);

    std::vector<Real> flat(x.size(), 7.0);
    CHECK(std::abs(loglog_slope(x, flat) - 0.0) <= 1e-12);

    const std::vector<Real> bad = {1e-1, -1e-2};
    const std::vector<Real> pos = {1.0, 2.0};
    CHECK_THROWS_AS((void)loglog_slope(bad, pos), InvalidInputError);
    const std::vector<Real> one = {1.0};
    CHECK_THROWS_AS((void)loglog_slope(one, one), InvalidInputError);
    CHECK_THROWS_AS((void)loglog_slope(x, pos), InvalidInputError);
}

TEST_CASE("extended-precision kit round-trips and solves") {
    const Mat a = mat2(Scalar(1.0, 0.0), Scalar(2.0, 0.0),
                       Scalar(3.0, 0.0), Scalar(4.0, 0.5));
    const xprec::MatX wide = xprec::widen(a);
    CHECK(operator_norm(Mat(xprec::narrow(wide) - a)) == 0.0);

    const xprec::MatX inv = xprec::inverse(wide);
    const Mat residual = xprec::narrow(wide * inv) - Mat::Identity(2, 2);
    CHECK(operator_norm(residual) <= 1e-17);

    xprec::MatX rhs(2, 1);
    rhs(0, 0) = xprec::ScalarX(1.0L, 0.0L);
    rhs(1, 0) = xprec::ScalarX(0.0L, 0.0L);
    const xprec::MatX x = xprec::lu_solve(wide, rhs);
    const xprec::MatX check = wide * x - rhs;
    CHECK(xprec::operator_norm_approx(check) <= 1e-17);

    xprec::MatX zero = xprec::widen(Mat::Zero(2, 2));
    CHECK_THROWS_AS((void)xprec::lu_solve(zero, rhs), SingularOperatorError);
}
