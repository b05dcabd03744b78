#include <doctest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "paramop/disc.hpp"
#include "paramop/errors.hpp"
#include "paramop/families.hpp"

using namespace paramop;

TEST_CASE("make_disc chord grid hits the endpoints and the exact center") {
    const ParameterDisc single = make_disc(Scalar(0.0, 0.0), 1.0, 1);
    REQUIRE(single.grid.size() == 1);
    CHECK(single.grid[0] == Scalar(0.0, 0.0));

    const ParameterDisc three = make_disc(Scalar(0.0, 0.0), 1.0, 3);
    REQUIRE(three.grid.size() == 3);
    CHECK(three.grid[0] == Scalar(-1.0, 0.0));
    // The middle chord point is the center bitwise, not merely close: the
    // counterexample run depends on sampling the jump point exactly.
    CHECK(three.grid[1] == Scalar(0.0, 0.0));
    CHECK(three.grid[2] == Scalar(1.0, 0.0));

    const ParameterDisc shifted = make_disc(Scalar(2.0, 0.0), 0.5, 3);
    CHECK(std::abs(shifted.grid[0] - Scalar(1.5, 0.0)) <= 1e-15);
    CHECK(shifted.grid[1] == Scalar(2.0, 0.0));
    CHECK(std::abs(shifted.grid[2] - Scalar(2.5, 0.0)) <= 1e-15);
}

TEST_CASE("make_disc polar grid sits on the half-radius circle") {
    const ParameterDisc disc = make_disc(Scalar(1.0, 1.0), 2.0, 8, GridKind::polar);
    REQUIRE(disc.grid.size() == 8);
    for (const Scalar k : disc.grid) {
        CHECK(std::abs(std::abs(k - disc.center) - 1.0) <= 1e-14);  // r/2 = 1
        CHECK(disc.contains(k));
    }
    // First sample lies on the positive real ray from the center.
    CHECK(std::abs(disc.grid[0] - Scalar(2.0, 1.0)) <= 1e-14);
}

TEST_CASE("disc membership and h-sequence validation") {
    const ParameterDisc disc = make_disc(Scalar(0.0, 0.0), 1.0, 5);
    CHECK(disc.contains(Scalar(1.0, 0.0)));
    CHECK(disc.contains(Scalar(0.0, -1.0)));
    CHECK_FALSE(disc.contains(Scalar(1.1, 0.0)));

    const std::vector<Real> hs = default_h_sequence();
    REQUIRE(hs.size() == 6);
    CHECK(hs.front() == 1e-1);
    CHECK(hs.back() == 1e-6);
    for (std::size_t i = 1; i < hs.size(); ++i) {
        CHECK(hs[i] < hs[i - 1]);
    }

    CHECK_THROWS_AS((void)make_disc(Scalar(0, 0), 0.0, 3), InvalidInputError);
    CHECK_THROWS_AS((void)make_disc(Scalar(0, 0), 1.0, 0), InvalidInputError);
    CHECK_THROWS_AS((void)make_disc(Scalar(0, 0), 1.0, 3, GridKind::real_chord, {}),
                    InvalidInputError);
    CHECK_THROWS_AS((void)make_disc(Scalar(0, 0), 1.0, 3, GridKind::real_chord, {1e-1, 1e-1}),
                    InvalidInputError);
    CHECK_THROWS_AS((void)make_disc(Scalar(0, 0), 1.0, 3, GridKind::real_chord, {1e-2, 1e-1}),
                    InvalidInputError);
}

TEST_CASE("SeededUniform is deterministic and in range") {
    SeededUniform a(42);
    SeededUniform b(42);
    for (int i = 0; i < 100; ++i) {
        const Real va = a.next();
        CHECK(va == b.next());
        CHECK(va >= -1.0);
        CHECK(va < 1.0);
    }

    SeededUniform c(43);
    SeededUniform d(42);
    int differing = 0;
    for (int i = 0; i < 16; ++i) {
        differing += (c.next() != d.next()) ? 1 : 0;
    }
    CHECK(differing >= 15);

    // next_matrix consumes the stream row-major, one complex draw per entry.
    SeededUniform stream(7);
    SeededUniform ref(7);
    const Mat m = stream.next_matrix(2, 3);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(m(i, j) == ref.next_complex());
        }
    }
}

TEST_CASE("registry builds are deterministic in the seed") {
    RegistryOptions opts;
    opts.dim = 4;
    opts.seed = 11;
    const auto first = registry_build("affine-matrix", opts);
    const auto second = registry_build("affine-matrix", opts);
    const LinearProblem& p1 = std::get<LinearProblem>(first);
    const LinearProblem& p2 = std::get<LinearProblem>(second);
    const Scalar k(0.3, -0.2);
    CHECK((p1.family.eval(k) - p2.family.eval(k)).norm() == 0.0);
    CHECK((p1.rhs.eval(k) - p2.rhs.eval(k)).norm() == 0.0);

    opts.seed = 12;
    const auto third = registry_build("affine-matrix", opts);
    const LinearProblem& p3 = std::get<LinearProblem>(third);
    CHECK((p1.family.eval(k) - p3.family.eval(k)).norm() > 1e-3);
}

TEST_CASE("registry names and unknown-name reporting") {
    const std::vector<std::string> names = registry_names();
    CHECK(names.size() == 6);
    for (const std::string& name : names) {
        RegistryOptions opts;
        opts.dim = 3;
        CHECK_NOTHROW((void)registry_build(name, opts));
    }
    try {
        (void)registry_build("no-such-family", {});
        CHECK(false);
    } catch (const NotFoundError& err) {
        const std::string what = err.what();
        CHECK(what.find("no-such-family") != std::string::npos);
        CHECK(what.find("identity") != std::string::npos);
        CHECK(what.find("remark12") != std::string::npos);
    }
}

TEST_CASE("registry variant carries the right problem kind") {
    RegistryOptions opts;
    opts.dim = 2;
    CHECK(std::holds_alternative<LinearProblem>(registry_build("identity", opts)));
    CHECK(std::holds_alternative<LinearProblem>(registry_build("affine-matrix", opts)));
    CHECK(std::holds_alternative<LinearProblem>(registry_build("diag-near-singular", opts)));
    CHECK(std::holds_alternative<LinearProblem>(registry_build("remark12", opts)));
    CHECK(std::holds_alternative<NonlinearProblem>(registry_build("cubic-pointwise", opts)));
    CHECK(std::holds_alternative<NonlinearProblem>(registry_build("linear-wrapped", opts)));
}

TEST_CASE("remark12 family is the identity at the center and 2I off it") {
    Vec g(2);
    g << Scalar(3.0, 0.0), Scalar(4.0, 0.0);
    const LinearProblem problem = build_remark12(g);

    const Mat at_center = problem.family.eval(Scalar(0.0, 0.0));
    CHECK((at_center - Mat::Identity(2, 2)).norm() == 0.0);
    CHECK((problem.family.eval(Scalar(1e-300, 0.0)) - 2.0 * Mat::Identity(2, 2)).norm() == 0.0);
    CHECK((problem.family.eval(Scalar(0.0, 1e-12)) - 2.0 * Mat::Identity(2, 2)).norm() == 0.0);
    CHECK_FALSE(problem.family.has_deriv());  // discontinuous by design
    CHECK((problem.rhs.eval(Scalar(0.7, 0.0)) - g).norm() == 0.0);

    // An off-center jump point moves the discontinuity with it.
    const LinearProblem moved = build_remark12(g, Scalar(2.0, 0.0));
    CHECK((moved.family.eval(Scalar(2.0, 0.0)) - Mat::Identity(2, 2)).norm() == 0.0);
    CHECK((moved.family.eval(Scalar(0.0, 0.0)) - 2.0 * Mat::Identity(2, 2)).norm() == 0.0);

    CHECK_THROWS_AS((void)build_remark12(Vec()), InvalidInputError);
    CHECK_THROWS_AS((void)build_remark12(Vec(Vec::Zero(2))), InvalidInputError);
}

TEST_CASE("diag-near-singular is singular exactly at k_star") {
    const LinearProblem problem = build_diag_near_singular(3, Scalar(0.5, 0.0));
    const Mat at_star = problem.family.eval(Scalar(0.5, 0.0));
    CHECK(std::abs(at_star(2, 2)) == 0.0);
    const Mat away = problem.family.eval(Scalar(1.5, 0.0));
    CHECK(std::abs(away(2, 2) - Scalar(1.0, 0.0)) <= 1e-15);
    const Mat deriv = problem.family.deriv(Scalar(0.1, 0.0));
    CHECK(std::abs(deriv(2, 2) - Scalar(1.0, 0.0)) == 0.0);
    CHECK(deriv.norm() == 1.0);
}

TEST_CASE("wrap_linear reproduces the linear action and derivatives") {
    const LinearProblem problem = build_affine_matrix(3, 5);
    const NonlinearFamily nf = wrap_linear(problem.family);
    REQUIRE(nf.has_frechet());
    REQUIRE(nf.has_partial_k());

    SeededUniform rng(99);
    const Vec u = rng.next_vector(3);
    const Scalar k(0.4, 0.1);
    CHECK((nf.eval(u, k) - problem.family.eval(k) * u).norm() <= 1e-15);
    CHECK((nf.frechet(u, k) - problem.family.eval(k)).norm() == 0.0);
    CHECK((nf.partial_k(u, k) - problem.family.deriv(k) * u).norm() <= 1e-15);
}

TEST_CASE("central differences confirm the registry k-derivatives") {
    // Both built-in derivative-bearing matrix families are polynomial in k of
    // degree <= 2, so the second-order stencil reproduces dA/dk to roundoff.
    const LinearProblem affine = build_affine_matrix(4, 3);
    const LinearProblem diag = build_diag_near_singular(4, Scalar(0.25, 0.0));
    for (const LinearProblem* problem : {&affine, &diag}) {
        for (const Real h : {1e-1, 1e-3}) {
            const Scalar k(0.3, 0.0);
            const Mat stencil = central_diff(
                [&](Real t) { return problem->family.eval(Scalar(t, 0.0)); }, k.real(), h);
            const Mat exact = problem->family.deriv(k);
            CHECK(operator_norm(Mat(stencil - exact)) <= 1e-12);
        }
    }
}

TEST_CASE("frechet_check accepts true derivatives and flags wrong ones") {
    std::vector<Vec> directions;
    for (int i = 0; i < 2; ++i) {
        Vec e = Vec::Zero(2);
        e(i) = Scalar(1.0, 0.0);
        directions.push_back(e);
    }

    SUBCASE("linear-wrapped family is exact") {
        const NonlinearFamily nf = wrap_linear(build_affine_matrix(2, 1).family);
        const Vec u = Vec::Ones(2);
        CHECK(frechet_check(nf, u, Scalar(0.2, 0.0), directions, 1e-6) <= 1e-9);
    }

    SUBCASE("cubic family shows only the h^2 stencil error") {
        const NonlinearProblem problem = build_cubic_pointwise(2);
        const Vec u = Vec::Ones(2);
        // Third derivative of u^3 is constant 6, so the stencil error is
        // exactly k h^2 per component; with h = 1e-4 that is ~1e-9.
        const Real gap = frechet_check(problem.family, u, Scalar(0.3, 0.0), directions, 1e-4);
        CHECK(gap <= 1e-5);
    }

    SUBCASE("a deliberately wrong Frechet derivative is caught") {
        NonlinearFamily faulty;
        faulty.dim = 2;
        faulty.eval = [](const Vec& u, Scalar) -> Vec { return 1.5 * u; };
        faulty.frechet = [](const Vec&, Scalar) -> Mat { return Mat::Identity(2, 2); };
        const Vec u = Vec::Ones(2);
        const Real gap = frechet_check(faulty, u, Scalar(0.0, 0.0), directions, 1e-6);
        CHECK(std::abs(gap - 0.5) <= 1e-9);  // stencil 1.5 d vs claimed d
    }

    SUBCASE("input validation") {
        NonlinearFamily no_frechet;
        no_frechet.dim = 2;
        no_frechet.eval = [](const Vec& u, Scalar) -> Vec { return u; };
        const Vec u = Vec::Ones(2);
        CHECK_THROWS_AS((void)frechet_check(no_frechet, u, Scalar(0, 0), directions, 1e-6),
                        CapabilityError);
        const NonlinearProblem problem = build_cubic_pointwise(2);
        CHECK_THROWS_AS((void)frechet_check(problem.family, u, Scalar(0, 0), directions, 0.0),
                        InvalidInputError);
    }
}

TEST_CASE("frechet_check error shrinks at second order in h") {
    const NonlinearProblem problem = build_cubic_pointwise(3);
    Vec u(3);
    u << Scalar(1.0, 0.0), Scalar(-0.5, 0.2), Scalar(0.3, 0.0);
    std::vector<Vec> directions;
    Vec d = Vec::Ones(3);
    directions.push_back(d);

    std::vector<Real> hs = {1e-1, 1e-2, 1e-3};
    std::vector<Real> gaps;
    for (const Real h : hs) {
        gaps.push_back(frechet_check(problem.family, u, Scalar(0.7, 0.0), directions, h));
    }
    const Real slope = loglog_slope(hs, gaps);
    CHECK(slope >= 1.9);
    CHECK(slope <= 2.1);
}
