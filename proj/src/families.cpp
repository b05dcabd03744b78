#include "paramop/families.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "paramop/errors.hpp"

namespace paramop {

Real SeededUniform::next() {
    // 53 high bits -> [0,1) with the classic 2^-53 ladder, then stretch to [-1,1).
    const std::uint64_t bits = gen_() >> 11;
    const Real v = static_cast<Real>(bits) * 0x1.0p-53;
    return 2.0 * v - 1.0;
}

Scalar SeededUniform::next_complex() {
    const Real re = next();
    const Real im = next();
    return Scalar(re, im);
}

Mat SeededUniform::next_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = next_complex();
        }
    }
    return m;
}

Vec SeededUniform::next_vector(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = next_complex();
    }
    return v;
}

namespace {

void require_dim(int dim) {
    if (dim < 1) {
        throw InvalidInputError("family dimension must be >= 1, got " + std::to_string(dim));
    }
}

RhsFamily seeded_affine_rhs(int dim, SeededUniform& rng, std::string label) {
    const Vec f0 = rng.next_vector(dim);
    const Vec f1 = rng.next_vector(dim);
    RhsFamily rhs;
    rhs.dim = dim;
    rhs.eval = [f0, f1](Scalar k) -> Vec { return f0 + k * f1; };
    rhs.deriv = [f1](Scalar) -> Vec { return f1; };
    rhs.label = std::move(label);
    return rhs;
}

RhsFamily constant_rhs(int dim, Vec value, std::string label) {
    RhsFamily rhs;
    rhs.dim = dim;
    rhs.eval = [value](Scalar) -> Vec { return value; };
    rhs.deriv = [dim](Scalar) -> Vec { return Vec::Zero(dim); };
    rhs.label = std::move(label);
    return rhs;
}

}  // namespace

LinearProblem build_identity(int dim, std::uint64_t seed) {
    require_dim(dim);
    SeededUniform rng(seed);
    LinearFamily fam;
    fam.dim = dim;
    fam.eval = [dim](Scalar) -> Mat { return Mat::Identity(dim, dim); };
    fam.deriv = [dim](Scalar) -> Mat { return Mat::Zero(dim, dim); };
    fam.label = "identity";
    return LinearProblem{std::move(fam), seeded_affine_rhs(dim, rng, "identity-rhs")};
}

LinearProblem build_affine_matrix(int dim, std::uint64_t seed) {
    require_dim(dim);
    SeededUniform rng(seed);
    const Real s = 1.0 / std::sqrt(static_cast<Real>(dim));
    // Scales keep ||A(k) - I|| well below 1 on |k| <= 1, so every seed is
    // comfortably nonsingular across the test discs.
    const Mat a0 = Mat::Identity(dim, dim) + 0.2 * s * rng.next_matrix(dim, dim);
    const Mat a1 = 0.3 * s * rng.next_matrix(dim, dim);
    const Mat a2 = 0.15 * s * rng.next_matrix(dim, dim);

    LinearFamily fam;
    fam.dim = dim;
    fam.eval = [a0, a1, a2](Scalar k) -> Mat { return a0 + k * a1 + (k * k) * a2; };
    fam.deriv = [a1, a2](Scalar k) -> Mat { return a1 + (2.0 * k) * a2; };
    fam.label = "affine-matrix(seed=" + std::to_string(seed) + ")";
    return LinearProblem{std::move(fam), seeded_affine_rhs(dim, rng, "affine-rhs")};
}

LinearProblem build_diag_near_singular(int dim, Scalar k_star) {
    require_dim(dim);
    LinearFamily fam;
    fam.dim = dim;
    fam.eval = [dim, k_star](Scalar k) -> Mat {
        Mat m = Mat::Identity(dim, dim);
        m(dim - 1, dim - 1) = k - k_star;
        return m;
    };
    fam.deriv = [dim](Scalar) -> Mat {
        Mat m = Mat::Zero(dim, dim);
        m(dim - 1, dim - 1) = Scalar(1.0, 0.0);
        return m;
    };
    fam.label = "diag-near-singular";
    return LinearProblem{std::move(fam), constant_rhs(dim, Vec::Ones(dim), "ones")};
}

LinearProblem build_remark12(const Vec& g, Scalar center) {
    if (g.size() == 0 || g.norm() == 0.0) {
        throw InvalidInputError("remark12 requires a nonzero constant rhs g");
    }
    const int dim = static_cast<int>(g.size());
    LinearFamily fam;
    fam.dim = dim;
    // Discontinuous by construction: the identity at the center, 2I elsewhere.
    // No derivative exists, so none is supplied.
    fam.eval = [dim, center](Scalar k) -> Mat {
        const Real factor = (k == center) ? 1.0 : 2.0;
        return factor * Mat::Identity(dim, dim);
    };
    fam.label = "remark12";
    return LinearProblem{std::move(fam), constant_rhs(dim, g, "jump-rhs")};
}

NonlinearProblem build_cubic_pointwise(int dim) {
    require_dim(dim);
    NonlinearFamily fam;
    fam.dim = dim;
    fam.eval = [](const Vec& u, Scalar k) -> Vec {
        return u + k * u.array().cube().matrix();
    };
    fam.frechet = [dim](const Vec& u, Scalar k) -> Mat {
        Mat m = Mat::Identity(dim, dim);
        m.diagonal() += (3.0 * k) * u.array().square().matrix();
        return m;
    };
    fam.partial_k = [](const Vec& u, Scalar) -> Vec {
        return u.array().cube().matrix();
    };
    fam.label = "cubic-pointwise";
    Vec f = Vec::Constant(dim, Scalar(2.0, 0.0));
    return NonlinearProblem{std::move(fam), constant_rhs(dim, std::move(f), "two")};
}

NonlinearFamily wrap_linear(const LinearFamily& fam) {
    NonlinearFamily nf;
    nf.dim = fam.dim;
    nf.direction = fam.direction;
    nf.label = "linear-wrapped(" + fam.label + ")";
    auto eval = fam.eval;
    nf.eval = [eval](const Vec& u, Scalar k) -> Vec { return eval(k) * u; };
    nf.frechet = [eval](const Vec&, Scalar k) -> Mat { return eval(k); };
    if (fam.deriv) {
        auto deriv = fam.deriv;
        nf.partial_k = [deriv](const Vec& u, Scalar k) -> Vec { return deriv(k) * u; };
    }
    return nf;
}

NonlinearProblem wrap_linear(const LinearProblem& problem) {
    return NonlinearProblem{wrap_linear(problem.family), problem.rhs};
}

std::vector<std::string> registry_names() {
    return {"identity",     "affine-matrix",   "diag-near-singular",
            "remark12",     "cubic-pointwise", "linear-wrapped"};
}

std::variant<LinearProblem, NonlinearProblem> registry_build(const std::string& name,
                                                             const RegistryOptions& opts) {
    if (name == "identity") {
        return build_identity(opts.dim, opts.seed);
    }
    if (name == "affine-matrix") {
        return build_affine_matrix(opts.dim, opts.seed);
    }
    if (name == "diag-near-singular") {
        return build_diag_near_singular(opts.dim, opts.k_star);
    }
    if (name == "remark12") {
        Vec g;
        if (opts.jump_rhs.has_value()) {
            g = *opts.jump_rhs;
        } else {
            require_dim(opts.dim);
            g = Vec::Zero(opts.dim);
            g(0) = Scalar(1.0, 0.0);
        }
        return build_remark12(g, opts.center);
    }
    if (name == "cubic-pointwise") {
        return build_cubic_pointwise(opts.dim);
    }
    if (name == "linear-wrapped") {
        return wrap_linear(build_affine_matrix(opts.dim, opts.seed));
    }
    std::ostringstream msg;
    msg << "unknown family '" << name << "'; available:";
    for (const auto& known : registry_names()) {
        msg << " " << known;
    }
    throw NotFoundError(msg.str());
}

Real frechet_check(const NonlinearFamily& nf, const Vec& u, Scalar k,
                   std::span<const Vec> directions, Real h) {
    if (!nf.has_frechet()) {
        throw CapabilityError("frechet_check requires a family with a Frechet derivative");
    }
    if (!(h > 0.0)) {
        throw InvalidInputError("frechet_check requires h > 0");
    }
    const Mat jac = nf.frechet(u, k);
    Real worst = 0.0;
    for (const Vec& d : directions) {
        const Vec stencil = (nf.eval(u + h * d, k) - nf.eval(u - h * d, k)) / (2.0 * h);
        const Vec exact = jac * d;
        const Real gap = (stencil - exact).norm() / (exact.norm() + 1e-14);
        worst = std::max(worst, gap);
    }
    return worst;
}

}  // namespace paramop
