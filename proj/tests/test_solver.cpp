#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/errors.hpp"
#include "mehler/fields.hpp"
#include "mehler/profile.hpp"
#include "mehler/quad1d.hpp"
#include "mehler/solver.hpp"
#include "mehler/timequad.hpp"

using namespace mehler;

namespace {

CovarianceModel demo_model() {
    Eigen::MatrixXd Q = Eigen::Vector3d(4.0, 1.0, 0.0).asDiagonal();
    return CovarianceModel::build(Q);
}

const TimeQuadrature kTq{};
const QuadratureSpec kSpec{};

TimeField zero_source(const CovarianceModel& m, double horizon) {
    return TimeField{[](double) { return 0.0; }, 0.0,
                     ScalarField::constant(m, 0.0), horizon};
}

} // namespace

TEST_CASE("resolvent reproduces closed forms for polynomial data") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd a(3);
    a << 1.0, -1.0, 0.5;
    Eigen::VectorXd x(3);
    x << 0.3, -0.2, 1.0;
    const double mval = a.dot(x);
    const double sigma2 = a.dot(m.matrix() * a);

    for (double lambda : {0.5, 2.0}) {
        const double uc = resolvent(m, ScalarField::constant(m, 3.0), lambda, x, kTq, kSpec);
        CHECK(uc == doctest::Approx(3.0 / lambda).epsilon(1e-10));

        const double ul = resolvent(m, make_linear(m, a), lambda, x, kTq, kSpec);
        CHECK(ul == doctest::Approx(mval / (lambda + 1.0)).epsilon(1e-9));

        const double uq = resolvent(m, make_quadratic(m, a), lambda, x, kTq, kSpec);
        const double want = mval * mval / (lambda + 2.0) +
                            sigma2 * (1.0 / lambda - 1.0 / (lambda + 2.0));
        CHECK(uq == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("resolvent agrees with an independent damped-time quadrature") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 0.5, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(1.0));
    Eigen::VectorXd x(3);
    x << 0.4, -0.3, 2.0;
    const double s = z.dot(x);
    const double sigma2 = z.dot(m.matrix() * z);
    const double lambda = 0.5;

    // Gaussian pushforward of sin: T(t)f(x) = e^{-(1-e^{-2t}) sigma^2/2} sin(e^{-t} s).
    auto closedT = [&](double t) {
        const double beta2 = -std::expm1(-2.0 * t);
        return std::exp(-0.5 * beta2 * sigma2) * std::sin(std::exp(-t) * s);
    };
    const IntegralResult ref = integrate_adaptive(
        [&](double t) { return std::exp(-lambda * t) * closedT(t); }, 0.0, 80.0,
        1e-12, 1e-14);

    const SolveScalar got = resolvent_err(m, f, lambda, x, kTq, kSpec);
    CHECK(std::abs(got.value - ref.value) <=
          1e-7 + 10.0 * (got.err + got.tailBound + ref.err));
    CHECK(got.tMax > 0.0);
    CHECK(got.tailBound <= kTq.tol);
    CHECK(got.err >= 0.0);
    CHECK(got.err < 1e-6);
}

TEST_CASE("resolvent gradient and Hessian are finite-difference consistent") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, bump_profile());
    Eigen::VectorXd x(3);
    x << 0.2, -0.1, 0.7;
    const double lambda = 1.0;
    const double eps = 1e-3;

    const Eigen::VectorXd grad = resolvent_grad(m, f, lambda, x, kTq, kSpec);
    REQUIRE(grad.size() == m.rank());
    for (int i = 0; i < m.rank(); ++i) {
        const Eigen::VectorXd d = m.unwhiten(Eigen::VectorXd::Unit(m.rank(), i));
        const double up = resolvent(m, f, lambda, x + eps * d, kTq, kSpec);
        const double dn = resolvent(m, f, lambda, x - eps * d, kTq, kSpec);
        const double fd = (up - dn) / (2.0 * eps);
        CHECK(std::abs(fd - grad(i)) <= 1e-4 * std::max(1.0, std::abs(grad(i))));
    }

    const Eigen::MatrixXd hess = resolvent_hess(m, f, lambda, x, kTq, kSpec);
    REQUIRE(hess.rows() == m.rank());
    CHECK((hess - hess.transpose()).norm() < 1e-10);
    for (int i = 0; i < m.rank(); ++i) {
        const Eigen::VectorXd d = m.unwhiten(Eigen::VectorXd::Unit(m.rank(), i));
        const Eigen::VectorXd gp = resolvent_grad(m, f, lambda, x + eps * d, kTq, kSpec);
        const Eigen::VectorXd gn = resolvent_grad(m, f, lambda, x - eps * d, kTq, kSpec);
        const Eigen::VectorXd fd = (gp - gn) / (2.0 * eps);
        for (int j = 0; j < m.rank(); ++j)
            CHECK(std::abs(fd(j) - hess(i, j)) <=
                  1e-4 * std::max(1.0, std::abs(hess(i, j))));
    }
}

TEST_CASE("mild solution: closed forms, t = 0, and Duhamel additivity") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd a(3);
    a << 1.0, -1.0, 0.5;
    Eigen::VectorXd x(3);
    x << 0.3, -0.2, 1.0;
    const double mval = a.dot(x);
    const double sigma2 = a.dot(m.matrix() * a);
    const double horizon = 1.0;
    const TimeField gZero = zero_source(m, horizon);

    // Pure data evolution of the squared linear functional.
    const ScalarField quad = make_quadratic(m, a);
    const double t = 0.7;
    const double vq = mild_solution(m, quad, gZero, t, x, kTq, kSpec);
    const double wantq =
        std::exp(-2.0 * t) * mval * mval - std::expm1(-2.0 * t) * sigma2;
    CHECK(vq == doctest::Approx(wantq).epsilon(1e-9));

    // Zero data, unit source: v(t,x) = t.
    const ScalarField zero = ScalarField::constant(m, 0.0);
    const TimeField gOne{[](double) { return 1.0; }, 1.0,
                         ScalarField::constant(m, 1.0), horizon};
    CHECK(mild_solution(m, zero, gOne, 0.9, x, kTq, kSpec) ==
          doctest::Approx(0.9).epsilon(1e-10));

    // Zero data, steady linear source: v(t,x) = (1 - e^{-t}) <a,x>.
    const TimeField gLin{[](double) { return 1.0; }, 1.0, make_linear(m, a), horizon};
    CHECK(mild_solution(m, zero, gLin, t, x, kTq, kSpec) ==
          doctest::Approx(-std::expm1(-t) * mval).epsilon(1e-9));

    // t = 0 returns the data exactly.
    Eigen::VectorXd zr(3);
    zr << 1.0, 0.5, 0.0;
    const ScalarField f = make_ridge(m, zr, bump_profile());
    CHECK(mild_solution(m, f, gZero, 0.0, x, kTq, kSpec) == f(x));

    // v[f,g] = v[f,0] + v[0,g]: the Duhamel term is linear in the source and
    // the mesh depends only on (t, tq).
    const TimeField g{[](double s) { return std::cos(s); }, 1.0,
                      make_ridge(m, zr, sin_profile(1.0)), horizon};
    const SolveScalar vf = mild_solution_err(m, f, gZero, t, x, kTq, kSpec);
    const SolveScalar vg = mild_solution_err(m, zero, g, t, x, kTq, kSpec);
    const SolveScalar vfg = mild_solution_err(m, f, g, t, x, kTq, kSpec);
    CHECK(std::abs(vfg.value - (vf.value + vg.value)) <=
          1e-12 * (1.0 + std::abs(vfg.value)));
}

TEST_CASE("mild Hessian matches closed pushforwards and an independent quadrature") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd a(3);
    a << 1.0, -1.0, 0.5;
    Eigen::VectorXd x(3);
    x << 0.3, -0.2, 1.0;
    const double t = 0.6;
    const double alpha = 0.5;
    const TimeField gZero = zero_source(m, 1.0);

    // Source-free: D2_H v(t,.) of the squared linear functional is
    // e^{-2t} * 2 w w^T in whitened coordinates.
    const ScalarField quad = make_quadratic(m, a);
    const Eigen::VectorXd w = m.whitenedImage(a);
    const Eigen::MatrixXd want0 =
        std::exp(-2.0 * t) * 2.0 * (w * w.transpose());
    const Eigen::MatrixXd got0 = mild_hess(m, quad, gZero, alpha, t, x, kTq, kSpec);
    CHECK((got0 - want0).norm() <= 1e-9 * (1.0 + want0.norm()));

    // Zero data, steady sine source: the Duhamel Hessian has the closed form
    // -int_0^t A(v) e^{-2v} sin(e^{-v} s) dv * w w^T for the ridge direction.
    Eigen::VectorXd z(3);
    z << 1.0, 0.5, 0.0;
    const TimeField g{[](double) { return 1.0; }, 1.0,
                      make_ridge(m, z, sin_profile(1.0)), 1.0};
    const ScalarField zero = ScalarField::constant(m, 0.0);
    const double s = z.dot(x);
    const double sigma2 = z.dot(m.matrix() * z);
    const IntegralResult scalarPart = integrate_adaptive(
        [&](double v) {
            const double beta2 = -std::expm1(-2.0 * v);
            return -std::exp(-0.5 * beta2 * sigma2 - 2.0 * v) *
                   std::sin(std::exp(-v) * s);
        },
        0.0, t, 1e-12, 1e-14);
    const Eigen::VectorXd wz = m.whitenedImage(z);
    const Eigen::MatrixXd want1 = scalarPart.value * (wz * wz.transpose());
    const SolveMat got1 = mild_hess_err(m, zero, g, alpha, t, x, kTq, kSpec);
    CHECK((got1.value - want1).norm() <=
          1e-7 + 10.0 * (got1.err + scalarPart.err));
    CHECK((got1.value - got1.value.transpose()).norm() < 1e-10);
}

TEST_CASE("Hessian increment split sums to the increment") {
    const CovarianceModel m = demo_model();
    const ScalarField f =
        make_ridge(m, Eigen::Vector3d::Unit(0), absclippow_profile(0.5, 1.0));
    Eigen::VectorXd x(3);
    x << 0.3, 0.2, 0.0;
    const HVector h = make_h_vector(m, Eigen::Vector2d(0.25, 0.0));
    const double lambda = 1.0;
    const double alpha = 0.4;

    const HessSplit split =
        resolvent_hess_split(m, f, lambda, alpha, x, h, kTq, kSpec);
    CHECK(split.s0 == doctest::Approx(h.hNorm * h.hNorm).epsilon(1e-15));

    const SolveMat hx = resolvent_hess_err(m, f, lambda, x, kTq, kSpec, alpha);
    const SolveMat hxh =
        resolvent_hess_err(m, f, lambda, x + h.ambient, kTq, kSpec, alpha);
    const Eigen::MatrixXd increment = hxh.value - hx.value;
    const double tol = 10.0 * (split.errA + split.errB + hx.err + hxh.err +
                               split.tailBound + hx.tailBound + hxh.tailBound) +
                       1e-8;
    CHECK((split.aPart + split.bPart - increment).norm() <= tol);
}

TEST_CASE("gradient second-difference split sums to the second difference") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, bump_profile());
    Eigen::VectorXd x(3);
    x << 0.1, -0.2, 0.4;
    const HVector h = make_h_vector(m, Eigen::Vector2d(0.2, 0.1));
    const double lambda = 1.0;

    const GradSplit split = resolvent_grad_split(m, f, lambda, x, h, kTq, kSpec);

    // Independent route: the split integrates the bounded-data c(t) kernel,
    // while resolvent_grad on this C^1 field uses the first-derivative kernel.
    const SolveVec g0 = resolvent_grad_err(m, f, lambda, x, kTq, kSpec);
    const SolveVec g1 =
        resolvent_grad_err(m, f, lambda, x + h.ambient, kTq, kSpec);
    const SolveVec g2 =
        resolvent_grad_err(m, f, lambda, x + 2.0 * h.ambient, kTq, kSpec);
    const Eigen::VectorXd second = g2.value - 2.0 * g1.value + g0.value;
    const double tol = 10.0 * (split.errA + split.errB + g0.err + 2.0 * g1.err +
                               g2.err + split.tailBound) +
                       1e-7;
    CHECK((split.aPart + split.bPart - second).norm() <= tol);
}

TEST_CASE("solver input validation") {
    const CovarianceModel m = demo_model();
    const ScalarField cusp =
        make_ridge(m, Eigen::Vector3d::Unit(0), absclippow_profile(0.5, 1.0));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(3);

    CHECK_THROWS_AS(resolvent(m, cusp, 0.0, x, kTq, kSpec), DomainError);
    CHECK_THROWS_AS(resolvent(m, cusp, 1.0, Eigen::VectorXd::Zero(2), kTq, kSpec),
                    DomainError);

    // No closed Hessian and no exponent -> refused; exponent above the
    // profile's regularity -> refused.
    CHECK_THROWS_AS(resolvent_hess(m, cusp, 1.0, x, kTq, kSpec), MissingMetadataError);
    CHECK_THROWS_AS(resolvent_hess(m, cusp, 1.0, x, kTq, kSpec, 0.7),
                    MissingMetadataError);

    const HVector h = make_h_vector(m, Eigen::Vector2d(0.1, 0.0));
    CHECK_THROWS_AS(resolvent_hess_split(m, cusp, 1.0, 1.5, x, h, kTq, kSpec),
                    DomainError);
    CHECK_THROWS_AS(
        resolvent_grad_split(m, make_linear(m, Eigen::Vector3d::Unit(0)), 1.0, x,
                             h, kTq, kSpec),
        MissingMetadataError);

    const TimeField gZero = zero_source(m, 1.0);
    CHECK_THROWS_AS(mild_solution(m, cusp, gZero, 1.5, x, kTq, kSpec), DomainError);
    CHECK_THROWS_AS(mild_hess(m, cusp, gZero, 0.5, 0.5, x, kTq, kSpec),
                    MissingMetadataError);
}
