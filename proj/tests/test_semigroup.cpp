#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "mehler/constants.hpp"
#include "mehler/covariance.hpp"
#include "mehler/errors.hpp"
#include "mehler/fields.hpp"
#include "mehler/integrator.hpp"
#include "mehler/profile.hpp"
#include "mehler/semigroup.hpp"
#include "mehler/tensor3.hpp"

using namespace mehler;

namespace {

CovarianceModel demo_model() {
    Eigen::MatrixXd Q = Eigen::Vector3d(4.0, 1.0, 0.0).asDiagonal();
    return CovarianceModel::build(Q);
}

QuadratureSpec demo_spec() {
    QuadratureSpec s;
    s.validate();
    return s;
}

// Closed form of T(t) applied to sin(omega <z,x>): the Gaussian pushforward
// damps the amplitude by exp(-omega^2 beta^2 sigma^2 / 2) and contracts the
// argument by e^{-t}.
struct SinClosed {
    double omega, sigma;
    Eigen::VectorXd z;

    double value(double t, const Eigen::VectorXd& x) const {
        const double m = z.dot(x);
        const double beta2 = -std::expm1(-2.0 * t);
        return std::sin(omega * std::exp(-t) * m) *
               std::exp(-0.5 * omega * omega * beta2 * sigma * sigma);
    }
    double dm(double t, const Eigen::VectorXd& x) const { // d/dm of value
        const double m = z.dot(x);
        const double beta2 = -std::expm1(-2.0 * t);
        return omega * std::exp(-t) * std::cos(omega * std::exp(-t) * m) *
               std::exp(-0.5 * omega * omega * beta2 * sigma * sigma);
    }
    double dm2(double t, const Eigen::VectorXd& x) const {
        const double m = z.dot(x);
        const double beta2 = -std::expm1(-2.0 * t);
        const double e = std::exp(-t);
        return -omega * omega * e * e * std::sin(omega * e * m) *
               std::exp(-0.5 * omega * omega * beta2 * sigma * sigma);
    }
};

} // namespace

TEST_CASE("Gaussian pushforward of polynomial fields matches closed moments") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    Eigen::VectorXd a(3);
    a << 1.0, -0.5, 2.0;
    const ScalarField lin = make_linear(m, a);
    const ScalarField quad = make_quadratic(m, a);
    const double s2 = a.dot(m.matrix() * a); // variance of <a, .> under gamma

    Eigen::VectorXd x(3);
    x << 1.0, 2.0, -1.0;
    for (double t : {0.05, 0.5, 1.0, 3.0}) {
        const double e = std::exp(-t);
        CHECK(apply_T(m, lin, t, x, spec) ==
              doctest::Approx(e * a.dot(x)).epsilon(1e-10));
        const double want = e * e * a.dot(x) * a.dot(x) + (1.0 - e * e) * s2;
        CHECK(apply_T(m, quad, t, x, spec) == doctest::Approx(want).epsilon(1e-10));
    }

    // Frozen spot value: a = e1, x = e1, t = 1.
    const ScalarField q1 = make_quadratic(m, Eigen::Vector3d::Unit(0));
    CHECK(apply_T(m, q1, 1.0, Eigen::Vector3d::Unit(0), spec) ==
          doctest::Approx(std::exp(-2.0) + (1.0 - std::exp(-2.0)) * 4.0)
              .epsilon(1e-12));
}

TEST_CASE("ridge reduction agrees with the generic whitened engine") {
    const CovarianceModel m = demo_model();
    QuadratureSpec spec = demo_spec();
    Eigen::VectorXd z(3);
    z << 0.5, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(1.3));
    Eigen::VectorXd x(3);
    x << -0.7, 0.4, 1.0;

    QuadratureSpec generic = spec;
    generic.forceGeneric = true;
    for (double t : {0.02, 0.6}) {
        CHECK(apply_T(m, f, t, x, spec) ==
              doctest::Approx(apply_T(m, f, t, x, generic)).epsilon(1e-9));
        const Eigen::VectorXd gr = grad_H_T(m, f, t, x, spec).whitened;
        const Eigen::VectorXd gg = grad_H_T(m, f, t, x, generic).whitened;
        CHECK((gr - gg).norm() < 1e-8 * std::max(1.0, gr.norm()));
    }
}

TEST_CASE("semigroup derivative routes agree with each other and closed forms") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    const double omega = 1.3;
    Eigen::VectorXd z(3);
    z << 0.5, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(omega));
    const SinClosed closed{omega, std::sqrt(z.dot(m.matrix() * z)), z};
    const Eigen::VectorXd w = m.whitenedImage(z);

    Eigen::VectorXd x(3);
    x << 0.4, -0.2, 5.0; // kernel component must be irrelevant to H-derivatives
    for (double t : {0.1, 0.8}) {
        CHECK(apply_T(m, f, t, x, spec) ==
              doctest::Approx(closed.value(t, x)).epsilon(1e-9));

        const Eigen::VectorXd g0 = grad_H_T(m, f, t, x, spec).whitened;
        const Eigen::VectorXd g1 = grad_H_T_c1(m, f, t, x, spec).whitened;
        const Eigen::VectorXd gWant = closed.dm(t, x) * w;
        CHECK((g0 - gWant).norm() < 1e-8 * std::max(1.0, gWant.norm()));
        CHECK((g1 - gWant).norm() < 1e-8 * std::max(1.0, gWant.norm()));

        const Eigen::MatrixXd h0 = hess_H_T(m, f, t, x, spec);
        const Eigen::MatrixXd h1 = hess_H_T_c1(m, f, t, x, spec);
        const Eigen::MatrixXd h2 = hess_H_T_c2(m, f, t, x, spec);
        const Eigen::MatrixXd hWant = closed.dm2(t, x) * w * w.transpose();
        CHECK((h0 - hWant).norm() < 1e-7 * std::max(1.0, hWant.norm()));
        CHECK((h1 - hWant).norm() < 1e-7 * std::max(1.0, hWant.norm()));
        CHECK((h2 - hWant).norm() < 1e-7 * std::max(1.0, hWant.norm()));
        CHECK((h0 - h0.transpose()).norm() < 1e-10);

        const SymTensor3 d3 = d3_H_T(m, f, t, x, spec);
        CHECK(d3.maxAsymmetry() < 1e-8);
        const SymTensor3 d3c1 = d3_H_T_c1(m, f, t, x, spec);
        CHECK(d3.maxAbsDiff(d3c1) < 1e-7 * std::max(1.0, d3.maxAbs()));
    }
}

TEST_CASE("derivative evaluators match finite differences of the level below") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    Eigen::VectorXd z(3);
    z << 1.0, -0.5, 0.0;
    const ScalarField f = make_ridge(m, z, bump_profile());
    Eigen::VectorXd x(3);
    x << 0.2, 0.1, 0.0;
    const double t = 0.5;

    const Eigen::VectorXd g = grad_H_T(m, f, t, x, spec).whitened;
    const Eigen::MatrixXd H = hess_H_T(m, f, t, x, spec);
    const double eps = 1e-4;
    for (int i = 0; i < m.rank(); ++i) {
        Eigen::VectorXd ei = Eigen::VectorXd::Zero(m.rank());
        ei(i) = 1.0;
        const Eigen::VectorXd dir = m.unwhiten(ei);
        const double fd =
            (apply_T(m, f, t, x + eps * dir, spec) -
             apply_T(m, f, t, x - eps * dir, spec)) /
            (2.0 * eps);
        CHECK(std::abs(fd - g(i)) < 1e-5 * std::max(1.0, std::abs(g(i))));
        const Eigen::VectorXd gp = grad_H_T(m, f, t, x + eps * dir, spec).whitened;
        const Eigen::VectorXd gm = grad_H_T(m, f, t, x - eps * dir, spec).whitened;
        const Eigen::VectorXd hcol = (gp - gm) / (2.0 * eps);
        CHECK((hcol - H.col(i)).norm() < 1e-4 * std::max(1.0, H.norm()));
    }
}

TEST_CASE("time-zero gates: identity for values, closed data for C1/C2 routes") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    Eigen::VectorXd z(3);
    z << 0.5, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(1.0));
    Eigen::VectorXd x(3);
    x << 0.3, -0.6, 0.9;

    CHECK(apply_T(m, f, 0.0, x, spec) == f(x));
    CHECK_THROWS_AS(apply_T(m, f, -0.1, x, spec), DomainError);
    CHECK_THROWS_AS(grad_H_T(m, f, 0.0, x, spec), DomainError);
    CHECK_THROWS_AS(hess_H_T(m, f, 0.0, x, spec), DomainError);
    CHECK_THROWS_AS(d3_H_T(m, f, 0.0, x, spec), DomainError);
    CHECK_THROWS_AS(hess_H_T_c1(m, f, 0.0, x, spec), DomainError);

    CHECK((grad_H_T_c1(m, f, 0.0, x, spec).whitened - f.hGradWhitened(x)).norm() <
          1e-14);
    CHECK((hess_H_T_c2(m, f, 0.0, x, spec) - f.hHessWhitened(x)).norm() < 1e-14);
}

TEST_CASE("C2 route requires a closed-form Hessian") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    const ScalarField f =
        make_ridge(m, Eigen::Vector3d::Unit(0), absclippow_profile(0.5, 1.0));
    CHECK_THROWS_AS(
        hess_H_T_c2(m, f, 0.5, Eigen::Vector3d::Zero(), spec),
        MissingMetadataError);
}

TEST_CASE("kernel-direction data passes through unsmoothed, range data contracts") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    const ProfilePtr phi = absclippow_profile(0.5, 1.0);
    const ScalarField fk = make_ridge(m, Eigen::Vector3d::Unit(2), phi);
    Eigen::VectorXd x(3);
    x << 1.0, -2.0, 0.37;
    for (double t : {0.2, 1.0}) {
        // gamma charges only range(Q): the third coordinate of the Mehler
        // average is the deterministic contraction e^{-t} x_3.
        CHECK(apply_T(m, fk, t, x, spec) ==
              doctest::Approx(phi->value(std::exp(-t) * x(2))).epsilon(1e-10));
    }

    // Sup contraction for a range-direction ridge, sampled on a small grid.
    const ScalarField fr = make_ridge(m, Eigen::Vector3d::Unit(0), phi);
    const double fSup = *fr.supNorm();
    for (double t : {0.1, 2.0}) {
        for (double s : {-2.0, -0.5, 0.0, 1.5}) {
            Eigen::VectorXd y = Eigen::Vector3d::Zero();
            y(0) = s;
            CHECK(std::abs(apply_T(m, fr, t, y, spec)) <= fSup * (1.0 + 1e-9));
        }
        // Gradient bound ||grad_H T(t) f|| <= c(t) ||f||_inf at a spot point.
        const double gn = grad_H_T(m, fr, t, x, spec).whitened.norm();
        CHECK(gn <= c_factor(t) * fSup * (1.0 + 1e-6));
    }
}

TEST_CASE("error-reporting variants bound the defect against closed forms") {
    const CovarianceModel m = demo_model();
    const QuadratureSpec spec = demo_spec();
    const double omega = 1.3;
    Eigen::VectorXd z(3);
    z << 0.5, 1.0, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(omega));
    const SinClosed closed{omega, std::sqrt(z.dot(m.matrix() * z)), z};
    Eigen::VectorXd x(3);
    x << 0.4, -0.2, 0.0;
    const double t = 0.37;

    const IntegralWithError v = apply_T_err(m, f, t, x, spec);
    CHECK(std::abs(v.value - closed.value(t, x)) <= v.err + 1e-9);
    const VecWithError g = grad_H_T_err(m, f, t, x, spec);
    const Eigen::VectorXd w = m.whitenedImage(z);
    CHECK((g.value - closed.dm(t, x) * w).norm() <=
          std::sqrt(double(m.rank())) * g.err + 1e-8);
}
