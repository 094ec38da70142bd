#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/errors.hpp"
#include "mehler/fields.hpp"
#include "mehler/profile.hpp"

using namespace mehler;

namespace {

CovarianceModel demo_model() {
    Eigen::MatrixXd Q = Eigen::Vector3d(4.0, 1.0, 0.0).asDiagonal();
    return CovarianceModel::build(Q);
}

// Pair-grid Hölder quotient on a lattice deliberately different from the
// oracle's own, so domination is a real statement and not a tautology.
double regrid_pair_sup(const Profile1d& phi, double alpha, double lo, double hi) {
    return holder_pair_sup([&phi](double s) { return phi.value(s); }, alpha, lo, hi,
                           977);
}

} // namespace

TEST_CASE("clipped power profile: values, metadata, cusp bookkeeping") {
    const ProfilePtr phi = absclippow_profile(0.5, 1.0);
    CHECK(phi->value(0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi->value(-4.0) == doctest::Approx(1.0).epsilon(1e-15)); // clipped
    CHECK(*phi->supNorm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*phi->holder(0.5) == doctest::Approx(1.0).epsilon(1e-12)); // M^{p-alpha}
    CHECK(*phi->holder(0.3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(phi->holder(0.7).has_value()); // alpha > p: seminorm infinite
    CHECK_FALSE(phi->isC1());
    CHECK_FALSE(phi->deriv(0.5).has_value());
    const std::vector<double> sp = phi->singularPoints();
    CHECK(std::count(sp.begin(), sp.end(), 0.0) == 1);

    const double sampled = regrid_pair_sup(*phi, 0.5, -2.0, 2.0);
    CHECK(sampled <= *phi->holder(0.5) * (1.0 + 1e-6));
    CHECK(sampled >= 0.95 * *phi->holder(0.5));
}

TEST_CASE("sine profile: derivatives and the scaled Hölder factor") {
    const double omega = 2.0;
    const ProfilePtr phi = sin_profile(omega);
    CHECK(phi->value(0.7) == doctest::Approx(std::sin(1.4)).epsilon(1e-15));
    CHECK(phi->isC1());
    CHECK(*phi->deriv(0.7) == doctest::Approx(2.0 * std::cos(1.4)).epsilon(1e-14));
    CHECK(*phi->deriv2(0.7) == doctest::Approx(-4.0 * std::sin(1.4)).epsilon(1e-14));
    CHECK(*phi->supNorm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(*phi->supDeriv() == doctest::Approx(omega).epsilon(1e-12));
    for (double alpha : {0.3, 0.5, 0.7}) {
        const double declared = *phi->holder(alpha);
        CHECK(declared == doctest::Approx(std::pow(omega, alpha) *
                                          sin_holder_factor(alpha))
                              .epsilon(1e-9));
        // The maximizing separation d <= 2*pi/omega lies inside [-4,4].
        const double sampled = regrid_pair_sup(*phi, alpha, -4.0, 4.0);
        CHECK(sampled <= declared * (1.0 + 1e-6));
        CHECK(sampled >= 0.95 * declared);
    }
}

TEST_CASE("bump profile: compact support, smoothness data, oracle domination") {
    const ProfilePtr phi = bump_profile();
    CHECK(phi->value(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi->value(1.0) == 0.0);
    CHECK(phi->value(-3.0) == 0.0);
    CHECK(*phi->deriv(1.0) == 0.0);
    CHECK(*phi->deriv(0.5) < 0.0);
    CHECK(*phi->supNorm() == doctest::Approx(1.0).epsilon(1e-15));
    for (double alpha : {0.3, 0.5, 0.7}) {
        const double declared = *phi->holder(alpha);
        const double sampled = regrid_pair_sup(*phi, alpha, -1.2, 1.2);
        CHECK(sampled <= declared * (1.0 + 1e-6));
        CHECK(sampled >= 0.95 * declared);
    }
    // Central finite difference of the closed-form derivative.
    const double eps = 1e-6;
    const double fd = (phi->value(0.4 + eps) - phi->value(0.4 - eps)) / (2.0 * eps);
    CHECK(fd == doctest::Approx(*phi->deriv(0.4)).epsilon(1e-7));
    const double fd2 =
        (*phi->deriv(0.4 + eps) - *phi->deriv(0.4 - eps)) / (2.0 * eps);
    CHECK(fd2 == doctest::Approx(*phi->deriv2(0.4)).epsilon(1e-6));
}

TEST_CASE("tabulated profile interpolates its source and clamps outside") {
    const double lo = -3.0, hi = 3.0;
    const int n = 601;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i)
        vals[i] = std::sin(lo + (hi - lo) * i / (n - 1));
    const ProfilePtr phi = numeric_profile("tab", lo, hi, vals);
    for (double s : {-2.7, -0.9, 0.123, 1.77, 2.93})
        CHECK(phi->value(s) == doctest::Approx(std::sin(s)).epsilon(1e-7));
    CHECK(phi->value(5.0) == doctest::Approx(std::sin(hi)).epsilon(1e-12));
    CHECK(phi->value(-9.0) == doctest::Approx(std::sin(lo)).epsilon(1e-12));
}

TEST_CASE("interval maximizer and pair-sup witness agree with brute force") {
    const double got = max_on_interval(
        [](double s) { return 2.0 - (s - 0.3) * (s - 0.3); }, -1.0, 1.0);
    CHECK(got == doctest::Approx(2.0).epsilon(1e-10));

    auto phi = [](double s) { return std::sin(s); };
    const PairSupResult r = holder_pair_sup_arg(phi, 0.5, -4.0, 4.0);
    CHECK(r.value == doctest::Approx(holder_pair_sup(phi, 0.5, -4.0, 4.0)).epsilon(1e-12));
    const double quot = std::abs(phi(r.s1) - phi(r.s2)) /
                        std::pow(std::abs(r.s1 - r.s2), 0.5);
    CHECK(quot == doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("ridge fields scale profile metadata by sigma powers") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 1.0, 0.0; // sigma = |Q^{1/2} z| = sqrt(5)
    const double sigma = std::sqrt(5.0);
    const ScalarField f = make_ridge(m, z, sin_profile(1.0));
    CHECK_FALSE(f.formulaOnly());
    REQUIRE(f.ridge() != nullptr);
    CHECK(f.ridge()->sigma == doctest::Approx(sigma).epsilon(1e-12));
    CHECK(*f.supNorm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(*f.supHGrad() == doctest::Approx(sigma).epsilon(1e-9));
    for (double alpha : {0.3, 0.7}) {
        CHECK(*f.exactHolder(alpha) ==
              doctest::Approx(std::pow(sigma, alpha) * sin_holder_factor(alpha))
                  .epsilon(1e-9));
    }

    Eigen::VectorXd x(3);
    x << 0.4, -1.1, 2.0;
    CHECK(f(x) == doctest::Approx(std::sin(z.dot(x))).epsilon(1e-14));

    // H-gradient in whitened coordinates vs finite differences along
    // unwhitened basis directions.
    REQUIRE(f.hasHGradient());
    const Eigen::VectorXd g = f.hGradWhitened(x);
    REQUIRE(g.size() == m.rank());
    const double eps = 1e-5;
    for (int i = 0; i < m.rank(); ++i) {
        Eigen::VectorXd ei = Eigen::VectorXd::Zero(m.rank());
        ei(i) = 1.0;
        const Eigen::VectorXd dir = m.unwhiten(ei);
        const double fd = (f(x + eps * dir) - f(x - eps * dir)) / (2.0 * eps);
        CHECK(fd == doctest::Approx(g(i)).epsilon(1e-6));
    }

    REQUIRE(f.hasHHessian());
    const Eigen::MatrixXd Hh = f.hHessWhitened(x);
    CHECK((Hh - Hh.transpose()).norm() < 1e-12);

    CHECK_THROWS_AS(make_ridge(m, Eigen::VectorXd::Zero(3), sin_profile(1.0)),
                    SpecInvalidError);
}

TEST_CASE("kernel-direction ridge is H-invariant with vanishing H-derivatives") {
    const CovarianceModel m = demo_model();
    const Eigen::VectorXd e3 = Eigen::Vector3d::Unit(2); // ker(Q)
    const ScalarField f = make_ridge(m, e3, sin_profile(1.0));
    CHECK(f.ridge()->sigma == doctest::Approx(0.0).epsilon(1e-14));
    Eigen::VectorXd x(3);
    x << 0.3, 0.8, -0.5;
    Eigen::VectorXd z2(2);
    z2 << 1.5, -0.7;
    const HVector h = make_h_vector(m, z2);
    CHECK(f(x + h.ambient) == f(x)); // translation along H does nothing
    CHECK(f.hGradWhitened(x).norm() == 0.0);
    CHECK(*f.exactHolder(0.5) == 0.0);
    CHECK(*f.supHGrad() == 0.0);
}

TEST_CASE("formula-mode polynomial fields carry closed-form H-derivatives") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd a(3);
    a << 0.5, -1.0, 2.0; // the kernel component must not contribute to H-data
    const ScalarField lin = make_linear(m, a);
    const ScalarField quad = make_quadratic(m, a);
    CHECK(lin.formulaOnly());
    CHECK(quad.formulaOnly());
    CHECK_FALSE(lin.supNorm().has_value());

    Eigen::VectorXd x(3);
    x << 1.0, 2.0, -1.0;
    CHECK(lin(x) == doctest::Approx(a.dot(x)).epsilon(1e-14));
    CHECK(quad(x) == doctest::Approx(a.dot(x) * a.dot(x)).epsilon(1e-14));

    const Eigen::VectorXd w = m.whitenedImage(a);
    CHECK((lin.hGradWhitened(x) - w).norm() < 1e-12);
    CHECK((quad.hGradWhitened(x) - 2.0 * a.dot(x) * w).norm() < 1e-12);
    const Eigen::MatrixXd wwt = 2.0 * w * w.transpose();
    CHECK((quad.hHessWhitened(x) - wwt).norm() < 1e-12);
}

TEST_CASE("constant, product, and scaled fields propagate metadata") {
    const CovarianceModel m = demo_model();
    const ScalarField c = ScalarField::constant(m, -2.5);
    CHECK(*c.supNorm() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(*c.exactHolder(0.5) == 0.0);
    CHECK(c.hGradWhitened(Eigen::Vector3d::Zero()).norm() == 0.0);

    const ScalarField s = make_ridge(m, Eigen::Vector3d::Unit(0), sin_profile(1.0));
    const ScalarField prod = make_product(s, c);
    CHECK(*prod.supNorm() == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_FALSE(prod.exactHolder(0.5).has_value()); // unknown by contract

    const ScalarField k = s.scaled(-2.0);
    Eigen::VectorXd x(3);
    x << 0.7, 0.0, 0.0;
    CHECK(k(x) == doctest::Approx(-2.0 * s(x)).epsilon(1e-14));
    CHECK(*k.supNorm() == doctest::Approx(2.0 * *s.supNorm()).epsilon(1e-12));
    CHECK(*k.exactHolder(0.5) ==
          doctest::Approx(2.0 * *s.exactHolder(0.5)).epsilon(1e-12));
    CHECK(*k.supHGrad() == doctest::Approx(2.0 * *s.supHGrad()).epsilon(1e-12));
    CHECK((k.hGradWhitened(x) + 2.0 * s.hGradWhitened(x)).norm() < 1e-12);

    const TimeField g{[](double t) { return std::cos(t); }, 1.0, s, 2.0};
    CHECK(g.at(0.5)(x) == doctest::Approx(std::cos(0.5) * s(x)).epsilon(1e-13));
}
