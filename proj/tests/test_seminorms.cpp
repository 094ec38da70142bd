#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/errors.hpp"
#include "mehler/fields.hpp"
#include "mehler/profile.hpp"
#include "mehler/seminorms.hpp"

using namespace mehler;

namespace {

CovarianceModel demo_model() {
    Eigen::MatrixXd Q = Eigen::Vector3d(4.0, 1.0, 0.0).asDiagonal();
    return CovarianceModel::build(Q);
}

} // namespace

TEST_CASE("sample design: anchors, whitened directions, dyadic ladder") {
    const CovarianceModel m = demo_model();
    const SampleDesign d = SampleDesign::make(m, 8, 4, 0, 5, 42);
    REQUIRE(d.basePoints.size() == 8);
    REQUIRE(d.directions.size() == 4);
    REQUIRE(d.ladder.size() == 6);
    CHECK(d.basePoints[0].norm() == 0.0); // origin anchor
    for (std::size_t i = 0; i + 1 < d.ladder.size(); ++i)
        CHECK(d.ladder[i + 1] == doctest::Approx(0.5 * d.ladder[i]).epsilon(1e-15));
    CHECK(d.ladder[0] == doctest::Approx(1.0).epsilon(1e-15));
    for (const Eigen::VectorXd& dir : d.directions) {
        CHECK(dir.size() == m.rank());
        CHECK(dir.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    d.validate(m);

    // Same seed, larger design: the smaller one is a prefix (monotone
    // refinement of the estimates relies on this).
    const SampleDesign big = SampleDesign::make(m, 16, 6, 0, 7, 42);
    for (std::size_t i = 0; i < d.basePoints.size(); ++i)
        CHECK((big.basePoints[i] - d.basePoints[i]).norm() == 0.0);
    for (std::size_t i = 0; i < d.directions.size(); ++i)
        CHECK((big.directions[i] - d.directions[i]).norm() == 0.0);
}

TEST_CASE("Hölder estimate: witness reproduces the value, metadata dominates") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 0.5, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(1.0));
    const SampleDesign d = SampleDesign::make(m, 16, 4, 0, 5, 42);
    const double alpha = 0.5;

    auto F = [&f](const Eigen::VectorXd& x) { return f(x); };
    const SeminormEstimate est = holder_est_scalar(m, F, alpha, d);
    CHECK(est.value > 0.0);
    CHECK(est.alpha == alpha);

    const double recomputed =
        std::abs(f(est.witness.x + est.witness.h.ambient) - f(est.witness.x)) /
        std::pow(est.witness.h.hNorm, alpha);
    CHECK(recomputed == doctest::Approx(est.value).epsilon(1e-12));

    // Declared seminorm dominates every sampled quotient.
    CHECK(est.value <= *f.exactHolder(alpha) * (1.0 + 1e-9));
}

TEST_CASE("estimates grow monotonically under design refinement") {
    const CovarianceModel m = demo_model();
    const ScalarField f =
        make_ridge(m, Eigen::Vector3d::Unit(0), absclippow_profile(0.5, 1.0));
    auto F = [&f](const Eigen::VectorXd& x) { return f(x); };
    const double alpha = 0.3;

    double prev = -1.0;
    for (int nBase : {4, 8, 16}) {
        const SampleDesign d = SampleDesign::make(m, nBase, 3, 0, 4, 42);
        const double v = holder_est_scalar(m, F, alpha, d).value;
        CHECK(v >= prev);
        prev = v;
    }
    const SampleDesign deeper = SampleDesign::make(m, 16, 3, 0, 6, 42);
    CHECK(holder_est_scalar(m, F, alpha, deeper).value >= prev);
}

TEST_CASE("estimator reaches the declared seminorm on the cusp field") {
    const CovarianceModel m = demo_model();
    const ScalarField f =
        make_ridge(m, Eigen::Vector3d::Unit(0), absclippow_profile(0.5, 1.0));
    auto F = [&f](const Eigen::VectorXd& x) { return f(x); };
    const SampleDesign d = SampleDesign::make(m, 32, 4, 0, 5, 42);
    const double alpha = 0.5; // alpha = p: quotient 1 attained flat into the cusp
    const SeminormEstimate est = holder_est_scalar(m, F, alpha, d);
    const double declared = *f.exactHolder(alpha);
    CHECK(est.value <= declared * (1.0 + 1e-9));
    CHECK(est.value >= 0.95 * declared);
}

TEST_CASE("estimates scale linearly with the map") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 0.7, -0.4, 0.0;
    const ScalarField f = make_ridge(m, z, bump_profile());
    const SampleDesign d = SampleDesign::make(m, 12, 3, 0, 4, 7);
    const double alpha = 0.7;
    auto F1 = [&f](const Eigen::VectorXd& x) { return f(x); };
    auto F3 = [&f](const Eigen::VectorXd& x) { return 3.0 * f(x); };
    const SeminormEstimate e1 = holder_est_scalar(m, F1, alpha, d);
    const SeminormEstimate e3 = holder_est_scalar(m, F3, alpha, d);
    CHECK(e3.value == doctest::Approx(3.0 * e1.value).epsilon(1e-12));
    CHECK((e3.witness.x - e1.witness.x).norm() == 0.0);
}

TEST_CASE("vector and matrix flavors: witnesses recompute, trivial cases vanish") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd a(3);
    a << 1.0, -0.5, 0.0;
    const ScalarField quad = make_quadratic(m, a);
    const SampleDesign d = SampleDesign::make(m, 12, 3, 0, 4, 42);

    // grad_H of the quadratic is affine in x: second differences vanish.
    auto gradMap = [&quad](const Eigen::VectorXd& x) {
        return quad.hGradWhitened(x);
    };
    const SeminormEstimate zyg = zygmund_est(m, gradMap, d);
    CHECK(zyg.value < 1e-11);
    CHECK(zyg.flavor == SeminormFlavor::Zygmund);

    // Constant matrix map: operator-norm Hölder estimate is exactly zero.
    auto hessMap = [&quad](const Eigen::VectorXd& x) {
        return quad.hHessWhitened(x);
    };
    const SeminormEstimate hh = holder_est_mat(m, hessMap, 0.5, d);
    CHECK(hh.value < 1e-12);

    // Vector flavor on a genuinely varying map: witness recomputes.
    Eigen::VectorXd z(3);
    z << 1.0, 1.0, 0.0;
    const ScalarField s = make_ridge(m, z, sin_profile(1.0));
    auto vecMap = [&s](const Eigen::VectorXd& x) { return s.hGradWhitened(x); };
    const SeminormEstimate ev = holder_est_vec(m, vecMap, 0.5, d);
    const double recomputed =
        (s.hGradWhitened(ev.witness.x + ev.witness.h.ambient) -
         s.hGradWhitened(ev.witness.x))
            .norm() /
        std::pow(ev.witness.h.hNorm, 0.5);
    CHECK(recomputed == doctest::Approx(ev.value).epsilon(1e-12));
    CHECK(ev.value <= *s.gradHolder(0.5) * (1.0 + 1e-9));

    // Zygmund estimate of a bounded-derivative map is controlled by twice the
    // Hessian sup over the segment; crude domination via declared data.
    const SeminormEstimate zs = zygmund_est(m, vecMap, d);
    CHECK(zs.value <= 2.0 * *s.supHHess() * (1.0 + 1e-9));
}

TEST_CASE("composite second-order norm assembles its four components") {
    const CovarianceModel m = demo_model();
    Eigen::VectorXd z(3);
    z << 1.0, 0.0, 0.0;
    const ScalarField f = make_ridge(m, z, sin_profile(1.0));
    const SampleDesign d = SampleDesign::make(m, 10, 3, 0, 4, 42);
    auto value = [&f](const Eigen::VectorXd& x) { return f(x); };
    auto grad = [&f](const Eigen::VectorXd& x) { return f.hGradWhitened(x); };
    auto hess = [&f](const Eigen::VectorXd& x) { return f.hHessWhitened(x); };
    const C2AlphaNorm n = c2alpha_norm_est(m, value, grad, hess, 0.5, d);
    CHECK(n.total == doctest::Approx(n.supValue + n.supGrad + n.supHess +
                                     n.hessHolder.value)
                         .epsilon(1e-12));
    CHECK(n.supValue <= *f.supNorm() * (1.0 + 1e-9));
    CHECK(n.supGrad <= *f.supHGrad() * (1.0 + 1e-9));
    CHECK(n.supHess <= *f.supHHess() * (1.0 + 1e-9));
    CHECK(n.hessHolder.value <= *f.hessHolder(0.5) * (1.0 + 1e-9));
    CHECK(n.supValue > 0.5); // sine reaches most of its sup on the anchors
}

TEST_CASE("design validation rejects inconsistent inputs") {
    const CovarianceModel m = demo_model();
    SampleDesign d = SampleDesign::make(m, 4, 2, 0, 3, 42);
    d.ladder = {0.25, 0.5}; // not decreasing
    CHECK_THROWS_AS(d.validate(m), SpecInvalidError);
    SampleDesign d2 = SampleDesign::make(m, 4, 2, 0, 3, 42);
    d2.directions[0] = Eigen::Vector2d(1.0, 1.0); // not unit
    CHECK_THROWS_AS(d2.validate(m), SpecInvalidError);
}
