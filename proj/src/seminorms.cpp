#include "mehler/seminorms.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "mehler/errors.hpp"
#include "mehler/rng.hpp"

namespace mehler {

SampleDesign SampleDesign::make(const CovarianceModel& model, int nBase, int nDirs,
                                int ladderM0, int ladderM1, std::uint64_t seed) {
    if (nBase < 1 || nDirs < 1)
        throw SpecInvalidError("SampleDesign: counts must be positive");
    if (ladderM1 < ladderM0)
        throw SpecInvalidError("SampleDesign: ladder range must be nondecreasing in m");
    const int r = model.rank();
    if (r < 1) throw SpecInvalidError("SampleDesign: model has trivial range");

    SampleDesign d;
    d.seed = seed;

    d.basePoints.push_back(Eigen::VectorXd::Zero(model.dim()));
    for (int i = 0; i < r && static_cast<int>(d.basePoints.size()) < nBase; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(r);
        e(i) = 1.0;
        const Eigen::VectorXd u = model.unwhiten(e);
        d.basePoints.push_back(2.0 * u);
        if (static_cast<int>(d.basePoints.size()) < nBase) d.basePoints.push_back(-2.0 * u);
    }
    UniformStream bs(seed, "design-base");
    while (static_cast<int>(d.basePoints.size()) < nBase) {
        Eigen::VectorXd xi(r);
        for (int i = 0; i < r; ++i) xi(i) = normal_quantile(bs.next());
        d.basePoints.push_back(model.unwhiten(xi));
    }

    for (int i = 0; i < r && static_cast<int>(d.directions.size()) < nDirs; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(r);
        e(i) = 1.0;
        d.directions.push_back(e);
    }
    UniformStream ds(seed, "design-dirs");
    while (static_cast<int>(d.directions.size()) < nDirs) {
        Eigen::VectorXd v(r);
        for (int i = 0; i < r; ++i) v(i) = normal_quantile(ds.next());
        const double n = v.norm();
        if (n > 1e-12) d.directions.push_back(v / n);
    }

    for (int m = ladderM0; m <= ladderM1; ++m) d.ladder.push_back(std::pow(2.0, -m));
    return d;
}

void SampleDesign::validate(const CovarianceModel& model) const {
    if (basePoints.empty() || directions.empty() || ladder.empty())
        throw SpecInvalidError("SampleDesign: empty component");
    for (const auto& x : basePoints)
        if (x.size() != model.dim())
            throw SpecInvalidError("SampleDesign: base point dimension mismatch");
    for (const auto& dir : directions) {
        if (dir.size() != model.rank())
            throw SpecInvalidError("SampleDesign: direction must use whitened coordinates");
        if (!(dir.norm() > 0.0))
            throw SpecInvalidError("SampleDesign: zero direction");
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double s : ladder) {
        if (!(s > 0.0) || !(s < prev))
            throw SpecInvalidError("SampleDesign: ladder must be strictly decreasing and positive");
        prev = s;
    }
}

namespace {

double target_norm(double v) { return std::abs(v); }
double target_norm(const Eigen::VectorXd& v) { return v.norm(); }
double target_norm(const Eigen::MatrixXd& m) {
    // Values are symmetric by construction; the operator norm is the largest
    // absolute eigenvalue.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

template <class T>
SeminormEstimate holder_core(const CovarianceModel& model,
                             const std::function<T(const Eigen::VectorXd&)>& F,
                             double alpha, const SampleDesign& design,
                             SeminormFlavor flavor) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("holder_est: exponent must lie in (0,1)");
    design.validate(model);
    SeminormEstimate best;
    best.value = -1.0;
    best.flavor = flavor;
    best.alpha = alpha;
    for (const auto& x : design.basePoints) {
        const T f0 = F(x);
        for (const auto& dir : design.directions) {
            for (double s : design.ladder) {
                const HVector h = make_h_vector(model, s * dir);
                const T fh = F(x + h.ambient);
                const double q = target_norm(static_cast<T>(fh - f0)) /
                                 std::pow(h.hNorm, alpha);
                if (q > best.value) {
                    best.value = q;
                    best.witness = {x, h};
                }
            }
        }
    }
    return best;
}

} // namespace

SeminormEstimate holder_est_scalar(const CovarianceModel& model, const ScalarMap& F,
                                   double alpha, const SampleDesign& design) {
    return holder_core<double>(model, F, alpha, design, SeminormFlavor::Holder);
}

SeminormEstimate holder_est_vec(const CovarianceModel& model, const VecMap& F,
                                double alpha, const SampleDesign& design) {
    return holder_core<Eigen::VectorXd>(model, F, alpha, design, SeminormFlavor::Holder);
}

SeminormEstimate holder_est_mat(const CovarianceModel& model, const MatMap& F,
                                double alpha, const SampleDesign& design) {
    return holder_core<Eigen::MatrixXd>(model, F, alpha, design,
                                        SeminormFlavor::OperatorHolder);
}

SeminormEstimate zygmund_est(const CovarianceModel& model, const VecMap& F,
                             const SampleDesign& design) {
    design.validate(model);
    SeminormEstimate best;
    best.value = -1.0;
    best.flavor = SeminormFlavor::Zygmund;
    const std::size_t nl = design.ladder.size();
    std::vector<Eigen::VectorXd> atScale(nl);
    for (const auto& x : design.basePoints) {
        const Eigen::VectorXd f0 = F(x);
        for (const auto& dir : design.directions) {
            for (std::size_t m = 0; m < nl; ++m) {
                const HVector h = make_h_vector(model, design.ladder[m] * dir);
                atScale[m] = F(x + h.ambient);
            }
            for (std::size_t m = 0; m < nl; ++m) {
                const double s = design.ladder[m];
                const HVector h = make_h_vector(model, s * dir);
                Eigen::VectorXd f2h;
                if (m > 0 && design.ladder[m - 1] == 2.0 * s) {
                    f2h = atScale[m - 1]; // dyadic rung above is exactly x + 2h
                } else {
                    f2h = F(x + 2.0 * h.ambient);
                }
                const double q = (f2h - 2.0 * atScale[m] + f0).norm() / h.hNorm;
                if (q > best.value) {
                    best.value = q;
                    best.witness = {x, h};
                }
            }
        }
    }
    return best;
}

C2AlphaNorm c2alpha_norm_est(const CovarianceModel& model, const ScalarMap& value,
                             const VecMap& grad, const MatMap& hess, double alpha,
                             const SampleDesign& design) {
    design.validate(model);
    C2AlphaNorm out;
    for (const auto& x : design.basePoints) {
        out.supValue = std::max(out.supValue, std::abs(value(x)));
        out.supGrad = std::max(out.supGrad, grad(x).norm());
        out.supHess = std::max(out.supHess, target_norm(hess(x)));
    }
    out.hessHolder = holder_est_mat(model, hess, alpha, design);
    out.total = out.supValue + out.supGrad + out.supHess + out.hessHolder.value;
    return out;
}

} // namespace mehler
