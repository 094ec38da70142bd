#include "mehler/covariance.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mehler/errors.hpp"

namespace mehler {

struct CovarianceModel::Impl {
    int n = 0;
    int rank = 0;
    Eigen::VectorXd eigenvalues; // descending
    Eigen::MatrixXd basis;       // columns
    Eigen::VectorXd sqrtEigs;    // sqrt of the first `rank` eigenvalues
};

CovarianceModel CovarianceModel::build(const Eigen::MatrixXd& Q,
                                       double zeroThresholdRel,
                                       double symTol, double negTol) {
    if (Q.rows() != Q.cols() || Q.rows() == 0) {
        throw SpecInvalidError("build_covariance: matrix must be square and nonempty");
    }
    const double symErr = (Q - Q.transpose()).cwiseAbs().maxCoeff();
    if (symErr > symTol) {
        throw NotSymmetricError("build_covariance: asymmetry " + std::to_string(symErr) +
                                " exceeds tolerance");
    }
    const Eigen::MatrixXd S = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const int n = static_cast<int>(Q.rows());

    auto impl = std::make_shared<Impl>();
    impl->n = n;
    impl->eigenvalues.resize(n);
    impl->basis.resize(n, n);
    // Eigen returns ascending order; store descending.
    for (int i = 0; i < n; ++i) {
        impl->eigenvalues(i) = es.eigenvalues()(n - 1 - i);
        impl->basis.col(i) = es.eigenvectors().col(n - 1 - i);
        // Canonical sign: make the largest-magnitude component positive.
        int arg = 0;
        impl->basis.col(i).cwiseAbs().maxCoeff(&arg);
        if (impl->basis(arg, i) < 0.0) impl->basis.col(i) = -impl->basis.col(i);
    }
    for (int i = 0; i < n; ++i) {
        if (impl->eigenvalues(i) < -negTol) {
            throw NegativeEigenvalueError("build_covariance: eigenvalue " +
                                          std::to_string(impl->eigenvalues(i)) +
                                          " below -" + std::to_string(negTol));
        }
        if (impl->eigenvalues(i) < 0.0) impl->eigenvalues(i) = 0.0;
    }
    const double lmax = impl->eigenvalues(0);
    const double zeroAbs = zeroThresholdRel * std::max(lmax, 0.0);
    int r = 0;
    while (r < n && impl->eigenvalues(r) > zeroAbs) ++r;
    impl->rank = r;
    for (int i = r; i < n; ++i) impl->eigenvalues(i) = 0.0;
    impl->sqrtEigs.resize(r);
    for (int i = 0; i < r; ++i) impl->sqrtEigs(i) = std::sqrt(impl->eigenvalues(i));
    return CovarianceModel(std::move(impl));
}

int CovarianceModel::dim() const { return impl_->n; }
int CovarianceModel::rank() const { return impl_->rank; }
const Eigen::VectorXd& CovarianceModel::eigenvalues() const { return impl_->eigenvalues; }
const Eigen::MatrixXd& CovarianceModel::basis() const { return impl_->basis; }

Eigen::MatrixXd CovarianceModel::matrix() const {
    return impl_->basis * impl_->eigenvalues.asDiagonal() * impl_->basis.transpose();
}

Eigen::VectorXd CovarianceModel::unwhiten(const Eigen::VectorXd& z) const {
    const int r = impl_->rank;
    if (z.size() != r) throw DomainError("unwhiten: expected vector of size rank");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(impl_->n);
    for (int i = 0; i < r; ++i) x += impl_->sqrtEigs(i) * z(i) * impl_->basis.col(i);
    return x;
}

Eigen::VectorXd CovarianceModel::whiten(const Eigen::VectorXd& x) const {
    const int r = impl_->rank;
    Eigen::VectorXd z(r);
    for (int i = 0; i < r; ++i) z(i) = impl_->basis.col(i).dot(x) / impl_->sqrtEigs(i);
    return z;
}

Eigen::VectorXd CovarianceModel::projectRange(const Eigen::VectorXd& x) const {
    const int r = impl_->rank;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(impl_->n);
    for (int i = 0; i < r; ++i) p += impl_->basis.col(i).dot(x) * impl_->basis.col(i);
    return p;
}

double CovarianceModel::rangeResidual(const Eigen::VectorXd& x) const {
    return (x - projectRange(x)).norm();
}

Eigen::VectorXd CovarianceModel::whitenedImage(const Eigen::VectorXd& z) const {
    const int r = impl_->rank;
    Eigen::VectorXd w(r);
    for (int i = 0; i < r; ++i) w(i) = impl_->sqrtEigs(i) * impl_->basis.col(i).dot(z);
    return w;
}

CovarianceModel build_covariance(const Eigen::MatrixXd& Q, double zeroThresholdRel) {
    return CovarianceModel::build(Q, zeroThresholdRel);
}

HVector make_h_vector(const CovarianceModel& model, const Eigen::VectorXd& z) {
    if (z.size() != model.rank()) {
        throw DomainError("make_h_vector: whitened coordinates must have size rank");
    }
    HVector h;
    h.whitened = z;
    h.ambient = model.unwhiten(z);
    h.hNorm = z.norm();
    return h;
}

HVector h_vector_from_ambient(const CovarianceModel& model, const Eigen::VectorXd& h,
                              double relTol) {
    const double res = model.rangeResidual(h);
    const double scale = h.norm();
    if (scale > 0.0 && res > relTol * scale) {
        throw OutOfCameronMartinError(
            "h_vector_from_ambient: component outside range(Q^{1/2}) (relative residual " +
            std::to_string(res / scale) + ")");
    }
    HVector out;
    out.whitened = model.whiten(h);
    out.ambient = model.unwhiten(out.whitened);
    out.hNorm = out.whitened.norm();
    return out;
}

double hhat_eval(const CovarianceModel& model, const HVector& h, const Eigen::VectorXd& x) {
    return h.whitened.dot(model.whiten(x));
}

} // namespace mehler
