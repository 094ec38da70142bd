#pragma once

#include <memory>

#include <Eigen/Dense>

namespace mehler {

// Spectral model of a positive-semidefinite covariance Q on R^n. Eigenvalues
// are sorted descending; the rank r counts eigenvalues above a relative zero
// threshold. The Cameron-Martin space H = Q^{1/2}(R^n) carries the norm
// |Q^{-1/2} h|, expressed below through whitened coordinates.
class CovarianceModel {
public:
    // Throws NotSymmetricError if Q deviates from symmetry beyond symTol;
    // clamps eigenvalues in [-negTol, 0) to 0 and throws
    // NegativeEigenvalueError below -negTol.
    static CovarianceModel build(const Eigen::MatrixXd& Q,
                                 double zeroThresholdRel = 1e-12,
                                 double symTol = 1e-10,
                                 double negTol = 1e-10);

    int dim() const;
    int rank() const;
    const Eigen::VectorXd& eigenvalues() const;  // descending, size n
    const Eigen::MatrixXd& basis() const;        // columns = eigenvectors, size n x n
    Eigen::MatrixXd matrix() const;              // reconstructed Q

    // z in R^r -> h = Q^{1/2} z in the eigenbasis sense (whitened -> ambient).
    Eigen::VectorXd unwhiten(const Eigen::VectorXd& z) const;
    // x in R^n -> whitened coordinates of its range(Q) part, in R^r.
    Eigen::VectorXd whiten(const Eigen::VectorXd& x) const;
    Eigen::VectorXd projectRange(const Eigen::VectorXd& x) const;
    double rangeResidual(const Eigen::VectorXd& x) const;

    // Whitened image of the H-vector Q z for an ambient direction z:
    // w_i = sqrt(lambda_i) <v_i, z>. |w| = |Q^{1/2} z|.
    Eigen::VectorXd whitenedImage(const Eigen::VectorXd& z) const;

    bool sameModel(const CovarianceModel& other) const { return impl_ == other.impl_; }
    const void* identity() const { return impl_.get(); }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit CovarianceModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

CovarianceModel build_covariance(const Eigen::MatrixXd& Q, double zeroThresholdRel = 1e-12);

// An element h of H with its whitened coordinates z (h = Q^{1/2} z) and
// hNorm = |z|. The paired functional hhat has law N(0, hNorm^2) under gamma.
struct HVector {
    Eigen::VectorXd ambient;
    Eigen::VectorXd whitened;
    double hNorm = 0.0;
};

HVector make_h_vector(const CovarianceModel& model, const Eigen::VectorXd& z);

// Throws OutOfCameronMartinError when h has a component outside range(Q^{1/2})
// exceeding relTol * |h|.
HVector h_vector_from_ambient(const CovarianceModel& model, const Eigen::VectorXd& h,
                              double relTol = 1e-10);

// hhat(x) = <z, whitened(x)>; x is projected onto range(Q) first (gamma-a.e.
// legitimate since gamma is supported there).
double hhat_eval(const CovarianceModel& model, const HVector& h, const Eigen::VectorXd& x);

} // namespace mehler
