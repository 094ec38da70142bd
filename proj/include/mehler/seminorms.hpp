#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"

namespace mehler {

// Empirical H-Hölder and H-Zygmund seminorm estimation over a finite design
// of base points, H-directions and scales. Every estimate is the maximum of
// difference quotients over the design, hence a LOWER bound on the true
// supremum: inequality suites therefore put these on the left-hand side only,
// with exact metadata or derived constants on the right.
struct SampleDesign {
    std::vector<Eigen::VectorXd> basePoints; // ambient points
    std::vector<Eigen::VectorXd> directions; // whitened H-coordinates
    std::vector<double> ladder;              // strictly decreasing scales
    std::uint64_t seed = 42;

    // Base points: the origin, +/-2 x (unwhitened basis) anchors, then draws
    // from the model's Gaussian measure. Directions: the whitened basis, then
    // random unit vectors. Ladder: 2^{-m0} down to 2^{-m1}.
    static SampleDesign make(const CovarianceModel& model, int nBase, int nDirs,
                             int ladderM0, int ladderM1, std::uint64_t seed);

    void validate(const CovarianceModel& model) const; // SpecInvalidError
};

enum class SeminormFlavor { Holder, Zygmund, OperatorHolder };

struct SeminormWitness {
    Eigen::VectorXd x; // ambient base point
    HVector h;         // attaining displacement
};

// value = max quotient over the design; the witness reproduces it exactly.
struct SeminormEstimate {
    double value = 0.0;
    SeminormWitness witness;
    SeminormFlavor flavor = SeminormFlavor::Holder;
    double alpha = 0.0; // exponent for the Hölder flavors, unused for Zygmund
};

using ScalarMap = std::function<double(const Eigen::VectorXd&)>;
using VecMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatMap = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// max |F(x+h) - F(x)| / |h|_H^alpha over the design.
SeminormEstimate holder_est_scalar(const CovarianceModel& model, const ScalarMap& F,
                                   double alpha, const SampleDesign& design);

// Same with Euclidean norm of whitened H-vector values.
SeminormEstimate holder_est_vec(const CovarianceModel& model, const VecMap& F,
                                double alpha, const SampleDesign& design);

// Same with the symmetric operator norm of r x r values.
SeminormEstimate holder_est_mat(const CovarianceModel& model, const MatMap& F,
                                double alpha, const SampleDesign& design);

// max |F(x+2h) - 2F(x+h) + F(x)| / |h|_H over the design (second differences;
// dyadic ladders reuse F(x+2h) from the next-coarser rung).
SeminormEstimate zygmund_est(const CovarianceModel& model, const VecMap& F,
                             const SampleDesign& design);

// Components of the C^{2+alpha}_H norm of a field with derivative evaluators:
// suprema of |u|, |grad_H u|_H, ||D2_H u|| over the base points plus the
// Hölder estimate of D2_H u over the full design.
struct C2AlphaNorm {
    double supValue = 0.0;
    double supGrad = 0.0;
    double supHess = 0.0;
    SeminormEstimate hessHolder;
    double total = 0.0; // sum of the four components
};

C2AlphaNorm c2alpha_norm_est(const CovarianceModel& model, const ScalarMap& value,
                             const VecMap& grad, const MatMap& hess, double alpha,
                             const SampleDesign& design);

} // namespace mehler
