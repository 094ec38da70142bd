#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"

namespace mehler {

enum class QuadratureEngine { Auto, TensorGaussHermite, Sobol, MonteCarlo };

// Configuration for integrals against the Gaussian measure. With engine Auto
// the choice is: tensor Gauss-Hermite when rank <= ghMaxDims, Sobol (inverse
// CDF) when rank <= 13, seeded Monte Carlo otherwise.
struct QuadratureSpec {
    int ghOrder = 40;
    int ghMaxDims = 4;
    int samples = 1 << 16;
    std::uint64_t seed = 42;
    QuadratureEngine engine = QuadratureEngine::Auto;
    // Disables dimension-reduction shortcuts in the semigroup evaluators so
    // the generic tensor/QMC path can be cross-validated against them.
    bool forceGeneric = false;

    void validate() const; // throws SpecInvalidError
};

QuadratureEngine resolve_engine(const QuadratureSpec& spec, int rank);

// Integrates g over N(0, I_r) in whitened coordinates (vector size = rank).
double integrate_whitened(const CovarianceModel& model,
                          const std::function<double(const Eigen::VectorXd&)>& g,
                          const QuadratureSpec& spec, std::string_view tag = {});

// Integrates g over gamma = N(0, Q); g receives ambient vectors (size = dim).
// Directions in ker(Q) carry the point mass at 0.
double integrate_gaussian(const CovarianceModel& model,
                          const std::function<double(const Eigen::VectorXd&)>& g,
                          const QuadratureSpec& spec, std::string_view tag = {});

struct IntegralWithError {
    double value = 0.0;
    double err = 0.0; // internal-consistency estimate (order/sample halving)
};

IntegralWithError integrate_whitened_err(
    const CovarianceModel& model,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const QuadratureSpec& spec, std::string_view tag = {});

IntegralWithError integrate_gaussian_err(
    const CovarianceModel& model,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const QuadratureSpec& spec, std::string_view tag = {});

} // namespace mehler
