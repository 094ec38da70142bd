#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/profile.hpp"

namespace mehler {

// Precomputed data of a ridge field f(x) = phi(<z,x>). w is the whitened
// image of Q z, so sigma = |w| = |Q^{1/2} z| is the H-operator norm of the
// direction; sigma = 0 means f is H-invariant (z in ker Q).
struct RidgeData {
    Eigen::VectorXd z;
    ProfilePtr profile;
    Eigen::VectorXd w;    // size rank
    double sigma = 0.0;
    Eigen::VectorXd what; // w / sigma, zero when sigma == 0
};

// A test function with declared-exact metadata. Declared values dominate
// every sampled quotient; absent metadata means "unknown", never an estimate.
class ScalarField {
public:
    enum class Kind { Constant, Ridge, Linear, Quadratic, Product, Generic };

    static ScalarField constant(const CovarianceModel& model, double c);
    static ScalarField generic(const CovarianceModel& model, std::string label,
                               std::function<double(const Eigen::VectorXd&)> eval,
                               std::optional<double> supNorm = std::nullopt);

    double operator()(const Eigen::VectorXd& x) const;

    Kind kind() const;
    const std::string& label() const;
    const CovarianceModel& model() const;
    int dim() const;

    std::optional<double> supNorm() const;              // ||f||_inf
    std::optional<double> exactHolder(double alpha) const; // [f]_alpha along H
    std::optional<double> supHGrad() const;             // sup_x ||grad_H f(x)||_H
    std::optional<double> supHHess() const;             // sup_x ||D2_H f(x)||
    std::optional<double> gradHolder(double alpha) const;  // [grad_H f]_alpha
    std::optional<double> hessHolder(double alpha) const;  // [D2_H f]_alpha

    // Unbounded fields: usable only in formula-validation suites.
    bool formulaOnly() const;

    bool hasHGradient() const;
    // grad_H f(x) in whitened coordinates (size rank).
    Eigen::VectorXd hGradWhitened(const Eigen::VectorXd& x) const;
    bool hasHHessian() const;
    Eigen::MatrixXd hHessWhitened(const Eigen::VectorXd& x) const;

    // Non-null for ridge-representable fields (Ridge/Linear/Quadratic):
    // enables the exact 1-d reduction in the semigroup evaluators.
    const RidgeData* ridge() const;

    double scale() const { return scale_; }
    ScalarField scaled(double kappa) const; // kappa * f, metadata scaled by |kappa|

    // Internal: construction goes through the make_* factories.
    struct Impl;
    explicit ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
    double scale_ = 1.0;
};

// f(x) = phi(<z,x>). Throws SpecInvalidError for z = 0. Metadata scales the
// profile's by powers of sigma = |Q^{1/2} z|.
ScalarField make_ridge(const CovarianceModel& model, const Eigen::VectorXd& z,
                       ProfilePtr profile, std::string labelSuffix = {});

// f(x) = <a,x> and f(x) = <a,x>^2: unbounded formula-validation fields with
// closed-form H-derivatives (grad_H f = Q a resp. 2<a,x> Q a).
ScalarField make_linear(const CovarianceModel& model, const Eigen::VectorXd& a);
ScalarField make_quadratic(const CovarianceModel& model, const Eigen::VectorXd& a);

// Pointwise product; sup-norm multiplies when both factors declare one,
// Holder data is unknown by contract.
ScalarField make_product(const ScalarField& f, const ScalarField& g);

// Declared [f]_alpha or nullopt (never a silent estimate).
std::optional<double> exact_holder(const ScalarField& f, double alpha);

// Separable time-dependent data g(t,x) = psi(t) f(x) with |psi| <= supPsi,
// so sup_t ||g(t,.)||_{C^alpha} = supPsi * ||f||_{C^alpha} exactly.
struct TimeField {
    std::function<double(double)> psi;
    double supPsi = 1.0;
    ScalarField f;
    double horizon = 1.0;

    ScalarField at(double t) const { return f.scaled(psi(t)); }
};

} // namespace mehler
