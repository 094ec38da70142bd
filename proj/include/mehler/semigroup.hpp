#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/fields.hpp"
#include "mehler/integrator.hpp"
#include "mehler/tensor3.hpp"

namespace mehler {

// T(t)f(x) = int f(e^{-t}x + sqrt(1-e^{-2t}) y) dgamma(y) and its
// H-derivatives. Two families:
//   - bounded route (t > 0): kernel formulas with c(t)^j prefactors, valid
//     for any bounded f;
//   - C1 route (suffix _c1): formulas that differentiate f once and pay only
//     c(t)^{j-1}, valid when f carries a closed-form H-gradient (t = 0 allowed
//     for the gradient itself).
// Ridge-representable fields use an exact reduction to 1-d adaptive
// quadrature (split at profile singular points) unless spec.forceGeneric is
// set; other fields stream the engine chosen by the spec.

double apply_T(const CovarianceModel& model, const ScalarField& f, double t,
               const Eigen::VectorXd& x, const QuadratureSpec& spec,
               std::string_view tag = {});
IntegralWithError apply_T_err(const CovarianceModel& model, const ScalarField& f,
                              double t, const Eigen::VectorXd& x,
                              const QuadratureSpec& spec, std::string_view tag = {});

struct VecWithError {
    Eigen::VectorXd value; // whitened coordinates
    double err = 0.0;
};

struct MatWithError {
    Eigen::MatrixXd value;
    double err = 0.0;
};

struct TensWithError {
    SymTensor3 value;
    double err = 0.0;
};

HVector grad_H_T(const CovarianceModel& model, const ScalarField& f, double t,
                 const Eigen::VectorXd& x, const QuadratureSpec& spec,
                 std::string_view tag = {});
VecWithError grad_H_T_err(const CovarianceModel& model, const ScalarField& f,
                          double t, const Eigen::VectorXd& x,
                          const QuadratureSpec& spec, std::string_view tag = {});

Eigen::MatrixXd hess_H_T(const CovarianceModel& model, const ScalarField& f,
                         double t, const Eigen::VectorXd& x,
                         const QuadratureSpec& spec, std::string_view tag = {});
MatWithError hess_H_T_err(const CovarianceModel& model, const ScalarField& f,
                          double t, const Eigen::VectorXd& x,
                          const QuadratureSpec& spec, std::string_view tag = {});

SymTensor3 d3_H_T(const CovarianceModel& model, const ScalarField& f, double t,
                  const Eigen::VectorXd& x, const QuadratureSpec& spec,
                  std::string_view tag = {});
TensWithError d3_H_T_err(const CovarianceModel& model, const ScalarField& f,
                         double t, const Eigen::VectorXd& x,
                         const QuadratureSpec& spec, std::string_view tag = {});

HVector grad_H_T_c1(const CovarianceModel& model, const ScalarField& f, double t,
                    const Eigen::VectorXd& x, const QuadratureSpec& spec,
                    std::string_view tag = {});
VecWithError grad_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag = {});

Eigen::MatrixXd hess_H_T_c1(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag = {});
MatWithError hess_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag = {});

SymTensor3 d3_H_T_c1(const CovarianceModel& model, const ScalarField& f, double t,
                     const Eigen::VectorXd& x, const QuadratureSpec& spec,
                     std::string_view tag = {});
TensWithError d3_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag = {});

// Second-derivative route for twice H-differentiable data, valid down to
// t = 0: D2_H T(t)f = e^{-2t} E[D2_H f(arg)], uniformly bounded in t.
// Requires a closed-form H-Hessian (MissingMetadataError otherwise).
Eigen::MatrixXd hess_H_T_c2(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag = {});
MatWithError hess_H_T_c2_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag = {});

} // namespace mehler
