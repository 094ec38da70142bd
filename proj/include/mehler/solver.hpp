#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/fields.hpp"
#include "mehler/integrator.hpp"
#include "mehler/timequad.hpp"

namespace mehler {

// Elliptic and parabolic solvers built on the semigroup: the resolvent
// u = R(lambda)f as a damped time integral of T(t)f, its H-gradient and
// H-Hessian (differentiation under the integral with the graded meshes of
// timequad.hpp), and the mild solution of the inhomogeneous Cauchy problem.
//
// Every *_err variant reports err = (fine vs coarse mesh difference)
// + (propagated inner quadrature error) + (truncation tail bound), plus the
// truncation data itself.

struct SolveScalar {
    double value = 0.0;
    double err = 0.0;
    double tMax = 0.0;
    double tailBound = 0.0;
};

struct SolveVec {
    Eigen::VectorXd value;
    double err = 0.0;
    double tMax = 0.0;
    double tailBound = 0.0;
};

struct SolveMat {
    Eigen::MatrixXd value;
    double err = 0.0;
    double tMax = 0.0;
    double tailBound = 0.0;
};

// u(x) = integral over (0,inf) of e^{-lambda t} T(t)f(x) dt, lambda > 0.
double resolvent(const CovarianceModel& model, const ScalarField& f, double lambda,
                 const Eigen::VectorXd& x, const TimeQuadrature& tq,
                 const QuadratureSpec& spec, std::string_view tag = {});
SolveScalar resolvent_err(const CovarianceModel& model, const ScalarField& f,
                          double lambda, const Eigen::VectorXd& x,
                          const TimeQuadrature& tq, const QuadratureSpec& spec,
                          std::string_view tag = {});

// grad_H u (whitened coordinates). Data with a closed-form H-gradient uses the
// uniformly bounded first-derivative route; merely bounded data uses the
// c(t)-kernel whose t^{-(1-alpha)/2} blow-up the optional Hölder exponent
// declares to the mesh (t^{-1/2} assumed when absent).
Eigen::VectorXd resolvent_grad(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const TimeQuadrature& tq, const QuadratureSpec& spec,
                               std::optional<double> alpha = std::nullopt,
                               std::string_view tag = {});
SolveVec resolvent_grad_err(const CovarianceModel& model, const ScalarField& f,
                            double lambda, const Eigen::VectorXd& x,
                            const TimeQuadrature& tq, const QuadratureSpec& spec,
                            std::optional<double> alpha = std::nullopt,
                            std::string_view tag = {});

// D2_H u (whitened coordinates, symmetric r x r). Data must either carry a
// closed-form H-Hessian (bounded route, valid for any alpha) or a Hölder
// exponent alpha in (0,1) with a matching seminorm: the c(t)^2-kernel
// integrand grows like t^{-1+alpha/2}, which is not integrable at alpha = 0,
// so exponent-free data is refused rather than attempted.
Eigen::MatrixXd resolvent_hess(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const TimeQuadrature& tq, const QuadratureSpec& spec,
                               std::optional<double> alpha = std::nullopt,
                               std::string_view tag = {});
SolveMat resolvent_hess_err(const CovarianceModel& model, const ScalarField& f,
                            double lambda, const Eigen::VectorXd& x,
                            const TimeQuadrature& tq, const QuadratureSpec& spec,
                            std::optional<double> alpha = std::nullopt,
                            std::string_view tag = {});

// Diagnostic decomposition of D2_H u(x+h) - D2_H u(x): the time axis is split
// at s0 = |h|_H^2, mirroring the mechanism that yields the Hölder estimate
// for D2_H u (short times controlled by the Hessian smoothing bound, long
// times by the third-derivative bound and the mean value theorem).
// aPart + bPart reproduces the Hessian increment up to quadrature error.
struct HessSplit {
    Eigen::MatrixXd aPart; // integral over (0, s0]
    Eigen::MatrixXd bPart; // integral over (s0, tMax]
    double s0 = 0.0;
    double errA = 0.0;
    double errB = 0.0;
    double tMax = 0.0;
    double tailBound = 0.0;
};
HessSplit resolvent_hess_split(const CovarianceModel& model, const ScalarField& f,
                               double lambda, double alpha, const Eigen::VectorXd& x,
                               const HVector& h, const TimeQuadrature& tq,
                               const QuadratureSpec& spec, std::string_view tag = {});

// Diagnostic decomposition of the second difference
// grad_H u(x+2h) - 2 grad_H u(x+h) + grad_H u(x) for bounded data, split at
// s0 = |h|_H^2: short times are controlled by the c(t) gradient bound, long
// times by the third-derivative bound via Taylor. aPart + bPart reproduces
// the second difference up to quadrature error.
struct GradSplit {
    Eigen::VectorXd aPart; // integral over (0, s0]
    Eigen::VectorXd bPart; // integral over (s0, tMax]
    double s0 = 0.0;
    double errA = 0.0;
    double errB = 0.0;
    double tMax = 0.0;
    double tailBound = 0.0;
};
GradSplit resolvent_grad_split(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const HVector& h, const TimeQuadrature& tq,
                               const QuadratureSpec& spec, std::string_view tag = {});

// v(t,x) = T(t)f(x) + integral over (0,t] of T(v) g(t-v,.)(x) dv for t in [0, g.horizon].
double mild_solution(const CovarianceModel& model, const ScalarField& f,
                     const TimeField& g, double t, const Eigen::VectorXd& x,
                     const TimeQuadrature& tq, const QuadratureSpec& spec,
                     std::string_view tag = {});
SolveScalar mild_solution_err(const CovarianceModel& model, const ScalarField& f,
                              const TimeField& g, double t, const Eigen::VectorXd& x,
                              const TimeQuadrature& tq, const QuadratureSpec& spec,
                              std::string_view tag = {});

// D2_H v(t,x): data term via the bounded second-derivative route (f must be
// twice H-differentiable) plus the Duhamel term with the t^{-1+alpha/2}-graded
// mesh; alpha declares the Hölder regularity of g in space.
Eigen::MatrixXd mild_hess(const CovarianceModel& model, const ScalarField& f,
                          const TimeField& g, double alpha, double t,
                          const Eigen::VectorXd& x, const TimeQuadrature& tq,
                          const QuadratureSpec& spec, std::string_view tag = {});
SolveMat mild_hess_err(const CovarianceModel& model, const ScalarField& f,
                       const TimeField& g, double alpha, double t,
                       const Eigen::VectorXd& x, const TimeQuadrature& tq,
                       const QuadratureSpec& spec, std::string_view tag = {});

} // namespace mehler
