#pragma once

#include <functional>

#include <Eigen/Dense>

namespace mehler {

struct Rule1d {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

// Gauss-Hermite rule for the standard normal weight (probabilists'
// normalization: weights sum to 1). Nodes/weights via the Golub-Welsch
// tridiagonal eigenproblem; cached per order.
const Rule1d& hermite_rule(int order);

// Gauss-Legendre rule on [-1,1] (weights sum to 2); cached per order.
const Rule1d& legendre_rule(int order);

// Gauss-Jacobi rule for the weight tau^gamma on [0,1], gamma > -1: exact for
// integrands tau^gamma * polynomial. Workhorse for the integrable endpoint
// singularities of the time integrals; cached per (order, gamma).
const Rule1d& jacobi_rule01(int order, double gamma);

struct IntegralResult {
    double value = 0.0;
    double err = 0.0; // estimated absolute error
};

// Adaptive integration of f on [a,b] using a nested Gauss-Legendre pair
// (GL-10 vs GL-21 difference drives bisection). Deterministic.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  double relTol = 1e-12, double absTol = 1e-14,
                                  int maxDepth = 48);

} // namespace mehler
