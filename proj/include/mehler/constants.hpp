#pragma once

namespace mehler {

// c(t) = e^{-t} / sqrt(1 - e^{-2t}), the smoothing factor of the semigroup
// derivative formulas. Stable near t = 0 via expm1. Throws DomainError for
// t <= 0.
double c_factor(double t);

// Numerically maximized sup_{t>0} t^{1/2} c(t) over a log grid refined toward
// 0. The supremum is the boundary limit 1/sqrt(2) (t^{1/2}c(t) is strictly
// decreasing), so the numeric value approaches it from below.
double c0_constant();

// The analytic limit value of the supremum.
inline constexpr double kC0Analytic = 0.7071067811865475244; // 1/sqrt(2)

// (E |xi|^p)^{1/p} for xi ~ N(0,1), by adaptive quadrature (rel. err <= 1e-10).
// Throws DomainError for p < 1.
double kp_constant(double p);

// Constants used across the estimate suites. c0 is max(numeric, analytic):
// the sup is a boundary limit, never attained on a finite grid.
struct UniversalConstants {
    double c0 = 0.0;
    double k3cubed = 0.0; // k_3^3 = E|xi|^3 = 2 sqrt(2/pi)
    double c1 = 0.0;      // (3 + k_3^3) c0^3
};

UniversalConstants universal_constants();

// Constants of the singular-kernel estimates for Holder data:
//   |grad_H T(t) f|      <= C1 t^{-(1-alpha)/2} ||f||_{C^alpha}
//   |D2_H T(t) f|        <= C2 t^{-1+alpha/2}   ||f||_{C^alpha}
//   |D3_H T(t) f|        <= C3 t^{-3/2+alpha/2} ||f||_{C^alpha}
// Closed reductions: C1 = c0/(alpha+1) + 1, C2 = 2^{1-alpha/2} c0 C1,
// C3 = 2^{5/2-alpha/2} c0^2 C1.
struct LemmaConstants {
    double alpha = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
};

LemmaConstants derive_lemma_constants(double alpha);

// Same constants by direct numeric maximization of the defining suprema over
// a log grid; used as the cross-check oracle for the closed reductions.
LemmaConstants lemma_constants_numeric(double alpha);

} // namespace mehler
