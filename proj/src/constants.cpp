#include "mehler/constants.hpp"

#include <cmath>

#include "mehler/errors.hpp"
#include "mehler/quad1d.hpp"

namespace mehler {

double c_factor(double t) {
    if (!(t > 0.0)) throw DomainError("c_factor: t must be positive");
    // 1 - e^{-2t} via expm1 avoids cancellation for small t.
    const double oneMinus = -std::expm1(-2.0 * t);
    return std::exp(-t) / std::sqrt(oneMinus);
}

namespace {

// Log grid on [tMin, tMax], refined toward the lower end by construction.
template <typename F>
double log_grid_sup(F&& g, double tMin, double tMax, int count) {
    const double logMin = std::log(tMin);
    const double logMax = std::log(tMax);
    double best = 0.0;
    for (int i = 0; i < count; ++i) {
        const double t = std::exp(logMin + (logMax - logMin) * i / (count - 1));
        best = std::max(best, g(t));
    }
    return best;
}

} // namespace

double c0_constant() {
    static const double value = log_grid_sup(
        [](double t) { return std::sqrt(t) * c_factor(t); }, 1e-12, 50.0, 20000);
    return value;
}

double kp_constant(double p) {
    if (p < 1.0) throw DomainError("kp_constant: p must be >= 1");
    // E|xi|^p = 2 * int_0^inf xi^p phi(xi) dxi; the integrand is negligible
    // beyond 45 sigma for any moderate p.
    const double invSqrt2Pi = 0.3989422804014326779;
    auto integrand = [p, invSqrt2Pi](double x) {
        return 2.0 * std::pow(x, p) * invSqrt2Pi * std::exp(-0.5 * x * x);
    };
    IntegralResult r = integrate_adaptive(integrand, 0.0, 45.0, 1e-13, 1e-300);
    return std::pow(r.value, 1.0 / p);
}

UniversalConstants universal_constants() {
    UniversalConstants u;
    u.c0 = std::max(c0_constant(), kC0Analytic);
    const double k3 = kp_constant(3.0);
    u.k3cubed = k3 * k3 * k3;
    u.c1 = (3.0 + u.k3cubed) * u.c0 * u.c0 * u.c0;
    return u;
}

LemmaConstants derive_lemma_constants(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("derive_lemma_constants: alpha must lie in (0,1)");
    }
    const double c0 = std::max(c0_constant(), kC0Analytic);
    LemmaConstants lc;
    lc.alpha = alpha;
    lc.C1 = c0 / (alpha + 1.0) + 1.0;
    lc.C2 = std::pow(2.0, 1.0 - alpha / 2.0) * c0 * lc.C1;
    lc.C3 = std::pow(2.0, 2.5 - alpha / 2.0) * c0 * c0 * lc.C1;
    return lc;
}

LemmaConstants lemma_constants_numeric(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("lemma_constants_numeric: alpha must lie in (0,1)");
    }
    LemmaConstants lc;
    lc.alpha = alpha;
    // C1: sup_t t^{(1-alpha)/2} ( c(t) t^{alpha/2} / (alpha+1) + t^{(alpha-1)/2} ).
    lc.C1 = log_grid_sup(
        [alpha](double t) {
            return std::pow(t, (1.0 - alpha) / 2.0) *
                   (c_factor(t) * std::pow(t, alpha / 2.0) / (alpha + 1.0) +
                    std::pow(t, (alpha - 1.0) / 2.0));
        },
        1e-12, 50.0, 20000);
    // C2/C3 from the t/2-splitting chains with the numeric C1.
    lc.C2 = log_grid_sup(
        [alpha, &lc](double t) {
            return std::pow(t, 1.0 - alpha / 2.0) * c_factor(t / 2.0) * lc.C1 *
                   std::pow(t / 2.0, (alpha - 1.0) / 2.0);
        },
        1e-12, 50.0, 20000);
    lc.C3 = log_grid_sup(
        [alpha, &lc](double t) {
            const double c = c_factor(t / 2.0);
            return std::pow(t, 1.5 - alpha / 2.0) * 2.0 * c * c * lc.C1 *
                   std::pow(t / 2.0, (alpha - 1.0) / 2.0);
        },
        1e-12, 50.0, 20000);
    return lc;
}

} // namespace mehler
