#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mehler {

// One-dimensional profile phi for ridge fields f(x) = phi(<z,x>). Metadata
// accessors return nullopt when the quantity is unknown or infinite; declared
// values dominate every sampled quotient (numeric oracles carry a tiny
// inflation so domination survives refinement).
class Profile1d {
public:
    virtual ~Profile1d() = default;

    virtual double value(double s) const = 0;
    virtual std::string name() const = 0;

    virtual bool isC1() const { return false; }
    virtual std::optional<double> deriv(double) const { return std::nullopt; }
    virtual std::optional<double> deriv2(double) const { return std::nullopt; }

    // Locations where phi (or a derivative) loses smoothness; adaptive 1-d
    // quadrature splits its panels there.
    virtual std::vector<double> singularPoints() const { return {}; }

    virtual std::optional<double> supNorm() const = 0;          // sup|phi|
    virtual std::optional<double> holder(double alpha) const = 0; // [phi]_alpha
    virtual std::optional<double> supDeriv() const { return std::nullopt; }
    virtual std::optional<double> supDeriv2() const { return std::nullopt; }
    virtual std::optional<double> derivHolder(double) const { return std::nullopt; }
    virtual std::optional<double> deriv2Holder(double) const { return std::nullopt; }
};

using ProfilePtr = std::shared_ptr<const Profile1d>;

// phi(s) = min(|s|, M)^p, the clipped power cusp. [phi]_alpha = M^{p-alpha}
// for alpha <= p, unbounded (nullopt) for alpha > p. Not C^1.
ProfilePtr absclippow_profile(double p, double M = 1.0);

// phi(s) = sin(omega s). [phi]_alpha = omega^alpha * S(alpha) with
// S(alpha) = sup_{0 < d <= 2pi} 2 sin(d/2) / d^alpha (numeric, cached).
ProfilePtr sin_profile(double omega);

// phi(s) = exp(1 - 1/(1 - s^2)) on (-1,1), 0 outside; smooth with compact
// support, phi(0) = 1. Hölder data from the dense-grid oracle.
ProfilePtr bump_profile();

// phi(s) = s and phi(s) = s^2; unbounded (metadata nullopt), used by the
// formula-validation fields only.
ProfilePtr linear_profile();
ProfilePtr quadratic_profile();

// Tabulated profile with local cubic interpolation on a uniform grid,
// clamped to the endpoint values outside [lo, hi]. Used to wrap numerically
// computed 1-d functions (e.g. a resolvent restricted to a ridge line) as
// first-class profiles for nested evaluations.
ProfilePtr numeric_profile(std::string name, double lo, double hi,
                           std::vector<double> values);

// Dense-grid maximizer of g on [lo, hi] with golden-section refinement.
double max_on_interval(const std::function<double(double)>& g, double lo,
                       double hi, int gridN = 4096, int refineIters = 80);

// Raw pair-grid supremum of |phi(s) - phi(u)| / |s - u|^alpha on [lo, hi]^2
// (about gridN^2 pairs) with coordinate-descent refinement. Lower bound of
// the true seminorm; callers inflate before declaring it as metadata.
double holder_pair_sup(const std::function<double(double)>& phi, double alpha,
                       double lo, double hi, int gridN = 1500);

// Same, also reporting the attaining pair (useful for building designs that
// provably reach a declared fraction of the seminorm).
struct PairSupResult {
    double value = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};
PairSupResult holder_pair_sup_arg(const std::function<double(double)>& phi, double alpha,
                                  double lo, double hi, int gridN = 1500);

// S(alpha) for the sine family (cached).
double sin_holder_factor(double alpha);

} // namespace mehler
