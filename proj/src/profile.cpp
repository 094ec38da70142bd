#include "mehler/profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

// Numeric-oracle values are inflated by this factor before being declared as
// metadata, so declared constants dominate every sampled quotient even after
// local refinement finds a marginally better pair.
constexpr double kOracleInflate = 1.0 + 1e-9;

double golden_refine(const std::function<double(double)>& g, double lo,
                     double hi, int iters) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

double max_on_interval(const std::function<double(double)>& g, double lo,
                       double hi, int gridN, int refineIters) {
    double best = -std::numeric_limits<double>::infinity();
    int bestI = 0;
    for (int i = 0; i < gridN; ++i) {
        const double s = lo + (hi - lo) * i / (gridN - 1);
        const double v = g(s);
        if (v > best) {
            best = v;
            bestI = i;
        }
    }
    const double step = (hi - lo) / (gridN - 1);
    const double a = std::max(lo, lo + step * (bestI - 1));
    const double b = std::min(hi, lo + step * (bestI + 1));
    return std::max(best, golden_refine(g, a, b, refineIters));
}

PairSupResult holder_pair_sup_arg(const std::function<double(double)>& phi, double alpha,
                                  double lo, double hi, int gridN) {
    std::vector<double> s(static_cast<std::size_t>(gridN));
    std::vector<double> v(static_cast<std::size_t>(gridN));
    for (int i = 0; i < gridN; ++i) {
        s[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (gridN - 1);
        v[static_cast<std::size_t>(i)] = phi(s[static_cast<std::size_t>(i)]);
    }
    double best = 0.0;
    int bi = 0, bj = 1;
    for (int i = 0; i < gridN; ++i) {
        for (int j = i + 1; j < gridN; ++j) {
            const double q = std::abs(v[static_cast<std::size_t>(j)] -
                                      v[static_cast<std::size_t>(i)]) /
                             std::pow(s[static_cast<std::size_t>(j)] -
                                          s[static_cast<std::size_t>(i)],
                                      alpha);
            if (q > best) {
                best = q;
                bi = i;
                bj = j;
            }
        }
    }
    // Coordinate-descent polish around the best grid pair.
    double a = s[static_cast<std::size_t>(bi)], b = s[static_cast<std::size_t>(bj)];
    const double step = (hi - lo) / (gridN - 1);
    auto quotient = [&](double sa, double sb) {
        const double d = std::abs(sb - sa);
        if (d < 1e-300) return 0.0;
        return std::abs(phi(sb) - phi(sa)) / std::pow(d, alpha);
    };
    double window = 2.0 * step;
    for (int round = 0; round < 8; ++round) {
        double bestA = a, bestVal = quotient(a, b);
        const double la = std::max(lo, a - window), ha = std::min(hi, a + window);
        for (int i = 0; i <= 64; ++i) {
            const double sa = la + (ha - la) * i / 64.0;
            const double q = quotient(sa, b);
            if (q > bestVal) {
                bestVal = q;
                bestA = sa;
            }
        }
        a = bestA;
        double bestB = b;
        const double lb = std::max(lo, b - window), hb = std::min(hi, b + window);
        for (int i = 0; i <= 64; ++i) {
            const double sb = lb + (hb - lb) * i / 64.0;
            const double q = quotient(a, sb);
            if (q > bestVal) {
                bestVal = q;
                bestB = sb;
            }
        }
        b = bestB;
        best = std::max(best, bestVal);
        window *= 0.25;
    }
    return {best, a, b};
}

double holder_pair_sup(const std::function<double(double)>& phi, double alpha,
                       double lo, double hi, int gridN) {
    return holder_pair_sup_arg(phi, alpha, lo, hi, gridN).value;
}

double sin_holder_factor(double alpha) {
    static std::map<double, double> cache;
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    const double twoPi = 6.283185307179586477;
    const double s = max_on_interval(
        [alpha](double d) { return 2.0 * std::sin(d / 2.0) / std::pow(d, alpha); },
        1e-9, twoPi, 8192, 100);
    cache.emplace(alpha, s);
    return s;
}

namespace {

class AbsClipPowProfile final : public Profile1d {
public:
    AbsClipPowProfile(double p, double M) : p_(p), M_(M) {
        if (!(p > 0.0 && p <= 1.0)) throw SpecInvalidError("absclippow: exponent must lie in (0,1]");
        if (!(M > 0.0)) throw SpecInvalidError("absclippow: clip level must be positive");
    }
    double value(double s) const override {
        return std::pow(std::min(std::abs(s), M_), p_);
    }
    std::string name() const override {
        return "absclippow(p=" + std::to_string(p_) + ",M=" + std::to_string(M_) + ")";
    }
    std::optional<double> supNorm() const override { return std::pow(M_, p_); }
    std::optional<double> holder(double alpha) const override {
        if (alpha > p_ + 1e-12) return std::nullopt; // cusp: seminorm infinite
        return std::pow(M_, p_ - alpha);
    }
    std::vector<double> singularPoints() const override { return {-M_, 0.0, M_}; }

private:
    double p_, M_;
};

class SinProfile final : public Profile1d {
public:
    explicit SinProfile(double omega) : omega_(omega) {
        if (!(omega > 0.0)) throw SpecInvalidError("sin profile: frequency must be positive");
    }
    double value(double s) const override { return std::sin(omega_ * s); }
    std::string name() const override { return "sin(omega=" + std::to_string(omega_) + ")"; }
    bool isC1() const override { return true; }
    std::optional<double> deriv(double s) const override { return omega_ * std::cos(omega_ * s); }
    std::optional<double> deriv2(double s) const override {
        return -omega_ * omega_ * std::sin(omega_ * s);
    }
    std::optional<double> supNorm() const override { return 1.0; }
    std::optional<double> holder(double alpha) const override {
        return std::pow(omega_, alpha) * sin_holder_factor(alpha) * kOracleInflate;
    }
    std::optional<double> supDeriv() const override { return omega_; }
    std::optional<double> supDeriv2() const override { return omega_ * omega_; }
    std::optional<double> derivHolder(double alpha) const override {
        return std::pow(omega_, 1.0 + alpha) * sin_holder_factor(alpha) * kOracleInflate;
    }
    std::optional<double> deriv2Holder(double alpha) const override {
        return std::pow(omega_, 2.0 + alpha) * sin_holder_factor(alpha) * kOracleInflate;
    }

private:
    double omega_;
};

class BumpProfile final : public Profile1d {
public:
    double value(double s) const override {
        const double a = std::abs(s);
        if (a >= 1.0 - 1e-9) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    std::string name() const override { return "bump"; }
    bool isC1() const override { return true; }
    std::optional<double> deriv(double s) const override {
        const double a = std::abs(s);
        if (a >= 1.0 - 1e-9) return 0.0;
        const double d = 1.0 - s * s;
        return -2.0 * s / (d * d) * value(s);
    }
    std::optional<double> deriv2(double s) const override {
        const double a = std::abs(s);
        if (a >= 1.0 - 1e-9) return 0.0;
        const double d = 1.0 - s * s;
        const double g = 2.0 * s / (d * d); // (log phi)' = -g
        const double gp = 2.0 / (d * d) + 8.0 * s * s / (d * d * d);
        return (g * g - gp) * value(s);
    }
    std::optional<double> supNorm() const override { return 1.0; }
    std::optional<double> holder(double alpha) const override {
        return cached(holderCache_, alpha, [this, alpha] {
            return holder_pair_sup([this](double s) { return value(s); }, alpha,
                                   -1.2, 1.2);
        });
    }
    std::optional<double> supDeriv() const override {
        return cached(supDerivCache_, 0.0, [this] {
            return max_on_interval(
                [this](double s) { return std::abs(*deriv(s)); }, 0.0, 1.0);
        });
    }
    std::optional<double> supDeriv2() const override {
        return cached(supDeriv2Cache_, 0.0, [this] {
            return max_on_interval(
                [this](double s) { return std::abs(*deriv2(s)); }, 0.0, 1.0);
        });
    }
    std::optional<double> derivHolder(double alpha) const override {
        return cached(derivHolderCache_, alpha, [this, alpha] {
            return holder_pair_sup([this](double s) { return *deriv(s); }, alpha,
                                   -1.2, 1.2);
        });
    }
    std::optional<double> deriv2Holder(double alpha) const override {
        return cached(deriv2HolderCache_, alpha, [this, alpha] {
            return holder_pair_sup([this](double s) { return *deriv2(s); }, alpha,
                                   -1.2, 1.2);
        });
    }
    // Smooth, but the support boundary is where all the action stops; telling
    // the adaptive integrator speeds up convergence.
    std::vector<double> singularPoints() const override { return {-1.0, 1.0}; }

private:
    template <typename F>
    static double cached(std::map<double, double>& cache, double key, F&& compute) {
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, compute() * kOracleInflate).first;
        return it->second;
    }
    mutable std::map<double, double> holderCache_, derivHolderCache_,
        deriv2HolderCache_, supDerivCache_, supDeriv2Cache_;
};

class PolyProfile final : public Profile1d {
public:
    explicit PolyProfile(int degree) : degree_(degree) {}
    double value(double s) const override { return degree_ == 1 ? s : s * s; }
    std::string name() const override { return degree_ == 1 ? "linear" : "quadratic"; }
    bool isC1() const override { return true; }
    std::optional<double> deriv(double s) const override {
        return degree_ == 1 ? 1.0 : 2.0 * s;
    }
    std::optional<double> deriv2(double) const override {
        return degree_ == 1 ? 0.0 : 2.0;
    }
    std::optional<double> supNorm() const override { return std::nullopt; } // unbounded
    std::optional<double> holder(double) const override { return std::nullopt; }
    std::optional<double> supDeriv() const override {
        if (degree_ == 1) return 1.0;
        return std::nullopt; // 2s unbounded
    }
    std::optional<double> supDeriv2() const override {
        return degree_ == 1 ? 0.0 : 2.0;
    }
    std::optional<double> derivHolder(double) const override {
        if (degree_ == 1) return 0.0; // constant derivative
        return std::nullopt;          // 2s: Lipschitz, not alpha-Holder globally
    }
    std::optional<double> deriv2Holder(double) const override { return 0.0; }

private:
    int degree_;
};

class NumericProfile final : public Profile1d {
public:
    NumericProfile(std::string name, double lo, double hi, std::vector<double> values)
        : name_(std::move(name)), lo_(lo), hi_(hi), values_(std::move(values)) {
        if (values_.size() < 4 || !(hi_ > lo_)) {
            throw SpecInvalidError("numeric profile: need >= 4 samples on a proper interval");
        }
        step_ = (hi_ - lo_) / static_cast<double>(values_.size() - 1);
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        supAbs_ = m;
    }
    double value(double s) const override {
        if (s <= lo_) return values_.front();
        if (s >= hi_) return values_.back();
        const double u = (s - lo_) / step_;
        const auto n = static_cast<long>(values_.size());
        long i = static_cast<long>(std::floor(u));
        i = std::min(i, n - 2);
        const double t = u - static_cast<double>(i);
        auto at = [&](long k) {
            return values_[static_cast<std::size_t>(std::clamp(k, 0L, n - 1))];
        };
        const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
        // Catmull-Rom cubic through p1, p2.
        return 0.5 * (2.0 * p1 + (-p0 + p2) * t +
                      (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                      (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t);
    }
    std::string name() const override { return name_; }
    std::optional<double> supNorm() const override { return supAbs_; }
    std::optional<double> holder(double) const override { return std::nullopt; }

private:
    std::string name_;
    double lo_, hi_, step_, supAbs_;
    std::vector<double> values_;
};

} // namespace

ProfilePtr absclippow_profile(double p, double M) {
    return std::make_shared<AbsClipPowProfile>(p, M);
}

ProfilePtr sin_profile(double omega) { return std::make_shared<SinProfile>(omega); }

ProfilePtr bump_profile() { return std::make_shared<BumpProfile>(); }

ProfilePtr linear_profile() { return std::make_shared<PolyProfile>(1); }

ProfilePtr quadratic_profile() { return std::make_shared<PolyProfile>(2); }

ProfilePtr numeric_profile(std::string name, double lo, double hi,
                           std::vector<double> values) {
    return std::make_shared<NumericProfile>(std::move(name), lo, hi, std::move(values));
}

} // namespace mehler
