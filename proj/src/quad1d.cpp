#include "mehler/quad1d.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <Eigen/Eigenvalues>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
Rule1d golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag(i);
        if (i + 1 < n) {
            J(i, i + 1) = offdiag(i);
            J(i + 1, i) = offdiag(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule1d rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.weights(i) = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace

const Rule1d& hermite_rule(int order) {
    if (order < 1) throw DomainError("hermite_rule: order must be >= 1");
    static std::map<int, Rule1d> cache;
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd off(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) off(k - 1) = std::sqrt(static_cast<double>(k));
    return cache.emplace(order, golub_welsch(diag, off, 1.0)).first->second;
}

const Rule1d& legendre_rule(int order) {
    if (order < 1) throw DomainError("legendre_rule: order must be >= 1");
    static std::map<int, Rule1d> cache;
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd off(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) {
        const double kk = static_cast<double>(k);
        off(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    return cache.emplace(order, golub_welsch(diag, off, 2.0)).first->second;
}

const Rule1d& jacobi_rule01(int order, double gamma) {
    if (order < 1) throw DomainError("jacobi_rule01: order must be >= 1");
    if (!(gamma > -1.0)) throw DomainError("jacobi_rule01: gamma must be > -1");
    static std::map<std::pair<int, double>, Rule1d> cache;
    const auto key = std::make_pair(order, gamma);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Recurrence for the weight (1+x)^gamma on [-1,1] (Jacobi with a=0, b=gamma),
    // then the affine map tau=(1+x)/2 carries it to tau^gamma on [0,1].
    const double g = gamma;
    Eigen::VectorXd diag(order);
    Eigen::VectorXd off(order > 1 ? order - 1 : 0);
    diag(0) = g / (g + 2.0);
    for (int k = 1; k < order; ++k)
        diag(k) = g * g / ((2.0 * k + g) * (2.0 * k + g + 2.0));
    for (int k = 1; k < order; ++k) {
        const double kk = static_cast<double>(k);
        double beta;
        if (k == 1) {
            beta = 4.0 * (g + 1.0) / ((g + 2.0) * (g + 2.0) * (g + 3.0));
        } else {
            beta = 4.0 * kk * kk * (kk + g) * (kk + g) /
                   ((2.0 * kk + g) * (2.0 * kk + g) * (2.0 * kk + g + 1.0) * (2.0 * kk + g - 1.0));
        }
        off(k - 1) = std::sqrt(beta);
    }
    const double mu0 = std::pow(2.0, g + 1.0) / (g + 1.0);
    Rule1d raw = golub_welsch(diag, off, mu0);
    Rule1d rule;
    rule.nodes = (raw.nodes.array() + 1.0) * 0.5;
    // Total mass on [0,1] is integral of tau^gamma = 1/(gamma+1); the map divides
    // the raw mass 2^{gamma+1}/(gamma+1) by 2^{gamma+1}.
    rule.weights = raw.weights * std::pow(2.0, -g - 1.0);
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace {

struct PanelEval {
    double fine = 0.0;    // GL-21
    double coarse = 0.0;  // GL-10
    double absMass = 0.0; // GL-21 applied to |f|: scale of the rounding noise
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b) {
    const Rule1d& lo = legendre_rule(10);
    const Rule1d& hi = legendre_rule(21);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    PanelEval out;
    for (int i = 0; i < lo.nodes.size(); ++i)
        out.coarse += lo.weights(i) * f(mid + hw * lo.nodes(i));
    for (int i = 0; i < hi.nodes.size(); ++i) {
        const double v = hi.weights(i) * f(mid + hw * hi.nodes(i));
        out.fine += v;
        out.absMass += std::fabs(v);
    }
    out.coarse *= hw;
    out.fine *= hw;
    out.absMass *= hw;
    return out;
}

// Two GL rules cannot agree more tightly than the rounding noise of their
// weighted sums, which scales with the absolute mass of the panel.  Without
// this floor, cancellation-dominated integrals (|I| near zero but integrand
// of order one) request an unreachable tolerance and the recursion degenerates
// into a full tree to maxDepth.
constexpr double kNoiseMult = 64.0 * std::numeric_limits<double>::epsilon();

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double tol, int depth, int maxDepth, const PanelEval& pe,
                   IntegralResult& acc) {
    const double diff = std::fabs(pe.fine - pe.coarse);
    if (diff <= std::max(tol, kNoiseMult * pe.absMass) || depth >= maxDepth) {
        acc.value += pe.fine;
        acc.err += diff;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_rec(f, a, mid, 0.5 * tol, depth + 1, maxDepth,
                  eval_panel(f, a, mid), acc);
    integrate_rec(f, mid, b, 0.5 * tol, depth + 1, maxDepth,
                  eval_panel(f, mid, b), acc);
}

} // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b,
                                  double relTol, double absTol, int maxDepth) {
    PanelEval whole = eval_panel(f, a, b);
    const double scale = std::fabs(whole.fine);
    const double tol = std::max(absTol, relTol * scale);
    IntegralResult acc;
    integrate_rec(f, a, b, tol, 0, maxDepth, whole, acc);
    return acc;
}

} // namespace mehler
