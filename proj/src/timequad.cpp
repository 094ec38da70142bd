#include "mehler/timequad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mehler/errors.hpp"
#include "mehler/quad1d.hpp"

namespace mehler {

void TimeQuadrature::validate() const {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw SpecInvalidError("TimeQuadrature: tol must be positive and finite");
    if (!(split > 0.0) || !std::isfinite(split))
        throw SpecInvalidError("TimeQuadrature: split must be positive and finite");
    if (order < 2 || order > 64)
        throw SpecInvalidError("TimeQuadrature: order out of range [2,64]");
    if (singOrder < 2 || singOrder > 128)
        throw SpecInvalidError("TimeQuadrature: singOrder out of range [2,128]");
    if (!(growth > 1.0) || growth > 64.0)
        throw SpecInvalidError("TimeQuadrature: growth must lie in (1,64]");
}

namespace {

struct MeshAccum {
    std::vector<double> t;
    std::vector<double> w;
};

// Singular block: integral over (0,s] of G dt with G ~ t^{mu-1}. Substituting
// t = tau^2 gives integral over (0,sqrt(s)] of tau^{2mu-1} * [2 tau^{2-2mu} G(tau^2)] dtau,
// whose bracket is smooth and even; the Gauss-Jacobi rule with weight
// tau^{2mu-1} handles it. Node weights fold the bracket's tau power in so the
// caller evaluates plain G(t).
void append_singular_block(double s, double mu, int n, MeshAccum& acc) {
    const double gamma = 2.0 * mu - 1.0;
    const Rule1d& rule = jacobi_rule01(n, gamma);
    for (int i = 0; i < rule.nodes.size(); ++i) {
        const double tauHat = rule.nodes(i);
        const double tau = std::sqrt(s) * tauHat;
        acc.t.push_back(tau * tau);
        acc.w.push_back(2.0 * s * std::pow(tauHat, 2.0 - 2.0 * mu) * rule.weights(i));
    }
}

void append_gl_panel(double a, double b, int n, MeshAccum& acc) {
    const Rule1d& rule = legendre_rule(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (int i = 0; i < rule.nodes.size(); ++i) {
        acc.t.push_back(mid + hw * rule.nodes(i));
        acc.w.push_back(hw * rule.weights(i));
    }
}

// Geometric edges from..to with ratio growth; panels wider than widthCap are
// subdivided uniformly so one Gauss-Legendre rule never straddles too many
// e-foldings of the damping factor.
std::vector<double> panel_edges(double from, double to, double growth, double widthCap) {
    std::vector<double> edges;
    if (!(to > from)) return edges;
    edges.push_back(from);
    double e = from;
    while (e < to) {
        double next = std::min(e * growth, to);
        if (next - e > widthCap) {
            const int k = static_cast<int>(std::ceil((next - e) / widthCap));
            for (int i = 1; i <= k; ++i) edges.push_back(e + (next - e) * i / k);
        } else {
            edges.push_back(next);
        }
        e = next;
    }
    return edges;
}

void append_panels(const std::vector<double>& edges, int order, MeshAccum& acc) {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        append_gl_panel(edges[i], edges[i + 1], order, acc);
}

// Diagnostics-only replacement for the singular block: geometric grading
// toward zero without the tau^2 substitution. Intentionally weaker; the dual
// mesh reports the loss.
void append_plain_block(double s, int order, double growth, MeshAccum& acc) {
    std::vector<double> edges{0.0};
    double e = s;
    for (int lvl = 0; lvl < 14 && e > 1e-12 * s; ++lvl) e /= growth;
    while (e < s) {
        edges.push_back(e);
        e *= growth;
    }
    edges.push_back(s);
    append_panels(edges, order, acc);
}

void append_block(double s, double mu, int singOrder, const TimeQuadrature& tq, MeshAccum& acc) {
    if (tq.tauSquared)
        append_singular_block(s, mu, singOrder, acc);
    else
        append_plain_block(s, std::max(2, singOrder / 2), tq.growth, acc);
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    Eigen::VectorXd out(static_cast<long>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<long>(i)) = v[i];
    return out;
}

TimeMesh finish(const MeshAccum& fine, const MeshAccum& coarse, double tMax, double tailBound) {
    TimeMesh mesh;
    mesh.nodes = to_vec(fine.t);
    mesh.weights = to_vec(fine.w);
    mesh.coarseNodes = to_vec(coarse.t);
    mesh.coarseWeights = to_vec(coarse.w);
    mesh.tMax = tMax;
    mesh.tailBound = tailBound;
    return mesh;
}

double truncation_time(double lambda, double supFactor, const TimeQuadrature& tq) {
    const double K = std::max(supFactor, 1.0);
    // Tail beyond T is at most K e^{-lambda T} / lambda; keep it under tol/10.
    const double T = std::log(10.0 * K / (lambda * tq.tol)) / lambda;
    return std::max(2.0 * tq.split, T);
}

void check_mu(double mu) {
    if (!(mu > 0.0) || mu > 1.0 + 1e-12)
        throw DomainError("time mesh: singularity exponent mu must lie in (0,1]");
}

} // namespace

TimeMesh build_laplace_mesh(double lambda, double mu, double supFactor,
                            const TimeQuadrature& tq) {
    tq.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("build_laplace_mesh: lambda must be positive");
    check_mu(mu);
    if (!(supFactor >= 0.0) || !std::isfinite(supFactor))
        throw DomainError("build_laplace_mesh: supFactor must be finite and nonnegative");

    const double tMax = truncation_time(lambda, supFactor, tq);
    const double widthCap = 12.0 / lambda;
    MeshAccum fine, coarse;
    append_block(tq.split, mu, tq.singOrder, tq, fine);
    append_block(tq.split, mu, std::max(2, tq.singOrder / 2), tq, coarse);
    const std::vector<double> edges = panel_edges(tq.split, tMax, tq.growth, widthCap);
    append_panels(edges, tq.order, fine);
    append_panels(edges, std::max(2, tq.order / 2), coarse);
    const double tailBound = std::max(supFactor, 1.0) * std::exp(-lambda * tMax) / lambda;
    return finish(fine, coarse, tMax, tailBound);
}

TimeMesh build_finite_mesh(double tEnd, double mu, const TimeQuadrature& tq) {
    tq.validate();
    if (!(tEnd >= 0.0) || !std::isfinite(tEnd))
        throw DomainError("build_finite_mesh: tEnd must be finite and nonnegative");
    check_mu(mu);
    TimeMesh mesh;
    mesh.tMax = tEnd;
    if (tEnd == 0.0) {
        mesh.nodes.resize(0);
        mesh.weights.resize(0);
        mesh.coarseNodes.resize(0);
        mesh.coarseWeights.resize(0);
        return mesh;
    }
    const double s = std::min(tq.split, tEnd);
    MeshAccum fine, coarse;
    append_block(s, mu, tq.singOrder, tq, fine);
    append_block(s, mu, std::max(2, tq.singOrder / 2), tq, coarse);
    const std::vector<double> edges =
        panel_edges(s, tEnd, tq.growth, std::numeric_limits<double>::infinity());
    append_panels(edges, tq.order, fine);
    append_panels(edges, std::max(2, tq.order / 2), coarse);
    return finish(fine, coarse, tEnd, 0.0);
}

TimeMesh build_tail_mesh(double tStart, double lambda, double supFactor,
                         const TimeQuadrature& tq) {
    tq.validate();
    if (!(tStart > 0.0) || !std::isfinite(tStart))
        throw DomainError("build_tail_mesh: tStart must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("build_tail_mesh: lambda must be positive");
    if (!(supFactor >= 0.0) || !std::isfinite(supFactor))
        throw DomainError("build_tail_mesh: supFactor must be finite and nonnegative");

    double tMax = truncation_time(lambda, supFactor, tq);
    if (tMax <= tStart) {
        // Whole range already inside the certified tail.
        TimeMesh mesh;
        mesh.nodes.resize(0);
        mesh.weights.resize(0);
        mesh.coarseNodes.resize(0);
        mesh.coarseWeights.resize(0);
        mesh.tMax = tStart;
        mesh.tailBound = std::max(supFactor, 1.0) * std::exp(-lambda * tStart) / lambda;
        return mesh;
    }
    MeshAccum fine, coarse;
    const std::vector<double> edges = panel_edges(tStart, tMax, tq.growth, 12.0 / lambda);
    append_panels(edges, tq.order, fine);
    append_panels(edges, std::max(2, tq.order / 2), coarse);
    const double tailBound = std::max(supFactor, 1.0) * std::exp(-lambda * tMax) / lambda;
    return finish(fine, coarse, tMax, tailBound);
}

} // namespace mehler
