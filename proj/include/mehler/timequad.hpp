#pragma once

#include <Eigen/Dense>

namespace mehler {

// Configuration for the time integrals (Laplace transforms of the semigroup
// and Duhamel convolutions). The integrands behave like t^{mu-1} * smooth(t)
// near t = 0 with mu in (0,1]; the substitution t = tau^2 turns that into
// tau^{2mu-1} * (smooth, even in tau), which a Gauss-Jacobi rule with weight
// tau^{2mu-1} integrates at spectral accuracy. Beyond the split point the
// integrand is smooth and exponentially damped, so geometrically growing
// Gauss-Legendre panels finish the job.
struct TimeQuadrature {
    double tol = 1e-9;      // target absolute accuracy of a time integral
    double split = 0.5;     // boundary between the singular block and the panels
    int order = 16;         // Gauss-Legendre order per regular panel
    int singOrder = 24;     // Gauss-Jacobi order on the singular block
    double growth = 4.0;    // geometric ratio of successive panel widths
    bool tauSquared = true; // disable only for diagnostics: plain GL on [0,split]

    void validate() const;  // throws SpecInvalidError on out-of-range fields
};

// A discretized time integral: sum_i weights[i] * G(nodes[i]) approximates the
// integral of G over (0, tMax], and the mass beyond tMax is bounded by
// tailBound (zero for finite-horizon meshes). The coarse companion uses half
// the orders on the same layout; the fine/coarse difference is the error
// estimate of the mesh itself.
struct TimeMesh {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    Eigen::VectorXd coarseNodes;
    Eigen::VectorXd coarseWeights;
    double tMax = 0.0;
    double tailBound = 0.0;
};

// Mesh for integral over (0, infinity) of e^{-lambda t} G(t) dt where
// |G(t)| <= supFactor * t^{mu-1} near 0 and |G(t)| <= supFactor for t >= split.
// tMax is chosen so the discarded tail supFactor * e^{-lambda tMax} / lambda
// stays below tol/10. The e^{-lambda t} factor belongs to the integrand, not
// the weights.
TimeMesh build_laplace_mesh(double lambda, double mu, double supFactor,
                            const TimeQuadrature& tq);

// Mesh for integral over (0, tEnd] of G(t) dt with the same t^{mu-1} behavior at
// zero and no damping requirement (Duhamel convolutions on a finite horizon).
TimeMesh build_finite_mesh(double tEnd, double mu, const TimeQuadrature& tq);

// Mesh for integral over [tStart, infinity) of e^{-lambda t} G(t) dt with G bounded by
// supFactor on the range; no singular block (tStart > 0). Used by the
// proof-mimicking split of the Hessian of the resolvent.
TimeMesh build_tail_mesh(double tStart, double lambda, double supFactor,
                         const TimeQuadrature& tq);

} // namespace mehler
