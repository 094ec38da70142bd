#include "mehler/solver.hpp"

#include <cmath>
#include <functional>

#include "mehler/constants.hpp"
#include "mehler/errors.hpp"
#include "mehler/semigroup.hpp"

namespace mehler {

namespace {

// Quadrature sum of a scalar/vector/matrix node function over a TimeMesh, with
// the fine/coarse difference and the propagated per-node errors folded into
// the reported error.
SolveScalar sum_scalar(const TimeMesh& mesh,
                       const std::function<IntegralWithError(double)>& G) {
    double fine = 0.0, coarse = 0.0, inner = 0.0;
    for (long i = 0; i < mesh.nodes.size(); ++i) {
        const IntegralWithError r = G(mesh.nodes(i));
        fine += mesh.weights(i) * r.value;
        inner += std::abs(mesh.weights(i)) * r.err;
    }
    for (long i = 0; i < mesh.coarseNodes.size(); ++i)
        coarse += mesh.coarseWeights(i) * G(mesh.coarseNodes(i)).value;
    SolveScalar out;
    out.value = fine;
    out.err = std::abs(fine - coarse) + inner + mesh.tailBound;
    out.tMax = mesh.tMax;
    out.tailBound = mesh.tailBound;
    return out;
}

SolveVec sum_vec(int r, const TimeMesh& mesh,
                 const std::function<VecWithError(double)>& G) {
    Eigen::VectorXd fine = Eigen::VectorXd::Zero(r);
    Eigen::VectorXd coarse = Eigen::VectorXd::Zero(r);
    double inner = 0.0;
    for (long i = 0; i < mesh.nodes.size(); ++i) {
        const VecWithError v = G(mesh.nodes(i));
        fine += mesh.weights(i) * v.value;
        inner += std::abs(mesh.weights(i)) * v.err;
    }
    for (long i = 0; i < mesh.coarseNodes.size(); ++i)
        coarse += mesh.coarseWeights(i) * G(mesh.coarseNodes(i)).value;
    SolveVec out;
    out.value = fine;
    const double diff = mesh.coarseNodes.size() > 0 ? (fine - coarse).cwiseAbs().maxCoeff()
                                                    : 0.0;
    out.err = diff + inner + mesh.tailBound;
    out.tMax = mesh.tMax;
    out.tailBound = mesh.tailBound;
    return out;
}

SolveMat sum_mat(int r, const TimeMesh& mesh,
                 const std::function<MatWithError(double)>& G) {
    Eigen::MatrixXd fine = Eigen::MatrixXd::Zero(r, r);
    Eigen::MatrixXd coarse = Eigen::MatrixXd::Zero(r, r);
    double inner = 0.0;
    for (long i = 0; i < mesh.nodes.size(); ++i) {
        const MatWithError v = G(mesh.nodes(i));
        fine += mesh.weights(i) * v.value;
        inner += std::abs(mesh.weights(i)) * v.err;
    }
    for (long i = 0; i < mesh.coarseNodes.size(); ++i)
        coarse += mesh.coarseWeights(i) * G(mesh.coarseNodes(i)).value;
    SolveMat out;
    out.value = fine;
    const double diff = mesh.coarseNodes.size() > 0 ? (fine - coarse).cwiseAbs().maxCoeff()
                                                    : 0.0;
    out.err = diff + inner + mesh.tailBound;
    out.tMax = mesh.tMax;
    out.tailBound = mesh.tailBound;
    return out;
}

void check_solver_inputs(const CovarianceModel& model, const ScalarField& f,
                         const Eigen::VectorXd& x, const QuadratureSpec& spec) {
    if (!model.sameModel(f.model()))
        throw SpecInvalidError("solver: field was built on a different model");
    if (x.size() != model.dim()) throw DomainError("solver: x dimension mismatch");
    spec.validate();
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("solver: lambda must be positive");
}

void check_alpha_range(const std::optional<double>& alpha) {
    if (alpha && !(*alpha > 0.0 && *alpha < 1.0))
        throw DomainError("solver: Hölder exponent must lie in (0,1)");
}

// Crude but certified-enough envelope of |T(t)f(x)| over t for tail control of
// unbounded formula fields (only the logarithm of this enters the mesh).
double generous_sup(const ScalarField& f, const Eigen::VectorXd& x) {
    if (f.supNorm()) return *f.supNorm();
    const RidgeData* rd = f.ridge();
    if (rd != nullptr) {
        const double b = std::abs(rd->z.dot(x)) + 3.0 * rd->sigma + 1.0;
        return std::abs(f(x)) + std::abs(f.scale()) * (b + b * b) + 1.0;
    }
    return std::abs(f(x)) + 1.0;
}

// Envelope of |grad_H T(t)f| for t >= split (tail control).
double grad_sup_factor(const ScalarField& f, const Eigen::VectorXd& x, double split) {
    if (f.hasHGradient()) {
        if (f.supHGrad()) return *f.supHGrad();
        const RidgeData* rd = f.ridge();
        if (rd != nullptr) {
            const double b = std::abs(rd->z.dot(x)) + 3.0 * rd->sigma + 1.0;
            return std::abs(f.scale()) * rd->sigma * (1.0 + 2.0 * b) + 1.0;
        }
    }
    return c_factor(split) * generous_sup(f, x);
}

double hess_sup_factor(const ScalarField& f, const Eigen::VectorXd& x, double split) {
    if (f.hasHHessian() && f.supHHess()) return *f.supHHess();
    if (f.hasHHessian()) {
        const RidgeData* rd = f.ridge();
        if (rd != nullptr) return std::abs(f.scale()) * rd->sigma * rd->sigma * 2.0 + 1.0;
    }
    const double c = c_factor(split);
    return 2.0 * c * c * generous_sup(f, x);
}

// Hessian route: prefer the uniformly bounded second-derivative kernel; fall
// back to the Hölder-graded bounded-data kernel; refuse exponent-free data.
struct HessRoute {
    bool useC2 = false;
    double mu = 1.0;
};

HessRoute pick_hess_route(const ScalarField& f, const std::optional<double>& alpha,
                          const char* who) {
    check_alpha_range(alpha);
    HessRoute route;
    if (f.hasHHessian()) {
        route.useC2 = true;
        route.mu = 1.0;
        return route;
    }
    if (!alpha)
        throw MissingMetadataError(std::string(who) +
                                   ": data without a second derivative needs a Hölder exponent");
    if (!f.exactHolder(*alpha))
        throw MissingMetadataError(std::string(who) +
                                   ": no Hölder seminorm available at this exponent");
    route.useC2 = false;
    route.mu = 0.5 * *alpha;
    return route;
}

MatWithError hess_node(const CovarianceModel& model, const ScalarField& f, bool useC2,
                       double t, const Eigen::VectorXd& x, const QuadratureSpec& spec,
                       std::string_view tag) {
    return useC2 ? hess_H_T_c2_err(model, f, t, x, spec, tag)
                 : hess_H_T_err(model, f, t, x, spec, tag);
}

} // namespace

double resolvent(const CovarianceModel& model, const ScalarField& f, double lambda,
                 const Eigen::VectorXd& x, const TimeQuadrature& tq,
                 const QuadratureSpec& spec, std::string_view tag) {
    return resolvent_err(model, f, lambda, x, tq, spec, tag).value;
}

SolveScalar resolvent_err(const CovarianceModel& model, const ScalarField& f,
                          double lambda, const Eigen::VectorXd& x,
                          const TimeQuadrature& tq, const QuadratureSpec& spec,
                          std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    check_lambda(lambda);
    const TimeMesh mesh = build_laplace_mesh(lambda, 1.0, generous_sup(f, x), tq);
    auto G = [&](double t) {
        const IntegralWithError r = apply_T_err(model, f, t, x, spec, tag);
        const double d = std::exp(-lambda * t);
        return IntegralWithError{d * r.value, d * r.err};
    };
    return sum_scalar(mesh, G);
}

Eigen::VectorXd resolvent_grad(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const TimeQuadrature& tq, const QuadratureSpec& spec,
                               std::optional<double> alpha, std::string_view tag) {
    return resolvent_grad_err(model, f, lambda, x, tq, spec, alpha, tag).value;
}

SolveVec resolvent_grad_err(const CovarianceModel& model, const ScalarField& f,
                            double lambda, const Eigen::VectorXd& x,
                            const TimeQuadrature& tq, const QuadratureSpec& spec,
                            std::optional<double> alpha, std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    check_lambda(lambda);
    check_alpha_range(alpha);
    const bool useC1 = f.hasHGradient();
    if (!useC1 && !f.supNorm())
        throw MissingMetadataError(
            "resolvent_grad: data needs either an H-gradient or a sup bound");
    const double mu = useC1 ? 1.0 : (alpha ? 0.5 * (1.0 + *alpha) : 0.5);
    const double sup = grad_sup_factor(f, x, tq.split);
    const TimeMesh mesh = build_laplace_mesh(lambda, mu, sup, tq);
    auto G = [&](double t) {
        VecWithError v = useC1 ? grad_H_T_c1_err(model, f, t, x, spec, tag)
                               : grad_H_T_err(model, f, t, x, spec, tag);
        const double d = std::exp(-lambda * t);
        v.value *= d;
        v.err *= d;
        return v;
    };
    return sum_vec(model.rank(), mesh, G);
}

Eigen::MatrixXd resolvent_hess(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const TimeQuadrature& tq, const QuadratureSpec& spec,
                               std::optional<double> alpha, std::string_view tag) {
    return resolvent_hess_err(model, f, lambda, x, tq, spec, alpha, tag).value;
}

SolveMat resolvent_hess_err(const CovarianceModel& model, const ScalarField& f,
                            double lambda, const Eigen::VectorXd& x,
                            const TimeQuadrature& tq, const QuadratureSpec& spec,
                            std::optional<double> alpha, std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    check_lambda(lambda);
    const HessRoute route = pick_hess_route(f, alpha, "resolvent_hess");
    const double sup = hess_sup_factor(f, x, tq.split);
    const TimeMesh mesh = build_laplace_mesh(lambda, route.mu, sup, tq);
    auto G = [&](double t) {
        MatWithError v = hess_node(model, f, route.useC2, t, x, spec, tag);
        const double d = std::exp(-lambda * t);
        v.value *= d;
        v.err *= d;
        return v;
    };
    return sum_mat(model.rank(), mesh, G);
}

HessSplit resolvent_hess_split(const CovarianceModel& model, const ScalarField& f,
                               double lambda, double alpha, const Eigen::VectorXd& x,
                               const HVector& h, const TimeQuadrature& tq,
                               const QuadratureSpec& spec, std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    check_lambda(lambda);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("resolvent_hess_split: Hölder exponent must lie in (0,1)");
    if (!f.exactHolder(alpha))
        throw MissingMetadataError(
            "resolvent_hess_split: no Hölder seminorm available at this exponent");
    if (h.ambient.size() != model.dim())
        throw DomainError("resolvent_hess_split: h dimension mismatch");
    const HessRoute route = pick_hess_route(f, alpha, "resolvent_hess_split");
    const double s0 = h.hNorm * h.hNorm;
    if (!(s0 > 0.0)) throw DomainError("resolvent_hess_split: h must be nonzero");
    const Eigen::VectorXd xh = x + h.ambient;
    const int r = model.rank();

    auto G = [&](double t) {
        MatWithError a = hess_node(model, f, route.useC2, t, xh, spec, tag);
        const MatWithError b = hess_node(model, f, route.useC2, t, x, spec, tag);
        const double d = std::exp(-lambda * t);
        a.value = d * (a.value - b.value);
        a.err = d * (a.err + b.err);
        return a;
    };

    const TimeMesh meshA = build_finite_mesh(s0, route.mu, tq);
    const SolveMat aPart = sum_mat(r, meshA, G);

    const double supB = 2.0 * hess_sup_factor(f, x, std::max(s0, tq.split));
    const TimeMesh meshB = build_tail_mesh(s0, lambda, supB, tq);
    const SolveMat bPart = sum_mat(r, meshB, G);

    HessSplit out;
    out.aPart = aPart.value;
    out.bPart = bPart.value;
    out.s0 = s0;
    out.errA = aPart.err;
    out.errB = bPart.err;
    out.tMax = meshB.tMax;
    out.tailBound = meshB.tailBound;
    return out;
}

GradSplit resolvent_grad_split(const CovarianceModel& model, const ScalarField& f,
                               double lambda, const Eigen::VectorXd& x,
                               const HVector& h, const TimeQuadrature& tq,
                               const QuadratureSpec& spec, std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    check_lambda(lambda);
    if (!f.supNorm())
        throw MissingMetadataError("resolvent_grad_split: data needs a sup bound");
    if (h.ambient.size() != model.dim())
        throw DomainError("resolvent_grad_split: h dimension mismatch");
    const double s0 = h.hNorm * h.hNorm;
    if (!(s0 > 0.0)) throw DomainError("resolvent_grad_split: h must be nonzero");
    const Eigen::VectorXd x1 = x + h.ambient;
    const Eigen::VectorXd x2 = x + 2.0 * h.ambient;
    const int r = model.rank();

    auto G = [&](double t) {
        VecWithError a = grad_H_T_err(model, f, t, x2, spec, tag);
        const VecWithError b = grad_H_T_err(model, f, t, x1, spec, tag);
        const VecWithError c = grad_H_T_err(model, f, t, x, spec, tag);
        const double d = std::exp(-lambda * t);
        a.value = d * (a.value - 2.0 * b.value + c.value);
        a.err = d * (a.err + 2.0 * b.err + c.err);
        return a;
    };

    const TimeMesh meshA = build_finite_mesh(s0, 0.5, tq);
    const SolveVec aPart = sum_vec(r, meshA, G);

    const double supB = 4.0 * grad_sup_factor(f, x, std::max(s0, tq.split));
    const TimeMesh meshB = build_tail_mesh(s0, lambda, supB, tq);
    const SolveVec bPart = sum_vec(r, meshB, G);

    GradSplit out;
    out.aPart = aPart.value;
    out.bPart = bPart.value;
    out.s0 = s0;
    out.errA = aPart.err;
    out.errB = bPart.err;
    out.tMax = meshB.tMax;
    out.tailBound = meshB.tailBound;
    return out;
}

double mild_solution(const CovarianceModel& model, const ScalarField& f,
                     const TimeField& g, double t, const Eigen::VectorXd& x,
                     const TimeQuadrature& tq, const QuadratureSpec& spec,
                     std::string_view tag) {
    return mild_solution_err(model, f, g, t, x, tq, spec, tag).value;
}

SolveScalar mild_solution_err(const CovarianceModel& model, const ScalarField& f,
                              const TimeField& g, double t, const Eigen::VectorXd& x,
                              const TimeQuadrature& tq, const QuadratureSpec& spec,
                              std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    if (!(t >= 0.0) || t > g.horizon)
        throw DomainError("mild_solution: t outside [0, horizon]");
    const IntegralWithError data = apply_T_err(model, f, t, x, spec, tag);
    const TimeMesh mesh = build_finite_mesh(t, 1.0, tq);
    auto G = [&](double v) {
        return apply_T_err(model, g.at(t - v), v, x, spec, tag);
    };
    SolveScalar out = sum_scalar(mesh, G);
    out.value += data.value;
    out.err += data.err;
    return out;
}

Eigen::MatrixXd mild_hess(const CovarianceModel& model, const ScalarField& f,
                          const TimeField& g, double alpha, double t,
                          const Eigen::VectorXd& x, const TimeQuadrature& tq,
                          const QuadratureSpec& spec, std::string_view tag) {
    return mild_hess_err(model, f, g, alpha, t, x, tq, spec, tag).value;
}

SolveMat mild_hess_err(const CovarianceModel& model, const ScalarField& f,
                       const TimeField& g, double alpha, double t,
                       const Eigen::VectorXd& x, const TimeQuadrature& tq,
                       const QuadratureSpec& spec, std::string_view tag) {
    check_solver_inputs(model, f, x, spec);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("mild_hess: Hölder exponent must lie in (0,1)");
    if (!(t >= 0.0) || t > g.horizon)
        throw DomainError("mild_hess: t outside [0, horizon]");
    if (!f.hasHHessian())
        throw MissingMetadataError("mild_hess: initial datum lacks a closed-form H-Hessian");
    const MatWithError data = hess_H_T_c2_err(model, f, t, x, spec, tag);
    const TimeMesh mesh = build_finite_mesh(t, 0.5 * alpha, tq);
    auto G = [&](double v) {
        return hess_H_T_err(model, g.at(t - v), v, x, spec, tag);
    };
    SolveMat out = sum_mat(model.rank(), mesh, G);
    out.value += data.value;
    out.err += data.err;
    return out;
}

} // namespace mehler
