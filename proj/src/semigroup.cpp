#include "mehler/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mehler/constants.hpp"
#include "mehler/errors.hpp"
#include "mehler/quad1d.hpp"

namespace mehler {

namespace {

void check_inputs(const CovarianceModel& model, const ScalarField& f,
                  const Eigen::VectorXd& x) {
    if (!model.sameModel(f.model())) {
        throw SpecInvalidError("semigroup: field was built on a different model");
    }
    if (x.size() != model.dim()) throw DomainError("semigroup: x dimension mismatch");
}

// 1-d reduction data for a ridge field: the Mehler argument along the ridge
// is m + bs*u with u ~ N(0,1), where m = e^{-t}<z,x> and bs = beta*sigma.
struct Ridge1d {
    const Profile1d* prof = nullptr;
    double m = 0.0;
    double bs = 0.0;
};

double hermite_poly(int k, double u) {
    switch (k) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return u * u - 1.0;
    case 3: return u * (u * u - 3.0);
    default: throw DomainError("hermite_poly: order out of range");
    }
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kTailCut = 10.0; // N(0,1) mass beyond: ~7.7e-24

// E[ g(m + bs*u) H_k(u) ] over u ~ N(0,1) with g the profile or one of its
// derivatives (derivOrder in {0,1,2}), split at the profile's singular points
// so every adaptive panel sees a smooth integrand. For k >= 1 the Hermite
// kernel has zero mean, so g(m) is subtracted from g: exact, and it removes
// the catastrophic cancellation when bs is tiny (small-t derivative kernels).
IntegralResult ridge_moment(const Ridge1d& rd, int k, int derivOrder) {
    std::vector<double> cuts{-kTailCut, kTailCut};
    if (rd.bs > 0.0) {
        for (double s : rd.prof->singularPoints()) {
            const double u = (s - rd.m) / rd.bs;
            if (u > -kTailCut && u < kTailCut) cuts.push_back(u);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    const Profile1d* prof = rd.prof;
    const double m = rd.m, bs = rd.bs;
    auto g_at = [prof, derivOrder](double s) {
        switch (derivOrder) {
        case 0: return prof->value(s);
        case 1: return *prof->deriv(s);
        case 2: return *prof->deriv2(s);
        default: throw DomainError("ridge_moment: derivative order out of range");
        }
    };
    const double center = k >= 1 ? g_at(m) : 0.0;
    auto integrand = [&g_at, m, bs, k, center](double u) {
        const double g = g_at(m + bs * u) - center;
        return g * hermite_poly(k, u) * kInvSqrt2Pi * std::exp(-0.5 * u * u);
    };
    // Tolerances are per call site, not user-tunable: the verdict slack of the
    // inequality checks absorbs 1e-9 relative quadrature error with two orders
    // of margin, while depth 26 caps the cost of the slowly-converging panel
    // chains that cusps in the profile produce.
    IntegralResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const IntegralResult piece =
            integrate_adaptive(integrand, cuts[i], cuts[i + 1], 1e-9, 1e-13, 26);
        total.value += piece.value;
        total.err += piece.err;
    }
    return total;
}

struct EvalContext {
    const CovarianceModel* model;
    const ScalarField* f;
    double t;
    const Eigen::VectorXd* x;
    const QuadratureSpec* spec;
    std::string_view tag;

    double et;   // e^{-t}
    double beta; // sqrt(1 - e^{-2t})
    bool ridgePath;
    Ridge1d rd; // valid when ridgePath

    EvalContext(const CovarianceModel& m, const ScalarField& field, double time,
                const Eigen::VectorXd& point, const QuadratureSpec& s,
                std::string_view tg)
        : model(&m), f(&field), t(time), x(&point), spec(&s), tag(tg) {
        check_inputs(m, field, point);
        s.validate();
        et = std::exp(-t);
        beta = std::sqrt(-std::expm1(-2.0 * t));
        const RidgeData* r = field.ridge();
        ridgePath = r != nullptr && !s.forceGeneric;
        if (ridgePath) {
            rd.prof = r->profile.get();
            rd.m = et * r->z.dot(point);
            rd.bs = beta * r->sigma;
        }
    }

    const RidgeData& ridge() const { return *f->ridge(); }
    double scale() const { return f->scale(); }

    // Generic-path expectation of g(xi) with the Mehler argument precomputed.
    double generic(const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& g,
                   const QuadratureSpec& sp, double* errOut) const {
        const CovarianceModel& m = *model;
        const ScalarField& field = *f;
        const Eigen::VectorXd base = et * (*x);
        const double b = beta;
        auto integrand = [&m, &field, &base, b, &g](const Eigen::VectorXd& xi) {
            const Eigen::VectorXd arg = base + b * m.unwhiten(xi);
            return g(arg, xi);
        };
        if (errOut != nullptr) {
            const IntegralWithError r = integrate_whitened_err(m, integrand, sp, tag);
            *errOut += r.err;
            return r.value;
        }
        return integrate_whitened(m, integrand, sp, tag);
    }
};

} // namespace

double apply_T(const CovarianceModel& model, const ScalarField& f, double t,
               const Eigen::VectorXd& x, const QuadratureSpec& spec,
               std::string_view tag) {
    return apply_T_err(model, f, t, x, spec, tag).value;
}

IntegralWithError apply_T_err(const CovarianceModel& model, const ScalarField& f,
                              double t, const Eigen::VectorXd& x,
                              const QuadratureSpec& spec, std::string_view tag) {
    check_inputs(model, f, x);
    if (t < 0.0) throw DomainError("apply_T: t must be >= 0");
    if (t == 0.0) return {f(x), 0.0};
    EvalContext cx(model, f, t, x, spec, tag);
    IntegralWithError out;
    if (cx.ridgePath) {
        if (cx.rd.bs == 0.0) {
            // H-invariant ridge: the gamma-integral is trivial.
            out.value = cx.scale() * cx.rd.prof->value(cx.rd.m);
            out.err = 0.0;
            return out;
        }
        const IntegralResult r = ridge_moment(cx.rd, 0, 0);
        out.value = cx.scale() * r.value;
        out.err = std::abs(cx.scale()) * r.err;
        return out;
    }
    double err = 0.0;
    out.value = cx.generic(
        [&f](const Eigen::VectorXd& arg, const Eigen::VectorXd&) { return f(arg); },
        spec, &err);
    out.err = err;
    return out;
}

namespace {

// Shared implementation for the bounded-route derivatives: order j in {1,2,3}.
// Ridge reduction: D^j = c(t)^j * (unit-direction tensor) * E[phi(m+bs u) H_j(u)].
VecWithError grad_bounded(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double c = c_factor(cx.t);
    VecWithError out;
    out.value = Eigen::VectorXd::Zero(r);
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (cx.rd.bs == 0.0) return out;
        const IntegralResult m1 = ridge_moment(cx.rd, 1, 0);
        out.value = cx.scale() * c * m1.value * rd.what;
        out.err = std::abs(cx.scale()) * c * m1.err;
    } else {
        const ScalarField& f = *cx.f;
        // xi has zero mean, so subtracting f at the Mehler center is exact and
        // kills the cancellation at small t (same trick as ridge_moment).
        const double f0 = f(cx.et * (*cx.x));
        for (int i = 0; i < r; ++i) {
            double err = 0.0;
            out.value(i) =
                c * cx.generic(
                        [&f, f0, i](const Eigen::VectorXd& arg, const Eigen::VectorXd& xi) {
                            return (f(arg) - f0) * xi(i);
                        },
                        *cx.spec, &err);
            out.err = std::max(out.err, c * err);
        }
    }
    return out;
}

MatWithError hess_bounded(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double c = c_factor(cx.t);
    MatWithError out;
    out.value = Eigen::MatrixXd::Zero(r, r);
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (cx.rd.bs == 0.0) return out;
        const IntegralResult m2 = ridge_moment(cx.rd, 2, 0);
        out.value = (cx.scale() * c * c * m2.value) * (rd.what * rd.what.transpose());
        out.err = std::abs(cx.scale()) * c * c * m2.err;
        return out;
    }
    const ScalarField& f = *cx.f;
    const double f0 = f(cx.et * (*cx.x)); // kernel has zero mean: see grad_bounded
    for (int i = 0; i < r; ++i) {
        for (int j = i; j < r; ++j) {
            double err = 0.0;
            const double v =
                c * c *
                cx.generic(
                    [&f, f0, i, j](const Eigen::VectorXd& arg, const Eigen::VectorXd& xi) {
                        const double kernel = xi(i) * xi(j) - (i == j ? 1.0 : 0.0);
                        return (f(arg) - f0) * kernel;
                    },
                    *cx.spec, &err);
            out.value(i, j) = v;
            out.value(j, i) = v;
            out.err = std::max(out.err, c * c * err);
        }
    }
    return out;
}

TensWithError d3_bounded(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double c = c_factor(cx.t);
    TensWithError out{SymTensor3(r), 0.0};
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (cx.rd.bs == 0.0) return out;
        const IntegralResult m3 = ridge_moment(cx.rd, 3, 0);
        const double pref = cx.scale() * c * c * c * m3.value;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    out.value.at(i, j, k) = pref * rd.what(i) * rd.what(j) * rd.what(k);
        out.err = std::abs(cx.scale()) * c * c * c * m3.err;
        return out;
    }
    const ScalarField& f = *cx.f;
    const double f0 = f(cx.et * (*cx.x)); // kernel has zero mean: see grad_bounded
    for (int i = 0; i < r; ++i) {
        for (int j = i; j < r; ++j) {
            for (int k = j; k < r; ++k) {
                double err = 0.0;
                const double v =
                    c * c * c *
                    cx.generic(
                        [&f, f0, i, j, k](const Eigen::VectorXd& arg, const Eigen::VectorXd& xi) {
                            const double dij = i == j ? 1.0 : 0.0;
                            const double dik = i == k ? 1.0 : 0.0;
                            const double djk = j == k ? 1.0 : 0.0;
                            const double kernel = xi(i) * xi(j) * xi(k) -
                                                  (xi(i) * djk + xi(j) * dik + xi(k) * dij);
                            return (f(arg) - f0) * kernel;
                        },
                        *cx.spec, &err);
                // The integrand is fully symmetric in (i,j,k): fill the orbit.
                const int idx[3] = {i, j, k};
                int perm[3] = {0, 1, 2};
                std::sort(perm, perm + 3);
                do {
                    out.value.at(idx[perm[0]], idx[perm[1]], idx[perm[2]]) = v;
                } while (std::next_permutation(perm, perm + 3));
                out.err = std::max(out.err, c * c * c * err);
            }
        }
    }
    return out;
}

// C1-route shared pieces. grad: e^{-t} E[grad_H f(arg)]; hess:
// e^{-t} c(t) E[(grad_H f(arg))_j xi_i]; d3: e^{-t} c(t)^2
// E[(grad_H f(arg))_i (xi_j xi_k - d_jk)]. Ridge reduction collapses to
// phi'-moments against Hermite weights.
VecWithError grad_c1_impl(const EvalContext& cx) {
    const int r = cx.model->rank();
    VecWithError out;
    out.value = Eigen::VectorXd::Zero(r);
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (rd.sigma == 0.0) return out;
        const IntegralResult n0 = ridge_moment(cx.rd, 0, 1);
        out.value = cx.scale() * cx.et * n0.value * rd.w;
        out.err = std::abs(cx.scale()) * cx.et * n0.err * rd.sigma;
        return out;
    }
    const ScalarField& f = *cx.f;
    for (int i = 0; i < r; ++i) {
        double err = 0.0;
        out.value(i) =
            cx.et * cx.generic(
                        [&f, i](const Eigen::VectorXd& arg, const Eigen::VectorXd&) {
                            return f.hGradWhitened(arg)(i);
                        },
                        *cx.spec, &err);
        out.err = std::max(out.err, cx.et * err);
    }
    return out;
}

MatWithError hess_c1_impl(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double c = c_factor(cx.t);
    MatWithError out;
    out.value = Eigen::MatrixXd::Zero(r, r);
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (rd.sigma == 0.0) return out;
        const IntegralResult n1 = ridge_moment(cx.rd, 1, 1);
        out.value = (cx.scale() * cx.et * c * rd.sigma * n1.value) *
                    (rd.what * rd.what.transpose());
        out.err = std::abs(cx.scale()) * cx.et * c * rd.sigma * n1.err;
        return out;
    }
    const ScalarField& f = *cx.f;
    const Eigen::VectorXd g0 = f.hGradWhitened(cx.et * (*cx.x));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            double err = 0.0;
            out.value(i, j) =
                cx.et * c *
                cx.generic(
                    [&f, &g0, i, j](const Eigen::VectorXd& arg, const Eigen::VectorXd& xi) {
                        return (f.hGradWhitened(arg)(j) - g0(j)) * xi(i);
                    },
                    *cx.spec, &err);
            out.err = std::max(out.err, cx.et * c * err);
        }
    }
    return out;
}

TensWithError d3_c1_impl(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double c = c_factor(cx.t);
    TensWithError out{SymTensor3(r), 0.0};
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (rd.sigma == 0.0) return out;
        const IntegralResult n2 = ridge_moment(cx.rd, 2, 1);
        const double pref = cx.scale() * cx.et * c * c * rd.sigma * n2.value;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    out.value.at(i, j, k) = pref * rd.what(i) * rd.what(j) * rd.what(k);
        out.err = std::abs(cx.scale()) * cx.et * c * c * rd.sigma * n2.err;
        return out;
    }
    const ScalarField& f = *cx.f;
    const Eigen::VectorXd g0 = f.hGradWhitened(cx.et * (*cx.x));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            for (int k = j; k < r; ++k) {
                double err = 0.0;
                const double v =
                    cx.et * c * c *
                    cx.generic(
                        [&f, &g0, i, j, k](const Eigen::VectorXd& arg, const Eigen::VectorXd& xi) {
                            const double djk = j == k ? 1.0 : 0.0;
                            return (f.hGradWhitened(arg)(i) - g0(i)) * (xi(j) * xi(k) - djk);
                        },
                        *cx.spec, &err);
                out.value.at(i, j, k) = v;
                out.value.at(i, k, j) = v;
                out.err = std::max(out.err, cx.et * c * c * err);
            }
        }
    }
    return out;
}

// C2-route Hessian: e^{-2t} E[D2_H f(arg)], uniformly bounded in t. Ridge
// reduction: e^{-2t} E[phi''(m + bs u)] w w^T.
MatWithError hess_c2_impl(const EvalContext& cx) {
    const int r = cx.model->rank();
    const double et2 = cx.et * cx.et;
    MatWithError out;
    out.value = Eigen::MatrixXd::Zero(r, r);
    if (cx.ridgePath) {
        const RidgeData& rd = cx.ridge();
        if (rd.sigma == 0.0) return out;
        if (cx.rd.bs == 0.0) {
            out.value = (cx.scale() * et2 * *rd.profile->deriv2(cx.rd.m)) *
                        (rd.w * rd.w.transpose());
            return out;
        }
        const IntegralResult m20 = ridge_moment(cx.rd, 0, 2);
        out.value = (cx.scale() * et2 * m20.value) * (rd.w * rd.w.transpose());
        out.err = std::abs(cx.scale()) * et2 * m20.err * rd.sigma * rd.sigma;
        return out;
    }
    const ScalarField& f = *cx.f;
    for (int i = 0; i < r; ++i) {
        for (int j = i; j < r; ++j) {
            double err = 0.0;
            const double v =
                et2 * cx.generic(
                          [&f, i, j](const Eigen::VectorXd& arg, const Eigen::VectorXd&) {
                              return f.hHessWhitened(arg)(i, j);
                          },
                          *cx.spec, &err);
            out.value(i, j) = v;
            out.value(j, i) = v;
            out.err = std::max(out.err, et2 * err);
        }
    }
    return out;
}

} // namespace

HVector grad_H_T(const CovarianceModel& model, const ScalarField& f, double t,
                 const Eigen::VectorXd& x, const QuadratureSpec& spec,
                 std::string_view tag) {
    return make_h_vector(model, grad_H_T_err(model, f, t, x, spec, tag).value);
}

VecWithError grad_H_T_err(const CovarianceModel& model, const ScalarField& f,
                          double t, const Eigen::VectorXd& x,
                          const QuadratureSpec& spec, std::string_view tag) {
    if (t <= 0.0) throw DomainError("grad_H_T: t must be positive");
    EvalContext cx(model, f, t, x, spec, tag);
    return grad_bounded(cx);
}

Eigen::MatrixXd hess_H_T(const CovarianceModel& model, const ScalarField& f,
                         double t, const Eigen::VectorXd& x,
                         const QuadratureSpec& spec, std::string_view tag) {
    return hess_H_T_err(model, f, t, x, spec, tag).value;
}

MatWithError hess_H_T_err(const CovarianceModel& model, const ScalarField& f,
                          double t, const Eigen::VectorXd& x,
                          const QuadratureSpec& spec, std::string_view tag) {
    if (t <= 0.0) throw DomainError("hess_H_T: t must be positive");
    EvalContext cx(model, f, t, x, spec, tag);
    return hess_bounded(cx);
}

SymTensor3 d3_H_T(const CovarianceModel& model, const ScalarField& f, double t,
                  const Eigen::VectorXd& x, const QuadratureSpec& spec,
                  std::string_view tag) {
    return d3_H_T_err(model, f, t, x, spec, tag).value;
}

TensWithError d3_H_T_err(const CovarianceModel& model, const ScalarField& f,
                         double t, const Eigen::VectorXd& x,
                         const QuadratureSpec& spec, std::string_view tag) {
    if (t <= 0.0) throw DomainError("d3_H_T: t must be positive");
    EvalContext cx(model, f, t, x, spec, tag);
    return d3_bounded(cx);
}

HVector grad_H_T_c1(const CovarianceModel& model, const ScalarField& f, double t,
                    const Eigen::VectorXd& x, const QuadratureSpec& spec,
                    std::string_view tag) {
    return make_h_vector(model, grad_H_T_c1_err(model, f, t, x, spec, tag).value);
}

VecWithError grad_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag) {
    check_inputs(model, f, x);
    if (t < 0.0) throw DomainError("grad_H_T_c1: t must be >= 0");
    if (!f.hasHGradient()) {
        throw MissingMetadataError("grad_H_T_c1: field lacks a closed-form H-gradient");
    }
    if (t == 0.0) return {f.hGradWhitened(x), 0.0};
    EvalContext cx(model, f, t, x, spec, tag);
    return grad_c1_impl(cx);
}

Eigen::MatrixXd hess_H_T_c1(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag) {
    return hess_H_T_c1_err(model, f, t, x, spec, tag).value;
}

MatWithError hess_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag) {
    if (t <= 0.0) throw DomainError("hess_H_T_c1: t must be positive");
    if (!f.hasHGradient()) {
        throw MissingMetadataError("hess_H_T_c1: field lacks a closed-form H-gradient");
    }
    EvalContext cx(model, f, t, x, spec, tag);
    return hess_c1_impl(cx);
}

SymTensor3 d3_H_T_c1(const CovarianceModel& model, const ScalarField& f, double t,
                     const Eigen::VectorXd& x, const QuadratureSpec& spec,
                     std::string_view tag) {
    return d3_H_T_c1_err(model, f, t, x, spec, tag).value;
}

TensWithError d3_H_T_c1_err(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag) {
    if (t <= 0.0) throw DomainError("d3_H_T_c1: t must be positive");
    if (!f.hasHGradient()) {
        throw MissingMetadataError("d3_H_T_c1: field lacks a closed-form H-gradient");
    }
    EvalContext cx(model, f, t, x, spec, tag);
    return d3_c1_impl(cx);
}

Eigen::MatrixXd hess_H_T_c2(const CovarianceModel& model, const ScalarField& f,
                            double t, const Eigen::VectorXd& x,
                            const QuadratureSpec& spec, std::string_view tag) {
    return hess_H_T_c2_err(model, f, t, x, spec, tag).value;
}

MatWithError hess_H_T_c2_err(const CovarianceModel& model, const ScalarField& f,
                             double t, const Eigen::VectorXd& x,
                             const QuadratureSpec& spec, std::string_view tag) {
    check_inputs(model, f, x);
    if (t < 0.0) throw DomainError("hess_H_T_c2: t must be >= 0");
    if (!f.hasHHessian()) {
        throw MissingMetadataError("hess_H_T_c2: field lacks a closed-form H-Hessian");
    }
    if (t == 0.0) return {f.hHessWhitened(x), 0.0};
    EvalContext cx(model, f, t, x, spec, tag);
    return hess_c2_impl(cx);
}

} // namespace mehler
