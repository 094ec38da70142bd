#include "mehler/fields.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

std::string vec_label(const Eigen::VectorXd& v) {
    std::string out = "(";
    char buf[32];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%g", v(i));
        out += buf;
        if (i + 1 < v.size()) out += ",";
    }
    out += ")";
    return out;
}

} // namespace

struct ScalarField::Impl {
    Kind kind = Kind::Generic;
    std::string label;
    CovarianceModel model;
    std::function<double(const Eigen::VectorXd&)> eval;
    std::optional<RidgeData> ridge;       // Ridge/Linear/Quadratic (nonzero z)
    double constantValue = 0.0;           // Constant
    bool zeroField = false;               // identically zero (e.g. linear with a = 0)
    std::optional<double> declaredSup;    // Product/Generic
    bool formulaOnly = false;

    explicit Impl(CovarianceModel m) : model(std::move(m)) {}
};

double ScalarField::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != impl_->model.dim()) {
        throw DomainError("ScalarField: argument dimension mismatch");
    }
    return scale_ * impl_->eval(x);
}

ScalarField::Kind ScalarField::kind() const { return impl_->kind; }
const std::string& ScalarField::label() const { return impl_->label; }
const CovarianceModel& ScalarField::model() const { return impl_->model; }
int ScalarField::dim() const { return impl_->model.dim(); }

std::optional<double> ScalarField::supNorm() const {
    std::optional<double> base;
    switch (impl_->kind) {
    case Kind::Constant:
        base = std::abs(impl_->constantValue);
        break;
    case Kind::Ridge:
    case Kind::Linear:
    case Kind::Quadratic:
        base = impl_->zeroField ? std::optional<double>(0.0)
                                : impl_->ridge->profile->supNorm();
        break;
    case Kind::Product:
    case Kind::Generic:
        base = impl_->declaredSup;
        break;
    }
    if (!base) return std::nullopt;
    return std::abs(scale_) * *base;
}

std::optional<double> ScalarField::exactHolder(double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("exactHolder: alpha must lie in (0,1)");
    }
    if (impl_->kind == Kind::Constant || impl_->zeroField) return 0.0;
    if (impl_->ridge) {
        const RidgeData& r = *impl_->ridge;
        if (r.sigma == 0.0) return 0.0; // H-invariant
        const auto h = r.profile->holder(alpha);
        if (!h) return std::nullopt;
        return std::abs(scale_) * *h * std::pow(r.sigma, alpha);
    }
    return std::nullopt;
}

std::optional<double> ScalarField::supHGrad() const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return 0.0;
    if (impl_->ridge) {
        const RidgeData& r = *impl_->ridge;
        if (r.sigma == 0.0) return 0.0;
        if (!r.profile->isC1()) return std::nullopt;
        const auto sd = r.profile->supDeriv();
        if (!sd) return std::nullopt;
        return std::abs(scale_) * r.sigma * *sd;
    }
    return std::nullopt;
}

std::optional<double> ScalarField::supHHess() const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return 0.0;
    if (impl_->ridge) {
        const RidgeData& r = *impl_->ridge;
        if (r.sigma == 0.0) return 0.0;
        const auto sd = r.profile->supDeriv2();
        if (!sd) return std::nullopt;
        return std::abs(scale_) * r.sigma * r.sigma * *sd;
    }
    return std::nullopt;
}

std::optional<double> ScalarField::gradHolder(double alpha) const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return 0.0;
    if (impl_->ridge) {
        const RidgeData& r = *impl_->ridge;
        if (r.sigma == 0.0) return 0.0;
        const auto dh = r.profile->derivHolder(alpha);
        if (!dh) return std::nullopt;
        return std::abs(scale_) * *dh * std::pow(r.sigma, 1.0 + alpha);
    }
    return std::nullopt;
}

std::optional<double> ScalarField::hessHolder(double alpha) const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return 0.0;
    if (impl_->ridge) {
        const RidgeData& r = *impl_->ridge;
        if (r.sigma == 0.0) return 0.0;
        const auto dh = r.profile->deriv2Holder(alpha);
        if (!dh) return std::nullopt;
        return std::abs(scale_) * *dh * std::pow(r.sigma, 2.0 + alpha);
    }
    return std::nullopt;
}

bool ScalarField::formulaOnly() const { return impl_->formulaOnly; }

bool ScalarField::hasHGradient() const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return true;
    if (impl_->ridge) {
        return impl_->ridge->sigma == 0.0 || impl_->ridge->profile->isC1();
    }
    return false;
}

Eigen::VectorXd ScalarField::hGradWhitened(const Eigen::VectorXd& x) const {
    const int r = impl_->model.rank();
    if (impl_->kind == Kind::Constant || impl_->zeroField) {
        return Eigen::VectorXd::Zero(r);
    }
    if (impl_->ridge) {
        const RidgeData& rd = *impl_->ridge;
        if (rd.sigma == 0.0) return Eigen::VectorXd::Zero(r);
        const auto d = rd.profile->deriv(rd.z.dot(x));
        if (d) return (scale_ * *d) * rd.w;
    }
    throw MissingMetadataError("ScalarField: no closed-form H-gradient for " +
                               impl_->label);
}

bool ScalarField::hasHHessian() const {
    if (impl_->kind == Kind::Constant || impl_->zeroField) return true;
    if (impl_->ridge) {
        return impl_->ridge->sigma == 0.0 ||
               impl_->ridge->profile->deriv2(0.0).has_value();
    }
    return false;
}

Eigen::MatrixXd ScalarField::hHessWhitened(const Eigen::VectorXd& x) const {
    const int r = impl_->model.rank();
    if (impl_->kind == Kind::Constant || impl_->zeroField) {
        return Eigen::MatrixXd::Zero(r, r);
    }
    if (impl_->ridge) {
        const RidgeData& rd = *impl_->ridge;
        if (rd.sigma == 0.0) return Eigen::MatrixXd::Zero(r, r);
        const auto d2 = rd.profile->deriv2(rd.z.dot(x));
        if (d2) return (scale_ * *d2) * (rd.w * rd.w.transpose());
    }
    throw MissingMetadataError("ScalarField: no closed-form H-Hessian for " +
                               impl_->label);
}

const RidgeData* ScalarField::ridge() const {
    return impl_->ridge ? &*impl_->ridge : nullptr;
}

ScalarField ScalarField::scaled(double kappa) const {
    ScalarField out = *this;
    out.scale_ *= kappa;
    return out;
}

ScalarField ScalarField::constant(const CovarianceModel& model, double c) {
    auto impl = std::make_shared<Impl>(model);
    impl->kind = Kind::Constant;
    impl->constantValue = c;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "constant(%g)", c);
    impl->label = buf;
    impl->eval = [c](const Eigen::VectorXd&) { return c; };
    return ScalarField(std::shared_ptr<const Impl>(std::move(impl)));
}

ScalarField ScalarField::generic(const CovarianceModel& model, std::string label,
                                 std::function<double(const Eigen::VectorXd&)> eval,
                                 std::optional<double> supNorm) {
    auto impl = std::make_shared<Impl>(model);
    impl->kind = Kind::Generic;
    impl->label = std::move(label);
    impl->eval = std::move(eval);
    impl->declaredSup = supNorm;
    impl->formulaOnly = !supNorm.has_value();
    return ScalarField(std::move(impl));
}

namespace {

ScalarField build_ridge_kind(const CovarianceModel& model, const Eigen::VectorXd& z,
                             ProfilePtr profile, ScalarField::Kind kind,
                             std::string label, bool formulaOnly) {
    auto impl = std::make_shared<ScalarField::Impl>(model);
    impl->kind = kind;
    impl->label = std::move(label);
    impl->formulaOnly = formulaOnly;
    RidgeData rd;
    rd.z = z;
    rd.profile = std::move(profile);
    rd.w = model.whitenedImage(z);
    rd.sigma = rd.w.norm();
    rd.what = rd.sigma > 0.0 ? Eigen::VectorXd(rd.w / rd.sigma)
                             : Eigen::VectorXd(Eigen::VectorXd::Zero(model.rank()));
    const ProfilePtr prof = rd.profile;
    const Eigen::VectorXd zc = z;
    impl->eval = [prof, zc](const Eigen::VectorXd& x) { return prof->value(zc.dot(x)); };
    impl->ridge = std::move(rd);
    return ScalarField(std::move(impl));
}

ScalarField zero_poly_field(const CovarianceModel& model, ScalarField::Kind kind,
                            std::string label) {
    auto impl = std::make_shared<ScalarField::Impl>(model);
    impl->kind = kind;
    impl->label = std::move(label);
    impl->zeroField = true;
    impl->eval = [](const Eigen::VectorXd&) { return 0.0; };
    return ScalarField(std::move(impl));
}

} // namespace

ScalarField make_ridge(const CovarianceModel& model, const Eigen::VectorXd& z,
                       ProfilePtr profile, std::string labelSuffix) {
    if (z.size() != model.dim()) throw SpecInvalidError("make_ridge: z dimension mismatch");
    if (z.norm() == 0.0) throw SpecInvalidError("make_ridge: z must be nonzero");
    if (!profile) throw SpecInvalidError("make_ridge: null profile");
    std::string label = profile->name() + "@" + vec_label(z) + labelSuffix;
    const bool unbounded = !profile->supNorm().has_value();
    return build_ridge_kind(model, z, std::move(profile), ScalarField::Kind::Ridge,
                            std::move(label), unbounded);
}

ScalarField make_linear(const CovarianceModel& model, const Eigen::VectorXd& a) {
    if (a.size() != model.dim()) throw SpecInvalidError("make_linear: dimension mismatch");
    std::string label = "linear@" + vec_label(a);
    if (a.norm() == 0.0) return zero_poly_field(model, ScalarField::Kind::Linear, label);
    return build_ridge_kind(model, a, linear_profile(), ScalarField::Kind::Linear,
                            std::move(label), true);
}

ScalarField make_quadratic(const CovarianceModel& model, const Eigen::VectorXd& a) {
    if (a.size() != model.dim()) throw SpecInvalidError("make_quadratic: dimension mismatch");
    std::string label = "quadratic@" + vec_label(a);
    if (a.norm() == 0.0) return zero_poly_field(model, ScalarField::Kind::Quadratic, label);
    return build_ridge_kind(model, a, quadratic_profile(), ScalarField::Kind::Quadratic,
                            std::move(label), true);
}

ScalarField make_product(const ScalarField& f, const ScalarField& g) {
    if (!f.model().sameModel(g.model())) {
        throw SpecInvalidError("make_product: factors built on different models");
    }
    auto impl = std::make_shared<ScalarField::Impl>(f.model());
    impl->kind = ScalarField::Kind::Product;
    impl->label = "product[" + f.label() + "," + g.label() + "]";
    const ScalarField fc = f, gc = g;
    impl->eval = [fc, gc](const Eigen::VectorXd& x) { return fc(x) * gc(x); };
    if (f.supNorm() && g.supNorm()) impl->declaredSup = *f.supNorm() * *g.supNorm();
    impl->formulaOnly = f.formulaOnly() || g.formulaOnly() || !impl->declaredSup;
    return ScalarField(std::move(impl));
}

std::optional<double> exact_holder(const ScalarField& f, double alpha) {
    return f.exactHolder(alpha);
}

} // namespace mehler
