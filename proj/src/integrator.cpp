#include "mehler/integrator.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "mehler/errors.hpp"
#include "mehler/quad1d.hpp"
#include "mehler/rng.hpp"
#include "mehler/sobol.hpp"

namespace mehler {

void QuadratureSpec::validate() const {
    if (ghOrder < 2 || ghOrder > 4096) {
        throw SpecInvalidError("QuadratureSpec: ghOrder out of range [2, 4096]");
    }
    if (ghMaxDims < 0 || ghMaxDims > 8) {
        throw SpecInvalidError("QuadratureSpec: ghMaxDims out of range [0, 8]");
    }
    if (samples < 16 || samples > (1 << 24)) {
        throw SpecInvalidError("QuadratureSpec: samples out of range [16, 2^24]");
    }
}

QuadratureEngine resolve_engine(const QuadratureSpec& spec, int rank) {
    if (rank == 0) return QuadratureEngine::TensorGaussHermite; // point mass
    switch (spec.engine) {
    case QuadratureEngine::TensorGaussHermite:
    case QuadratureEngine::MonteCarlo:
        return spec.engine;
    case QuadratureEngine::Sobol:
        if (rank > SobolSequence::kMaxDims) {
            throw SpecInvalidError("QuadratureSpec: Sobol engine limited to 13 dimensions");
        }
        return spec.engine;
    case QuadratureEngine::Auto:
        break;
    }
    if (rank <= spec.ghMaxDims) return QuadratureEngine::TensorGaussHermite;
    if (rank <= SobolSequence::kMaxDims) return QuadratureEngine::Sobol;
    return QuadratureEngine::MonteCarlo;
}

namespace {

double tensor_gh(int rank, const std::function<double(const Eigen::VectorXd&)>& g,
                 int order) {
    if (rank == 0) {
        return g(Eigen::VectorXd());
    }
    const Rule1d& rule = hermite_rule(order);
    double total = 1.0;
    for (int d = 0; d < rank; ++d) {
        total *= static_cast<double>(order);
        if (total > 6.0e7) {
            throw SpecInvalidError("QuadratureSpec: tensor Gauss-Hermite grid too large");
        }
    }
    const std::uint64_t count = static_cast<std::uint64_t>(total);
    Eigen::VectorXd xi(rank);
    double sum = 0.0, comp = 0.0; // Kahan
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t rem = idx;
        double w = 1.0;
        for (int d = 0; d < rank; ++d) {
            const int id = static_cast<int>(rem % static_cast<std::uint64_t>(order));
            rem /= static_cast<std::uint64_t>(order);
            xi[d] = rule.nodes[id];
            w *= rule.weights[id];
        }
        const double term = w * g(xi);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// Mean over `samples` points; also captures the running mean after the first
// half so a single pass yields an internal error estimate.
struct StreamResult {
    double full = 0.0;
    double half = 0.0;
};

template <typename NextPoint>
StreamResult stream_mean(int rank, const std::function<double(const Eigen::VectorXd&)>& g,
                         int samples, NextPoint&& next) {
    Eigen::VectorXd xi(rank);
    double sum = 0.0, comp = 0.0;
    StreamResult out;
    const int halfAt = samples / 2;
    for (int i = 0; i < samples; ++i) {
        next(xi);
        const double term = g(xi);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (i + 1 == halfAt) out.half = sum / halfAt;
    }
    out.full = sum / samples;
    return out;
}

StreamResult sobol_mean(int rank, const std::function<double(const Eigen::VectorXd&)>& g,
                        int samples) {
    SobolSequence seq(rank);
    std::vector<double> u(static_cast<std::size_t>(rank));
    return stream_mean(rank, g, samples, [&](Eigen::VectorXd& xi) {
        seq.next(u);
        for (int d = 0; d < rank; ++d) xi[d] = normal_quantile(u[static_cast<std::size_t>(d)]);
    });
}

StreamResult mc_mean(int rank, const std::function<double(const Eigen::VectorXd&)>& g,
                     int samples, std::uint64_t seed, std::string_view tag) {
    UniformStream us(derive_stream_seed(seed, tag));
    return stream_mean(rank, g, samples, [&](Eigen::VectorXd& xi) {
        for (int d = 0; d < rank; ++d) xi[d] = normal_quantile(us.next());
    });
}

} // namespace

double integrate_whitened(const CovarianceModel& model,
                          const std::function<double(const Eigen::VectorXd&)>& g,
                          const QuadratureSpec& spec, std::string_view tag) {
    spec.validate();
    const int rank = model.rank();
    switch (resolve_engine(spec, rank)) {
    case QuadratureEngine::TensorGaussHermite:
        return tensor_gh(rank, g, spec.ghOrder);
    case QuadratureEngine::Sobol:
        return sobol_mean(rank, g, spec.samples).full;
    case QuadratureEngine::MonteCarlo:
        return mc_mean(rank, g, spec.samples, spec.seed, tag).full;
    case QuadratureEngine::Auto:
        break;
    }
    throw SpecInvalidError("integrate_whitened: unresolved engine");
}

IntegralWithError integrate_whitened_err(
    const CovarianceModel& model,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const QuadratureSpec& spec, std::string_view tag) {
    spec.validate();
    const int rank = model.rank();
    IntegralWithError out;
    switch (resolve_engine(spec, rank)) {
    case QuadratureEngine::TensorGaussHermite: {
        out.value = tensor_gh(rank, g, spec.ghOrder);
        if (rank == 0) {
            out.err = 0.0;
        } else {
            const int halfOrder = std::max(2, spec.ghOrder / 2);
            out.err = std::abs(out.value - tensor_gh(rank, g, halfOrder));
        }
        return out;
    }
    case QuadratureEngine::Sobol: {
        const StreamResult r = sobol_mean(rank, g, spec.samples);
        out.value = r.full;
        out.err = std::abs(r.full - r.half);
        return out;
    }
    case QuadratureEngine::MonteCarlo: {
        const StreamResult r = mc_mean(rank, g, spec.samples, spec.seed, tag);
        out.value = r.full;
        out.err = std::abs(r.full - r.half);
        return out;
    }
    case QuadratureEngine::Auto:
        break;
    }
    throw SpecInvalidError("integrate_whitened_err: unresolved engine");
}

double integrate_gaussian(const CovarianceModel& model,
                          const std::function<double(const Eigen::VectorXd&)>& g,
                          const QuadratureSpec& spec, std::string_view tag) {
    auto ambient = [&model, &g](const Eigen::VectorXd& xi) { return g(model.unwhiten(xi)); };
    return integrate_whitened(model, ambient, spec, tag);
}

IntegralWithError integrate_gaussian_err(
    const CovarianceModel& model,
    const std::function<double(const Eigen::VectorXd&)>& g,
    const QuadratureSpec& spec, std::string_view tag) {
    auto ambient = [&model, &g](const Eigen::VectorXd& xi) { return g(model.unwhiten(xi)); };
    return integrate_whitened_err(model, ambient, spec, tag);
}

} // namespace mehler
