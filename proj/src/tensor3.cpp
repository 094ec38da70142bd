#include "mehler/tensor3.hpp"

#include <algorithm>
#include <cmath>

#include "mehler/errors.hpp"
#include "mehler/rng.hpp"

namespace mehler {

SymTensor3::SymTensor3(int r) : r_(r) {
    if (r < 0) throw DomainError("SymTensor3: negative dimension");
    a_.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r) *
                  static_cast<std::size_t>(r),
              0.0);
}

double& SymTensor3::at(int i, int j, int k) {
    return a_[(static_cast<std::size_t>(i) * static_cast<std::size_t>(r_) +
               static_cast<std::size_t>(j)) *
                  static_cast<std::size_t>(r_) +
              static_cast<std::size_t>(k)];
}

double SymTensor3::at(int i, int j, int k) const {
    return a_[(static_cast<std::size_t>(i) * static_cast<std::size_t>(r_) +
               static_cast<std::size_t>(j)) *
                  static_cast<std::size_t>(r_) +
              static_cast<std::size_t>(k)];
}

double SymTensor3::maxAsymmetry() const {
    double m = 0.0;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            for (int k = 0; k < r_; ++k) {
                const double v = at(i, j, k);
                m = std::max(m, std::abs(v - at(i, k, j)));
                m = std::max(m, std::abs(v - at(j, i, k)));
                m = std::max(m, std::abs(v - at(k, j, i)));
            }
    return m;
}

double SymTensor3::maxAbs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double SymTensor3::maxAbsDiff(const SymTensor3& other) const {
    if (other.r_ != r_) throw DomainError("SymTensor3: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - other.a_[i]));
    return m;
}

Eigen::VectorXd SymTensor3::applyTwice(const Eigen::VectorXd& u) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(r_);
    for (int i = 0; i < r_; ++i) {
        double s = 0.0;
        for (int j = 0; j < r_; ++j)
            for (int k = 0; k < r_; ++k) s += at(i, j, k) * u(j) * u(k);
        v(i) = s;
    }
    return v;
}

double SymTensor3::cubic(const Eigen::VectorXd& u) const {
    double s = 0.0;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            for (int k = 0; k < r_; ++k) s += at(i, j, k) * u(i) * u(j) * u(k);
    return s;
}

double SymTensor3::normLowerBound(std::uint64_t seed, int restarts) const {
    if (r_ == 0) return 0.0;
    const double frob2 = [this] {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return s;
    }();
    if (frob2 == 0.0) return 0.0;
    if (r_ == 1) return std::abs(at(0, 0, 0));

    double best = 0.0;
    // Shifted symmetric higher-order power method: the shift makes the map
    // monotone, so each run converges to a local maximizer of |T(u,u,u)|.
    const double shift = std::sqrt(frob2);
    UniformStream us(derive_stream_seed(seed, "tensor3-norm"));
    for (int run = 0; run < restarts; ++run) {
        Eigen::VectorXd u(r_);
        for (int i = 0; i < r_; ++i) u(i) = normal_quantile(us.next());
        if (u.norm() == 0.0) continue;
        u.normalize();
        double sign = 1.0;
        if (cubic(u) < 0.0) sign = -1.0; // maximize sign * T(u,u,u)
        for (int it = 0; it < 60; ++it) {
            Eigen::VectorXd v = sign * applyTwice(u) + shift * u;
            const double n = v.norm();
            if (n == 0.0) break;
            u = v / n;
        }
        best = std::max(best, std::abs(cubic(u)));
    }

    // Dense scans are affordable and exhaustive in low rank.
    if (r_ == 2) {
        const double pi = 3.14159265358979323846;
        for (int i = 0; i < 20000; ++i) {
            const double th = pi * i / 20000.0; // antipodal symmetry: half circle
            Eigen::VectorXd u(2);
            u << std::cos(th), std::sin(th);
            best = std::max(best, std::abs(cubic(u)));
        }
    } else if (r_ == 3) {
        // Fibonacci sphere.
        const double ga = 2.39996322972865332; // golden angle
        const int N = 100000;
        Eigen::VectorXd u(3);
        for (int i = 0; i < N; ++i) {
            const double zc = 1.0 - 2.0 * (i + 0.5) / N;
            const double rad = std::sqrt(std::max(0.0, 1.0 - zc * zc));
            const double th = ga * i;
            u << rad * std::cos(th), rad * std::sin(th), zc;
            best = std::max(best, std::abs(cubic(u)));
        }
    }
    return best;
}

} // namespace mehler
