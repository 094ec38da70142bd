#include "mehler/sobol.hpp"

#include <bit>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

constexpr int kBits = 32;

struct DimInit {
    int s;                  // primitive polynomial degree
    std::uint32_t a;        // inner polynomial coefficients
    std::uint32_t m[6];     // initial direction integers m_1..m_s (odd)
};

// Initialization rows for dimensions 2..13.
constexpr DimInit kInit[] = {
    {1, 0, {1, 0, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0, 0}},
    {4, 4, {1, 3, 5, 13, 0, 0}},
    {5, 2, {1, 1, 5, 5, 17, 0}},
    {5, 4, {1, 1, 5, 5, 5, 0}},
    {5, 7, {1, 1, 7, 11, 19, 0}},
    {5, 11, {1, 1, 5, 1, 1, 0}},
    {5, 13, {1, 1, 1, 3, 11, 0}},
    {5, 14, {1, 3, 5, 5, 31, 0}},
};

std::vector<std::uint32_t> build_directions(int dim) {
    std::vector<std::uint32_t> v(kBits + 1, 0);
    if (dim == 1) {
        for (int k = 1; k <= kBits; ++k) v[k] = 1u << (kBits - k);
        return v;
    }
    const DimInit& di = kInit[dim - 2];
    const int s = di.s;
    for (int k = 1; k <= s; ++k) v[k] = di.m[k - 1] << (kBits - k);
    for (int k = s + 1; k <= kBits; ++k) {
        v[k] = v[k - s] ^ (v[k - s] >> s);
        for (int i = 1; i <= s - 1; ++i) {
            v[k] ^= ((di.a >> (s - 1 - i)) & 1u) * v[k - i];
        }
    }
    return v;
}

} // namespace

SobolSequence::SobolSequence(int dims) : dims_(dims) {
    if (dims < 1 || dims > kMaxDims) {
        throw SpecInvalidError("SobolSequence: dimension out of supported range 1.." +
                               std::to_string(kMaxDims));
    }
    state_.assign(dims_, 0u);
    dirs_.reserve(dims_);
    for (int d = 1; d <= dims_; ++d) dirs_.push_back(build_directions(d));
}

void SobolSequence::next(double* out) {
    // Gray-code step: flip by the direction number of the lowest zero bit of
    // the previous index.
    const int c = std::countr_one(counter_) + 1;
    ++counter_;
    for (int d = 0; d < dims_; ++d) {
        state_[d] ^= dirs_[d][c];
        out[d] = static_cast<double>(state_[d]) * 0x1p-32;
    }
}

void SobolSequence::next(std::vector<double>& out) {
    out.resize(dims_);
    next(out.data());
}

} // namespace mehler
