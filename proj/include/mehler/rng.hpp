#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mehler {

// splitmix64 step; used to derive independent substreams from (seed, tag).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t s = seed ^ fnv1a64(tag);
    return splitmix64(s);
}

// Deterministic uniform stream on (0,1). The mapping from raw 64-bit words to
// doubles is fixed (top 53 bits), so output is identical across platforms with
// the same mt19937_64 seeding.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : gen_(seed) {}
    UniformStream(std::uint64_t seed, std::string_view tag)
        : gen_(derive_stream_seed(seed, tag)) {}

    double next() {
        // (x >> 11) * 2^-53 lies in [0,1); shift by half an ulp to avoid 0.
        std::uint64_t x = gen_();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
    }

private:
    std::mt19937_64 gen_;
};

// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
// accurate to ~1e-15 over (0,1).
double normal_quantile(double p);

// Standard normal CDF via erfc; used as the round-trip oracle for the quantile.
double normal_cdf(double x);

} // namespace mehler
