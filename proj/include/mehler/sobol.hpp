#pragma once

#include <cstdint>
#include <vector>

namespace mehler {

// Sobol low-discrepancy sequence (32-bit, gray-code order). Direction numbers
// are embedded for up to kMaxDims dimensions. The all-zero point at index 0 is
// skipped: the first next() returns the point of index 1, so every coordinate
// lies strictly inside (0,1).
class SobolSequence {
public:
    static constexpr int kMaxDims = 13;

    explicit SobolSequence(int dims);

    int dims() const { return dims_; }

    // Fills out[0..dims-1] with the next point.
    void next(double* out);
    void next(std::vector<double>& out);

private:
    int dims_;
    std::uint64_t counter_ = 0;
    std::vector<std::uint32_t> state_;              // current integer point
    std::vector<std::vector<std::uint32_t>> dirs_;  // direction numbers per dim
};

} // namespace mehler
