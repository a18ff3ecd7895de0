#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mulab {

// Neumaier variant of Kahan summation: running error compensation that also
// survives |term| > |sum|.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Deterministic parallel reduction: [lo, hi) is split into fixed-size blocks,
// each block is summed sequentially (compensated), block results are combined
// in block order. The partition depends only on `block`, never on the thread
// count, so the result is bit-stable for any OpenMP schedule.
template <class Term>
double blocked_sum(uint64_t lo, uint64_t hi, Term&& term, uint64_t block = 1u << 16) {
    if (hi <= lo) return 0.0;
    const uint64_t nblocks = (hi - lo + block - 1) / block;
    std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        const uint64_t b0 = lo + static_cast<uint64_t>(b) * block;
        const uint64_t b1 = b0 + block < hi ? b0 + block : hi;
        NeumaierSum acc;
        for (uint64_t i = b0; i < b1; ++i) acc.add(term(i));
        partial[static_cast<uint64_t>(b)] = acc.value();
    }
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

// Same scheme for int64 terms. Integer addition is associative, so this is
// exact for any partition; blocking just keeps the loop shape uniform.
template <class Term>
int64_t blocked_isum(uint64_t lo, uint64_t hi, Term&& term, uint64_t block = 1u << 18) {
    if (hi <= lo) return 0;
    const uint64_t nblocks = (hi - lo + block - 1) / block;
    std::vector<int64_t> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        const uint64_t b0 = lo + static_cast<uint64_t>(b) * block;
        const uint64_t b1 = b0 + block < hi ? b0 + block : hi;
        int64_t acc = 0;
        for (uint64_t i = b0; i < b1; ++i) acc += term(i);
        partial[static_cast<uint64_t>(b)] = acc;
    }
    int64_t total = 0;
    for (int64_t p : partial) total += p;
    return total;
}

}  // namespace mulab
