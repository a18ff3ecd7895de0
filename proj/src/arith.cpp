#include "mulab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mulab/summation.hpp"

namespace mulab {

namespace {

constexpr uint64_t kDefaultSegment = 1u << 20;

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Sieve of one segment [lo, hi) for Mobius or Liouville. out[i] receives the
// value at n = lo + i. Every base prime p <= sqrt(hi-1) is divided out of
// each multiple with multiplicity; the leftover cofactor is then 1 or a
// single prime > sqrt(hi-1), which contributes one more sign flip.
void sieve_segment_signed(FunctionId fn, uint64_t lo, uint64_t hi,
                          std::span<const uint32_t> base_primes,
                          std::vector<uint64_t>& rem, int8_t* out) {
    const uint64_t len = hi - lo;
    rem.resize(len);
    for (uint64_t i = 0; i < len; ++i) {
        rem[i] = lo + i;
        out[i] = 1;
    }
    const bool mobius = (fn == FunctionId::Mobius);
    for (uint32_t p : base_primes) {
        uint64_t m = ((lo + p - 1) / p) * p;
        for (; m < hi; m += p) {
            const uint64_t i = m - lo;
            uint64_t r = rem[i];
            int e = 0;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            rem[i] = r;
            // -0 stays 0, so a square factor permanently pins the entry.
            if (mobius && e >= 2) out[i] = 0;
            if (e & 1) out[i] = static_cast<int8_t>(-out[i]);
        }
    }
    // Leftover cofactor is 1 or a single prime > sqrt(hi-1): one more flip.
    for (uint64_t i = 0; i < len; ++i)
        if (rem[i] > 1) out[i] = static_cast<int8_t>(-out[i]);
}

// mu^2 needs only the squarefull positions: mark multiples of p^2.
void sieve_segment_squarefree(uint64_t lo, uint64_t hi,
                              std::span<const uint32_t> base_primes, int8_t* out) {
    const uint64_t len = hi - lo;
    std::fill(out, out + len, int8_t{1});
    for (uint32_t p : base_primes) {
        const uint64_t p2 = static_cast<uint64_t>(p) * p;
        if (p2 >= hi) break;
        uint64_t m = ((lo + p2 - 1) / p2) * p2;
        for (; m < hi; m += p2) out[m - lo] = 0;
    }
}

void check_sieve_range(uint64_t start, uint64_t length) {
    if (start == 0) throw std::invalid_argument("sieve: start must be >= 1 (functions are defined on n >= 1)");
    if (length == 0) throw std::invalid_argument("sieve: length must be >= 1");
    if (start > std::numeric_limits<uint64_t>::max() - length)
        throw std::overflow_error("sieve: start + length exceeds the machine integer range");
}

}  // namespace

const char* function_name(FunctionId fn) {
    switch (fn) {
        case FunctionId::Mobius: return "mobius";
        case FunctionId::Liouville: return "liouville";
        case FunctionId::MobiusSquared: return "mobius2";
    }
    return "?";
}

FunctionId function_from_name(const std::string& name) {
    if (name == "mobius") return FunctionId::Mobius;
    if (name == "liouville") return FunctionId::Liouville;
    if (name == "mobius2") return FunctionId::MobiusSquared;
    throw std::invalid_argument("unknown arithmetic function '" + name +
                                "' (expected mobius, liouville or mobius2)");
}

std::vector<uint32_t> primes_upto(uint32_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(static_cast<size_t>(limit) + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint32_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

ArithmeticTable sieve(FunctionId fn, uint64_t start, uint64_t length, uint64_t segment) {
    check_sieve_range(start, length);
    if (segment == 0) segment = kDefaultSegment;

    const uint64_t hi = start + length;
    const uint64_t root = isqrt_u64(hi - 1);
    if (root > std::numeric_limits<uint32_t>::max())
        throw std::overflow_error("sieve: range upper bound too large for the base-prime sieve");
    const std::vector<uint32_t> base = primes_upto(static_cast<uint32_t>(root));

    ArithmeticTable table;
    table.fn = fn;
    table.start = start;
    table.values.resize(length);

    const uint64_t nseg = (length + segment - 1) / segment;
#pragma omp parallel
    {
        std::vector<uint64_t> rem;  // per-thread scratch
#pragma omp for schedule(dynamic, 1)
        for (int64_t s = 0; s < static_cast<int64_t>(nseg); ++s) {
            const uint64_t lo = start + static_cast<uint64_t>(s) * segment;
            const uint64_t up = std::min(lo + segment, hi);
            int8_t* out = table.values.data() + (lo - start);
            if (fn == FunctionId::MobiusSquared)
                sieve_segment_squarefree(lo, up, base, out);
            else
                sieve_segment_signed(fn, lo, up, base, rem, out);
        }
    }
    return table;
}

PartialSumSeries partial_sums(const ArithmeticTable& table, std::span<const uint64_t> checkpoints) {
    PartialSumSeries series;
    series.fn = table.fn;
    series.checkpoints.reserve(checkpoints.size());

    bool have_prev = false;
    uint64_t prev = 0;
    for (uint64_t x : checkpoints) {
        if (have_prev && x <= prev)
            throw std::invalid_argument("partial_sums: checkpoints must be strictly increasing (offender: " +
                                        std::to_string(x) + ")");
        if (x < table.start || x > table.end())
            throw std::invalid_argument("partial_sums: checkpoint " + std::to_string(x) +
                                        " outside table range [" + std::to_string(table.start) + ", " +
                                        std::to_string(table.end()) + "]");
        prev = x;
        have_prev = true;
    }

    int64_t acc = 0;
    uint64_t n = table.start;
    for (uint64_t x : checkpoints) {
        for (; n < x; ++n) acc += table.at(n);
        series.checkpoints.emplace_back(x, acc);
    }
    return series;
}

double harmonic_sum(const ArithmeticTable& table, uint64_t x) {
    if (x < table.start || x > table.end())
        throw std::invalid_argument("harmonic_sum: x = " + std::to_string(x) + " outside table range [" +
                                    std::to_string(table.start) + ", " + std::to_string(table.end()) + "]");
    const int8_t* f = table.shifted_data();
    return blocked_sum(table.start, x,
                       [f](uint64_t n) { return static_cast<double>(f[n]) / static_cast<double>(n); });
}

uint64_t squarefree_count(uint64_t x) {
    if (x < 2) throw std::invalid_argument("squarefree_count: requires x >= 2");
    const uint64_t hi = x;  // counts n in [1, x)
    const uint64_t root = isqrt_u64(hi - 1);
    const std::vector<uint32_t> base = primes_upto(static_cast<uint32_t>(root));

    const uint64_t segment = kDefaultSegment;
    const uint64_t nseg = (hi - 1 + segment - 1) / segment;
    int64_t total = 0;
#pragma omp parallel
    {
        std::vector<int8_t> buf(segment);
#pragma omp for schedule(dynamic, 1) reduction(+ : total)
        for (int64_t s = 0; s < static_cast<int64_t>(nseg); ++s) {
            const uint64_t lo = 1 + static_cast<uint64_t>(s) * segment;
            const uint64_t up = std::min(lo + segment, hi);
            sieve_segment_squarefree(lo, up, base, buf.data());
            int64_t cnt = 0;
            for (uint64_t i = 0; i < up - lo; ++i) cnt += buf[i];
            total += cnt;
        }
    }
    return static_cast<uint64_t>(total);
}

}  // namespace mulab
