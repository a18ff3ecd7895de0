#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mulab {

enum class FunctionId : uint8_t {
    Mobius = 0,         // mu(n): 0 if a square divides n, else (-1)^(distinct prime factors)
    Liouville = 1,      // lambda(n): (-1)^(prime factors with multiplicity), never 0
    MobiusSquared = 2,  // mu^2(n): squarefree indicator
};

const char* function_name(FunctionId fn);
FunctionId function_from_name(const std::string& name);  // mobius | liouville | mobius2

// A sieved block of exact values f(n) in {-1,0,+1} for n = start .. start+size-1.
// Immutable after construction; safe to share read-only across threads.
struct ArithmeticTable {
    FunctionId fn = FunctionId::Mobius;
    uint64_t start = 1;
    std::vector<int8_t> values;

    uint64_t size() const { return values.size(); }
    uint64_t end() const { return start + values.size(); }  // one past last covered n
    bool covers(uint64_t lo, uint64_t hi) const { return lo >= start && hi <= end() && lo <= hi; }
    int8_t at(uint64_t n) const { return values[n - start]; }

    // Raw pointer such that data1()[n] == f(n) for covered n. Valid only while
    // the table is alive; used by the inner loops.
    const int8_t* shifted_data() const { return values.data() - start; }
};

// Exact segmented sieve. Throws std::invalid_argument for start == 0 or
// length == 0 and std::overflow_error when start+length does not fit.
// segment = 0 picks the default (2^20); disjoint segments are sieved in
// parallel and the output is independent of the segmentation.
ArithmeticTable sieve(FunctionId fn, uint64_t start, uint64_t length, uint64_t segment = 0);

struct PartialSumSeries {
    FunctionId fn = FunctionId::Mobius;
    std::vector<std::pair<uint64_t, int64_t>> checkpoints;  // (x, sum over n < x)
};

// Exact prefix sums over the strict range table.start <= n < x for each
// checkpoint (with a table starting at 1 this is the usual Mertens-style
// sum). Checkpoints must be strictly increasing and inside
// [table.start, table.end()]; the error names the offending checkpoint.
PartialSumSeries partial_sums(const ArithmeticTable& table, std::span<const uint64_t> checkpoints);

// Compensated sum of f(n)/n over table.start <= n < x. Relative error is
// bounded by ~1e-15 * log(x), well inside the documented 1e-12.
double harmonic_sum(const ArithmeticTable& table, uint64_t x);

// Exact Q(x) = #(squarefree n < x), streamed in segments without
// materializing a table. Requires x >= 2.
uint64_t squarefree_count(uint64_t x);

// Primes <= limit by plain sieve of Eratosthenes (shared by the constants
// module and the sieve's base-prime setup).
std::vector<uint32_t> primes_upto(uint32_t limit);

}  // namespace mulab
