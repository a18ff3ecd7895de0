#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mulab/arith.hpp"
#include "mulab/spectral.hpp"

namespace mulab {

enum class CorrelationMode : uint8_t { Linear, Circular };

// Offsets a_0 < a_1 < ... < a_{k-1} with an optional linear coefficient q,
// so tuple members read q*n + a_i.
struct TupleSpec {
    std::vector<uint64_t> offsets;
    uint64_t q = 1;

    void validate() const;  // throws on empty/non-monotone offsets or q == 0
    std::string offsets_string() const;  // "0,1,2"
    static TupleSpec parse_offsets(const std::string& csv, uint64_t q = 1);
};

struct FactorDescriptor {
    FunctionId fn = FunctionId::Mobius;
    std::vector<uint64_t> offsets;  // shift offsets of the fixed left factors
};

// R(t) over a shift range, exact integers, with provenance.
struct CorrelationSeries {
    CorrelationMode mode = CorrelationMode::Linear;
    uint64_t x = 0;  // range length (linear) or period N (circular)
    std::vector<uint64_t> shifts;
    std::vector<int64_t> values;
    FactorDescriptor left;
    FunctionId right = FunctionId::Mobius;

    std::string to_csv() const;   // t,R,R_over_x,mode,k,offsets
    std::string to_json() const;  // same field names
};

// R(t) = sum_{1 <= n < x} f(n) g(n+t) for t = 0..t_max. The sum reads g
// beyond x, so g must cover [1, x + t_max); the error states the required
// upper bound. x = 0 means "all of f", i.e. x = f.end() (f must then start
// at 1).
CorrelationSeries correlate_linear(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t_max,
                                   uint64_t x = 0);

// Crosscorrelation of two different functions; same contract as
// correlate_linear.
CorrelationSeries crosscorrelate(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t_max,
                                 uint64_t x = 0);

enum class CircularPath : uint8_t { Auto, Direct, Fft };

// R(t) = sum_{n=0}^{N-1} f(n) g((n+t) mod N) for t = 0..N-1. Inputs must be
// integer-valued; the direct path accumulates in int64 and the FFT path
// (conj(f_hat) * g_hat, then inverse) rounds to the nearest integer. Auto
// picks direct for N <= 2^12 and FFT above.
CorrelationSeries correlate_circular(std::span<const double> f, std::span<const double> g,
                                     CircularPath path = CircularPath::Auto);

// Exact sum_{1 <= n < x} prod_i f(n + a_i) by direct product summation.
// Requires tuple.q == 1 and coverage of [1, x + a_{k-1}).
int64_t correlate_ktuple(const ArithmeticTable& base, const TupleSpec& tuple, uint64_t x);

// Exact sum_{1 <= n < x} prod_i w(n + b_i) * prod_j s(n + c_j) with w the
// squarefree-indicator table and s a signed table. The squared and plain
// offset sets must be disjoint.
int64_t correlate_nonlinear(const ArithmeticTable& weights, const ArithmeticTable& signs,
                            std::span<const uint64_t> squared_offsets,
                            std::span<const uint64_t> plain_offsets, uint64_t x);

// (1/x) sum_{1 <= t < x} R(t) over the series' shifts (t = 0 excluded).
double uniform_average(const CorrelationSeries& series);

// (1/x) sum_{1 <= t < x} R(t)/t, compensated, ascending t.
double harmonic_average(const CorrelationSeries& series);

// Computes R_hat two ways -- DFT of the direct circular correlation vs
// conj(f_hat(s)) * g_hat(s) -- and returns max_s of the absolute deviation.
// Contract: <= 1e-6 * N for N <= 2^14.
double spectrum_factorization_check(std::span<const double> f, std::span<const double> g);

struct NormExpansion {
    int64_t lhs = 0;       // R(t)^2, ascending-n accumulation
    int64_t rhs = 0;       // diagonal + (R(t)^2 - diagonal), descending-n R
    int64_t diff = 0;      // lhs - rhs, zero in exact arithmetic
    int64_t diagonal = 0;  // sum f(n)^2 f(n+t)^2
    int64_t off_diagonal = 0;
};

// Integer identity |R(t)|^2 = sum_n f(n)^2 f(n+t)^2 + sum_{m != n} ... ;
// the off-diagonal part is obtained by subtracting the diagonal from R(t)^2.
// The two R evaluations run in opposite iteration orders, so diff also
// witnesses order-independence of the exact path.
NormExpansion norm_expansion_check(const ArithmeticTable& f, uint64_t t, uint64_t x);

}  // namespace mulab
