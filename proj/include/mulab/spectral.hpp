#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mulab/arith.hpp"

namespace mulab {

using cplx = std::complex<double>;

// Transform convention, recorded on every spectrum: the forward kernel is
// e^{+2*pi*i*s*n/N}, the inverse uses e^{-2*pi*i*s*n/N} with a 1/N factor.
enum class DftConvention : uint8_t { ForwardPositive = 0 };

struct Spectrum {
    std::vector<cplx> coeff;
    DftConvention convention = DftConvention::ForwardPositive;

    size_t size() const { return coeff.size(); }
};

// f_hat(s) = sum_{n=0}^{N-1} f(n) e^{+2 pi i s n / N}. Power-of-two N runs
// the radix-2 kernel, other N >= 64 the Bluestein chirp transform, small N
// direct summation. All paths agree within 1e-9 relative (tested property).
Spectrum dft_forward(std::span<const double> values);
Spectrum dft_forward(std::span<const cplx> values);

// Exact inverse of dft_forward up to roundoff; round-trip error is within
// 1e-9 * max|v| * N absolute.
std::vector<cplx> dft_inverse_complex(const Spectrum& spectrum);
std::vector<double> dft_inverse(const Spectrum& spectrum);

// Embeds f(1..N-1) from the table into slots 1..N-1 of an N-vector with
// slot 0 = 0, so sums over 1 <= n < N are reproduced verbatim while the
// transform stays an exact N-point pair.
std::vector<double> embed_zero_slot(const ArithmeticTable& table, uint64_t n_points);

struct TwistedSumValue {
    double alpha = 0.0;  // reduced mod 1
    uint64_t x = 0;
    cplx value{0.0, 0.0};   // sum_{1 <= n < x} f(n) e^{2 pi i alpha n}
    double norm_c1 = 0.0;   // |value| * (log x) / x
    double norm_c2 = 0.0;   // |value| * (log x)^2 / x
};

// Compensated, fixed-order evaluation; bit-stable for any thread count and
// deterministic to well below 1e-10 relative.
TwistedSumValue twisted_sum(const ArithmeticTable& table, double alpha, uint64_t x);

struct SupTwistedResult {
    uint64_t x = 0;
    uint64_t denominator_bound = 0;
    uint64_t random_samples = 0;
    uint64_t seed = 0;
    size_t candidates = 0;   // number of alphas scanned
    double sup_alpha = 0.0;  // argmax
    double sup_abs = 0.0;
    cplx sup_value{0.0, 0.0};
    double ratio_c1 = 0.0;  // sup * (log x) / x
    double ratio_c2 = 0.0;  // sup * (log x)^2 / x
};

// Supremum of |twisted_sum| over all reduced fractions a/q with q <= Q
// (alpha in [0,1), so alpha = 0 enters as 0/1) plus m seeded uniform random
// alphas. Deterministic for a fixed seed; ties resolve to the earliest
// candidate in (q, a, draw) order.
SupTwistedResult sup_twisted_sum(const ArithmeticTable& table, uint64_t x, uint64_t denominator_bound,
                                 uint64_t random_samples, uint64_t seed);

// sum_n w(n)^2, the analytic value of the unit-interval energy integral of
// S(alpha) = sum_n w(n) e^{2 pi i n alpha}. Exact (int64) when the weights
// are integer-valued; compensated otherwise.
double parseval_energy(std::span<const double> weights);

// Spectrum CSV with mandatory header: s,re,im,magnitude.
std::string spectrum_to_csv(const Spectrum& spectrum);

namespace detail {
// Direct O(N^2) evaluation with the same convention; the oracle side of the
// FFT/direct dual route and the small-N path.
Spectrum dft_direct(std::span<const cplx> values, int sign);
// Serial core of twisted_sum, shared by sup_twisted_sum's candidate loop.
cplx twisted_sum_serial(const int8_t* f, uint64_t lo, uint64_t hi, double alpha);
}  // namespace detail

}  // namespace mulab
