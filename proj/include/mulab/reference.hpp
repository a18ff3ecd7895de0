#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace mulab::reference {

// Serial reference implementations, deliberately naive and kept independent
// of the production kernels. Tests and the benchmark compare against them;
// nothing here is called from the fast paths.

// mu(n) and lambda(n) by per-integer trial division.
int mobius(uint64_t n);
int liouville(uint64_t n);
int mobius_squared(uint64_t n);

// Direct O(N^2) transform, kernel e^{sign * 2 pi i s n / N}, plain serial
// accumulation.
std::vector<std::complex<double>> dft_direct_serial(std::span<const std::complex<double>> values, int sign);

// Circular correlation by the definition, one thread, O(N^2).
std::vector<int64_t> circular_correlation_serial(std::span<const int64_t> f, std::span<const int64_t> g);

// Linear R(t) = sum_{1 <= n < x} f(n) g(n+t) from raw 1-based value arrays
// (f[0], g[0] unused).
int64_t linear_correlation_serial(std::span<const int8_t> f1, std::span<const int8_t> g1, uint64_t x,
                                  uint64_t t);

// Mean of |S(j/samples)|^2 over j = 0..samples-1 with
// S(alpha) = sum_n w(n) e^{2 pi i n alpha}, w(n) = weights1[n] (1-based).
// Trapezoid rule on one period of the integrand.
double trapezoid_energy(std::span<const double> weights1, uint64_t samples);

// sum_{n=0}^{N-1} e^{2 pi i n alpha}, for the geometric-sum bound checks.
std::complex<double> geometric_sum(uint64_t n_terms, double alpha);

}  // namespace mulab::reference
