#include "mulab/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mulab::reference {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int mobius(uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: undefined at 0");
    int sign = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

int liouville(uint64_t n) {
    if (n == 0) throw std::invalid_argument("liouville: undefined at 0");
    int sign = 1;
    for (uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            sign = -sign;
        }
    if (n > 1) sign = -sign;
    return sign;
}

int mobius_squared(uint64_t n) {
    const int m = mobius(n);
    return m * m;
}

std::vector<std::complex<double>> dft_direct_serial(std::span<const std::complex<double>> values,
                                                    int sign) {
    const size_t n = values.size();
    std::vector<std::complex<double>> out(n);
    for (size_t s = 0; s < n; ++s) {
        std::complex<double> acc{0.0, 0.0};
        for (size_t k = 0; k < n; ++k) {
            const uint64_t ph = static_cast<uint64_t>((static_cast<unsigned __int128>(s) * k) % n);
            acc += values[k] * std::polar(1.0, sign * kTwoPi * static_cast<double>(ph) / static_cast<double>(n));
        }
        out[s] = acc;
    }
    return out;
}

std::vector<int64_t> circular_correlation_serial(std::span<const int64_t> f, std::span<const int64_t> g) {
    const uint64_t n = f.size();
    std::vector<int64_t> r(n, 0);
    for (uint64_t t = 0; t < n; ++t)
        for (uint64_t i = 0; i < n; ++i) r[t] += f[i] * g[(i + t) % n];
    return r;
}

int64_t linear_correlation_serial(std::span<const int8_t> f1, std::span<const int8_t> g1, uint64_t x,
                                  uint64_t t) {
    int64_t acc = 0;
    for (uint64_t n = 1; n < x; ++n) acc += static_cast<int64_t>(f1[n]) * g1[n + t];
    return acc;
}

double trapezoid_energy(std::span<const double> weights1, uint64_t samples) {
    // S is 1-periodic, so the trapezoid rule over [0,1] collapses to the
    // plain mean of the samples at j/samples.
    double total = 0.0;
    for (uint64_t j = 0; j < samples; ++j) {
        const double alpha = static_cast<double>(j) / static_cast<double>(samples);
        std::complex<double> s{0.0, 0.0};
        for (size_t n = 1; n < weights1.size(); ++n)
            if (weights1[n] != 0.0)
                s += weights1[n] * std::polar(1.0, kTwoPi * alpha * static_cast<double>(n));
        total += std::norm(s);
    }
    return total / static_cast<double>(samples);
}

std::complex<double> geometric_sum(uint64_t n_terms, double alpha) {
    std::complex<double> acc{0.0, 0.0};
    for (uint64_t n = 0; n < n_terms; ++n)
        acc += std::polar(1.0, kTwoPi * alpha * static_cast<double>(n));
    return acc;
}

}  // namespace mulab::reference
