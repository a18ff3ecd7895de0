// Kernel benchmark: OpenMP production paths against the serial reference
// implementations, with checksums so a speedup never hides a wrong answer.
//
//   ./bench_kernels [threads]

#include <omp.h>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "mulab/constants.hpp"
#include "mulab/harness.hpp"
#include "mulab/reference.hpp"

using namespace mulab;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-44s %10.1f %10.1f %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, same ? "values match" : "VALUES DIFFER");
}

int64_t table_checksum(const ArithmeticTable& t) {
    int64_t acc = 0;
    for (uint64_t n = t.start; n < t.end(); ++n) acc += static_cast<int64_t>(n % 97) * t.at(n);
    return acc;
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    std::printf("threads: %d\n\n", threads);
    std::printf("%-44s %10s %10s %9s\n", "kernel", "serial ms", "par ms", "speedup");

    // sieve vs per-integer trial division, same range
    {
        constexpr uint64_t len = 300000;
        int64_t ref_sum = 0;
        ArithmeticTable fast;
        const double t_ref = time_ms([&] {
            for (uint64_t n = 1; n <= len; ++n) ref_sum += static_cast<int64_t>(n % 97) * reference::mobius(n);
        });
        omp_set_num_threads(threads);
        const double t_fast = time_ms([&] { fast = sieve(FunctionId::Mobius, 1, len); });
        row("mobius values to 3e5: trial division / sieve", t_ref, t_fast,
            ref_sum == table_checksum(fast));
    }

    // segmented sieve, 1 thread vs N threads
    {
        constexpr uint64_t len = 10000000;
        ArithmeticTable one, many;
        omp_set_num_threads(1);
        const double t1 = time_ms([&] { one = sieve(FunctionId::Liouville, 1, len); });
        omp_set_num_threads(threads);
        const double tn = time_ms([&] { many = sieve(FunctionId::Liouville, 1, len); });
        row("lambda sieve to 1e7: 1 thread / N threads", t1, tn, one.values == many.values);
    }

    // direct DFT: serial reference vs parallel production path
    {
        constexpr size_t n = 2048;
        const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, n);
        const std::vector<double> v = embed_zero_slot(mu, n);
        std::vector<cplx> vc(n);
        for (size_t i = 0; i < n; ++i) vc[i] = cplx{v[i], 0.0};

        std::vector<cplx> ref;
        Spectrum par;
        const double t_ref = time_ms([&] { ref = reference::dft_direct_serial(vc, +1); });
        omp_set_num_threads(threads);
        const double t_par = time_ms([&] { par = detail::dft_direct(vc, +1); });
        double dev = 0.0;
        for (size_t s = 0; s < n; ++s) dev = std::max(dev, std::abs(ref[s] - par.coeff[s]));
        row("direct DFT N=2048: serial / parallel", t_ref, t_par, dev < 1e-6);

        Spectrum fft;
        const double t_fft = time_ms([&] { fft = dft_forward(std::span<const double>(v)); });
        double dev2 = 0.0;
        for (size_t s = 0; s < n; ++s) dev2 = std::max(dev2, std::abs(ref[s] - fft.coeff[s]));
        row("direct DFT N=2048: serial / radix-2 FFT", t_ref, t_fft, dev2 < 1e-6);
    }

    // circular correlation: serial O(N^2) vs parallel direct vs FFT
    {
        constexpr size_t n = 4096;
        const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, n);
        const std::vector<double> v = embed_zero_slot(mu, n);
        std::vector<int64_t> vi(n);
        for (size_t i = 0; i < n; ++i) vi[i] = static_cast<int64_t>(v[i]);

        std::vector<int64_t> ref;
        CorrelationSeries direct, fft;
        const double t_ref = time_ms([&] { ref = reference::circular_correlation_serial(vi, vi); });
        omp_set_num_threads(threads);
        const double t_dir = time_ms([&] { direct = correlate_circular(v, v, CircularPath::Direct); });
        const double t_fft = time_ms([&] { fft = correlate_circular(v, v, CircularPath::Fft); });
        row("circular corr N=4096: serial / parallel", t_ref, t_dir, ref == direct.values);
        row("circular corr N=4096: serial / FFT", t_ref, t_fft, ref == fft.values);
    }

    // linear correlation sweep over 256 shifts
    {
        constexpr uint64_t x = 200000, tmax = 255;
        const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, x + tmax);
        std::vector<int8_t> one_based(mu.end(), 0);
        for (uint64_t n = 1; n < mu.end(); ++n) one_based[n] = mu.at(n);

        std::vector<int64_t> ref(tmax + 1);
        CorrelationSeries par;
        const double t_ref = time_ms([&] {
            for (uint64_t t = 0; t <= tmax; ++t)
                ref[t] = reference::linear_correlation_serial(one_based, one_based, x, t);
        });
        omp_set_num_threads(threads);
        const double t_par = time_ms([&] { par = correlate_linear(mu, mu, tmax, x); });
        row("linear corr x=2e5, 256 shifts: serial / par", t_ref, t_par, ref == par.values);
    }

    // twisted-sum scan
    {
        constexpr uint64_t x = 100000;
        const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, x);
        SupTwistedResult one, many;
        omp_set_num_threads(1);
        const double t1 = time_ms([&] { one = sup_twisted_sum(mu, x, 30, 100, 1); });
        omp_set_num_threads(threads);
        const double tn = time_ms([&] { many = sup_twisted_sum(mu, x, 30, 100, 1); });
        row("twisted sup x=1e5 Q=30 m=100: 1 / N threads", t1, tn,
            one.sup_abs == many.sup_abs && one.sup_alpha == many.sup_alpha);
    }

    // Euler product
    {
        TupleSpec pair;
        pair.offsets = {0, 1};
        EulerProductResult one, many;
        omp_set_num_threads(1);
        const double t1 = time_ms([&] { one = singular_series(pair, 300000); });
        omp_set_num_threads(threads);
        const double tn = time_ms([&] { many = singular_series(pair, 300000); });
        row("singular series P=3e5 k=2: 1 / N threads", t1, tn, one.value == many.value);
    }

    return 0;
}
