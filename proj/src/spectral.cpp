#include "mulab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mulab/summation.hpp"

namespace mulab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

uint64_t next_pow2(uint64_t n) {
    uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 transform, kernel e^{sign * 2 pi i s n / N}.
// Twiddles come from std::polar per stage; the butterfly order is fixed, so
// results are identical on every run.
void fft_pow2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (n < 2) return;
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp transform: X_k = w_k * conv(x_n w_n, conj(w)) with
// w_m = e^{sign * pi i m^2 / N}; the convolution runs over a power of two
// >= 2N-1. Quadratic phases are reduced mod 2N before the trig call so the
// accuracy does not degrade with m.
std::vector<cplx> fft_bluestein(std::span<const cplx> x, int sign) {
    const uint64_t n = x.size();
    const uint64_t m = next_pow2(2 * n - 1);

    std::vector<cplx> chirp(n);
    for (uint64_t i = 0; i < n; ++i) {
        const uint64_t sq = static_cast<uint64_t>((static_cast<unsigned __int128>(i) * i) % (2 * n));
        chirp[i] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
    }

    std::vector<cplx> a(m, cplx{0.0, 0.0});
    std::vector<cplx> b(m, cplx{0.0, 0.0});
    for (uint64_t i = 0; i < n; ++i) a[i] = x[i] * chirp[i];
    b[0] = std::conj(chirp[0]);
    for (uint64_t i = 1; i < n; ++i) b[i] = b[m - i] = std::conj(chirp[i]);

    fft_pow2(a, +1);
    fft_pow2(b, +1);
    for (uint64_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, -1);

    std::vector<cplx> out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (uint64_t i = 0; i < n; ++i) out[i] = a[i] * inv_m * chirp[i];
    return out;
}

std::vector<cplx> transform(std::span<const cplx> values, int sign) {
    const size_t n = values.size();
    if (n == 0) throw std::invalid_argument("dft: N must be >= 1");
    if (is_pow2(n)) {
        std::vector<cplx> a(values.begin(), values.end());
        fft_pow2(a, sign);
        return a;
    }
    if (n < 64) return detail::dft_direct(values, sign).coeff;
    return fft_bluestein(values, sign);
}

double reduce_mod1(double alpha) {
    double r = alpha - std::floor(alpha);
    if (r >= 1.0) r = 0.0;  // guards against floor rounding at the seam
    return r;
}

}  // namespace

namespace detail {

Spectrum dft_direct(std::span<const cplx> values, int sign) {
    const size_t n = values.size();
    if (n == 0) throw std::invalid_argument("dft: N must be >= 1");
    Spectrum spec;
    spec.coeff.resize(n);
    const cplx* v = values.data();
    cplx* out = spec.coeff.data();
#pragma omp parallel for schedule(static)
    for (int64_t s = 0; s < static_cast<int64_t>(n); ++s) {
        NeumaierSum re, im;
        for (size_t k = 0; k < n; ++k) {
            // phase s*k mod N keeps the argument small for large inputs
            const uint64_t ph = static_cast<uint64_t>(
                (static_cast<unsigned __int128>(s) * k) % n);
            const cplx w = std::polar(1.0, sign * kTwoPi * static_cast<double>(ph) / static_cast<double>(n));
            const cplx term = v[k] * w;
            re.add(term.real());
            im.add(term.imag());
        }
        out[s] = cplx{re.value(), im.value()};
    }
    return spec;
}

cplx twisted_sum_serial(const int8_t* f, uint64_t lo, uint64_t hi, double alpha) {
    // Anchored rotation: the phase is recomputed exactly (long double) at
    // every block boundary, and advanced by one complex multiply inside a
    // block. Fixed block size + fixed order => bit-stable results.
    constexpr uint64_t kBlock = 4096;
    const long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;
    const long double alpha_l = static_cast<long double>(alpha);
    const cplx step = std::polar(1.0, kTwoPi * alpha);

    NeumaierSum re, im;
    for (uint64_t b0 = lo; b0 < hi; b0 += kBlock) {
        const uint64_t b1 = std::min(b0 + kBlock, hi);
        const long double frac = alpha_l * static_cast<long double>(b0) -
                                 std::floor(alpha_l * static_cast<long double>(b0));
        cplx z{static_cast<double>(std::cos(two_pi_l * frac)),
               static_cast<double>(std::sin(two_pi_l * frac))};
        for (uint64_t n = b0; n < b1; ++n) {
            const int8_t fv = f[n];
            if (fv != 0) {
                re.add(fv * z.real());
                im.add(fv * z.imag());
            }
            z *= step;
        }
    }
    return cplx{re.value(), im.value()};
}

}  // namespace detail

Spectrum dft_forward(std::span<const cplx> values) {
    Spectrum spec;
    spec.coeff = transform(values, +1);
    return spec;
}

Spectrum dft_forward(std::span<const double> values) {
    std::vector<cplx> tmp(values.size());
    for (size_t i = 0; i < values.size(); ++i) tmp[i] = cplx{values[i], 0.0};
    return dft_forward(std::span<const cplx>(tmp));
}

std::vector<cplx> dft_inverse_complex(const Spectrum& spectrum) {
    std::vector<cplx> out = transform(spectrum.coeff, -1);
    const double inv_n = 1.0 / static_cast<double>(out.size());
    for (cplx& c : out) c *= inv_n;
    return out;
}

std::vector<double> dft_inverse(const Spectrum& spectrum) {
    const std::vector<cplx> full = dft_inverse_complex(spectrum);
    std::vector<double> out(full.size());
    for (size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
    return out;
}

std::vector<double> embed_zero_slot(const ArithmeticTable& table, uint64_t n_points) {
    if (n_points == 0) throw std::invalid_argument("embed_zero_slot: N must be >= 1");
    if (n_points > 1 && !table.covers(1, n_points))
        throw std::invalid_argument("embed_zero_slot: table must cover [1, " + std::to_string(n_points) + ")");
    std::vector<double> v(n_points, 0.0);
    for (uint64_t n = 1; n < n_points; ++n) v[n] = table.at(n);
    return v;
}

TwistedSumValue twisted_sum(const ArithmeticTable& table, double alpha, uint64_t x) {
    if (!table.covers(1, x))
        throw std::invalid_argument("twisted_sum: table must cover [1, " + std::to_string(x) + ")");
    TwistedSumValue out;
    out.alpha = reduce_mod1(alpha);
    out.x = x;

    // Fixed-size chunks evaluated in parallel, combined in chunk order.
    constexpr uint64_t kChunk = 1u << 15;
    const uint64_t nchunks = (x - 1 + kChunk - 1) / kChunk;
    std::vector<cplx> partial(nchunks);
    const int8_t* f = table.shifted_data();
#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < static_cast<int64_t>(nchunks); ++c) {
        const uint64_t lo = 1 + static_cast<uint64_t>(c) * kChunk;
        const uint64_t hi = std::min(lo + kChunk, x);
        partial[static_cast<uint64_t>(c)] = detail::twisted_sum_serial(f, lo, hi, out.alpha);
    }
    NeumaierSum re, im;
    for (const cplx& p : partial) {
        re.add(p.real());
        im.add(p.imag());
    }
    out.value = cplx{re.value(), im.value()};

    const double lg = std::log(static_cast<double>(x));
    out.norm_c1 = std::abs(out.value) * lg / static_cast<double>(x);
    out.norm_c2 = std::abs(out.value) * lg * lg / static_cast<double>(x);
    return out;
}

SupTwistedResult sup_twisted_sum(const ArithmeticTable& table, uint64_t x, uint64_t denominator_bound,
                                 uint64_t random_samples, uint64_t seed) {
    if (denominator_bound < 1) throw std::invalid_argument("sup_twisted_sum: denominator bound must be >= 1");
    if (!table.covers(1, x))
        throw std::invalid_argument("sup_twisted_sum: table must cover [1, " + std::to_string(x) + ")");

    std::vector<double> alphas;
    for (uint64_t q = 1; q <= denominator_bound; ++q)
        for (uint64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) alphas.push_back(static_cast<double>(a) / static_cast<double>(q));

    // explicit (bits >> 11) * 2^-53 mapping instead of
    // uniform_real_distribution, whose output is implementation-defined
    std::mt19937_64 rng(seed);
    for (uint64_t i = 0; i < random_samples; ++i)
        alphas.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);

    std::vector<double> mags(alphas.size());
    std::vector<cplx> vals(alphas.size());
    const int8_t* f = table.shifted_data();
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t i = 0; i < static_cast<int64_t>(alphas.size()); ++i) {
        const cplx v = detail::twisted_sum_serial(f, 1, x, alphas[static_cast<size_t>(i)]);
        vals[static_cast<size_t>(i)] = v;
        mags[static_cast<size_t>(i)] = std::abs(v);
    }

    size_t best = 0;
    for (size_t i = 1; i < mags.size(); ++i)
        if (mags[i] > mags[best]) best = i;

    SupTwistedResult res;
    res.x = x;
    res.denominator_bound = denominator_bound;
    res.random_samples = random_samples;
    res.seed = seed;
    res.candidates = alphas.size();
    res.sup_alpha = alphas[best];
    res.sup_abs = mags[best];
    res.sup_value = vals[best];
    const double lg = std::log(static_cast<double>(x));
    res.ratio_c1 = res.sup_abs * lg / static_cast<double>(x);
    res.ratio_c2 = res.sup_abs * lg * lg / static_cast<double>(x);
    return res;
}

double parseval_energy(std::span<const double> weights) {
    bool integral = true;
    for (double w : weights)
        if (w != std::nearbyint(w)) {
            integral = false;
            break;
        }
    if (integral) {
        int64_t acc = 0;
        for (double w : weights) {
            const int64_t v = static_cast<int64_t>(std::llround(w));
            acc += v * v;
        }
        return static_cast<double>(acc);
    }
    NeumaierSum acc;
    for (double w : weights) acc.add(w * w);
    return acc.value();
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
    std::string out = "s,re,im,magnitude\n";
    char line[128];
    for (size_t s = 0; s < spectrum.size(); ++s) {
        const cplx& c = spectrum.coeff[s];
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g\n", s, c.real(), c.imag(), std::abs(c));
        out += line;
    }
    return out;
}

}  // namespace mulab
