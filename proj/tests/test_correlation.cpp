#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "mulab/correlation.hpp"
#include "mulab/reference.hpp"

using namespace mulab;

namespace {

std::vector<double> seeded_pm1(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = (rng() & 1) ? 1.0 : -1.0;
    return v;
}

}  // namespace

TEST_CASE("correlate_linear: hand value at x=6, t=1") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 8);
    const CorrelationSeries s = correlate_linear(mu, mu, 1, 6);
    // mu1mu2 + mu2mu3 + mu3mu4 + mu4mu5 + mu5mu6 = -1+1+0+0-1
    CHECK(s.values[1] == -1);
    CHECK(s.shifts == std::vector<uint64_t>{0, 1});
    CHECK(s.mode == CorrelationMode::Linear);
}

TEST_CASE("correlate_linear: R(0) is the squarefree count") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 2000);
    const CorrelationSeries s = correlate_linear(mu, mu, 0, 2000);
    CHECK(s.values[0] == static_cast<int64_t>(squarefree_count(2000)));
}

TEST_CASE("correlate_linear: x=1e5 smallness and serial oracle agreement") {
    constexpr uint64_t x = 100000;
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, x + 8);
    const CorrelationSeries s = correlate_linear(mu, mu, 8, x);
    std::vector<int8_t> one_based(mu.end(), 0);  // one_based[n] = mu(n)
    for (uint64_t n = 1; n < mu.end(); ++n) one_based[n] = mu.at(n);
    for (uint64_t t = 1; t <= 8; ++t) {
        CHECK(std::abs(static_cast<double>(s.values[t])) / x < 0.05);
        CHECK(s.values[t] == reference::linear_correlation_serial(one_based, one_based, x, t));
    }
}

TEST_CASE("correlate_linear: insufficient right coverage names the needed bound") {
    const ArithmeticTable f = sieve(FunctionId::Mobius, 1, 100);
    const ArithmeticTable g = sieve(FunctionId::Mobius, 1, 100);
    CHECK_THROWS_WITH_AS(correlate_linear(f, g, 50, 100), doctest::Contains("150"),
                         std::invalid_argument);
}

TEST_CASE("correlate_circular: delta and constant inputs") {
    const std::vector<double> delta = {1, 0, 0, 0};
    const CorrelationSeries r1 = correlate_circular(delta, delta);
    CHECK(r1.values == std::vector<int64_t>{1, 0, 0, 0});
    CHECK(r1.mode == CorrelationMode::Circular);

    const std::vector<double> f = {1, 2, 3, 4}, ones = {1, 1, 1, 1};
    const CorrelationSeries r2 = correlate_circular(f, ones);
    CHECK(r2.values == std::vector<int64_t>{10, 10, 10, 10});
}

TEST_CASE("correlate_circular: FFT equals direct exactly on random signs") {
    for (size_t n : {256u, 1000u, 4096u}) {
        const std::vector<double> f = seeded_pm1(n, n), g = seeded_pm1(n, n + 1);
        const CorrelationSeries direct = correlate_circular(f, g, CircularPath::Direct);
        const CorrelationSeries fft = correlate_circular(f, g, CircularPath::Fft);
        CHECK(direct.values == fft.values);

        std::vector<int64_t> fi(n), gi(n);
        for (size_t i = 0; i < n; ++i) fi[i] = static_cast<int64_t>(f[i]);
        for (size_t i = 0; i < n; ++i) gi[i] = static_cast<int64_t>(g[i]);
        CHECK(direct.values == reference::circular_correlation_serial(fi, gi));
    }
}

TEST_CASE("correlate_circular: rejects mismatch and non-integers") {
    const std::vector<double> a = {1, 2, 3}, b = {1, 2};
    CHECK_THROWS_AS(correlate_circular(a, b), std::invalid_argument);
    const std::vector<double> c = {1.0, 2.5, 3.0};
    CHECK_THROWS_AS(correlate_circular(c, c), std::invalid_argument);
}

TEST_CASE("circular sum identity: sum_t R(t) = f_hat(0) g_hat(0) exactly") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const size_t n = 64 + rng() % 200;
        std::vector<double> f(n), g(n);
        for (auto& d : f) d = static_cast<double>(static_cast<int64_t>(rng() % 7)) - 3.0;
        for (auto& d : g) d = static_cast<double>(static_cast<int64_t>(rng() % 5)) - 2.0;
        const CorrelationSeries r = correlate_circular(f, g);
        int64_t total = 0, sf = 0, sg = 0;
        for (int64_t v : r.values) total += v;
        for (double d : f) sf += static_cast<int64_t>(d);
        for (double d : g) sg += static_cast<int64_t>(d);
        CHECK(total == sf * sg);
    }
}

TEST_CASE("correlate_ktuple: k=1 reduces to the partial sum") {
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, 600);
    TupleSpec single;
    single.offsets = {0};
    int64_t mertens = 0;
    for (uint64_t n = 1; n < 500; ++n) mertens += lam.at(n);
    CHECK(correlate_ktuple(lam, single, 500) == mertens);
}

TEST_CASE("correlate_ktuple: triple at x=8 by brute force") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 10);
    TupleSpec triple;
    triple.offsets = {0, 1, 2};
    int64_t brute = 0;
    for (uint64_t n = 1; n < 8; ++n)
        brute += static_cast<int64_t>(reference::mobius(n)) * reference::mobius(n + 1) *
                 reference::mobius(n + 2);
    CHECK(brute == 2);  // enumerated by hand as well
    CHECK(correlate_ktuple(mu, triple, 8) == brute);
}

TEST_CASE("correlate_ktuple: pair agrees with correlate_linear at t=1") {
    constexpr uint64_t x = 100000;
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, x + 1);
    TupleSpec pair;
    pair.offsets = {0, 1};
    const CorrelationSeries lin = correlate_linear(lam, lam, 1, x);
    CHECK(correlate_ktuple(lam, pair, x) == lin.values[1]);
}

TEST_CASE("correlate_ktuple: rejects bad tuples, q != 1 and coverage gaps") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 100);
    TupleSpec bad;
    bad.offsets = {3, 3};
    CHECK_THROWS_AS(correlate_ktuple(mu, bad, 50), std::invalid_argument);

    TupleSpec q2;
    q2.offsets = {0, 1};
    q2.q = 2;
    CHECK_THROWS_AS(correlate_ktuple(mu, q2, 50), std::invalid_argument);

    TupleSpec far;
    far.offsets = {0, 200};
    CHECK_THROWS_AS(correlate_ktuple(mu, far, 50), std::invalid_argument);
}

TEST_CASE("correlate_nonlinear: mu^2(n) mu(n+1) at x=7 equals brute force") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 10);
    const ArithmeticTable mu2 = sieve(FunctionId::MobiusSquared, 1, 10);
    int64_t brute = 0;
    for (uint64_t n = 1; n < 7; ++n)
        brute += static_cast<int64_t>(reference::mobius_squared(n)) * reference::mobius(n + 1);
    CHECK(brute == -2);
    const std::array<uint64_t, 1> sq = {0}, pl = {1};
    CHECK(correlate_nonlinear(mu2, mu, sq, pl, 7) == brute);
}

TEST_CASE("correlate_nonlinear: all-squared tuple counts squarefree tuples") {
    constexpr uint64_t x = 20000;
    const ArithmeticTable mu2 = sieve(FunctionId::MobiusSquared, 1, x + 2);
    const std::array<uint64_t, 2> sq = {0, 2};
    int64_t count = 0;
    for (uint64_t n = 1; n < x; ++n) count += mu2.at(n) * mu2.at(n + 2);
    CHECK(correlate_nonlinear(mu2, mu2, sq, {}, x) == count);
}

TEST_CASE("correlate_nonlinear: smallness at 1e5 and overlap rejection") {
    constexpr uint64_t x = 100000;
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, x + 1);
    const ArithmeticTable mu2 = sieve(FunctionId::MobiusSquared, 1, x + 1);
    const std::array<uint64_t, 1> sq = {0}, pl = {1};
    const int64_t v = correlate_nonlinear(mu2, mu, sq, pl, x);
    CHECK(std::abs(static_cast<double>(v)) / x < 0.05);

    const std::array<uint64_t, 1> overlap = {0};
    CHECK_THROWS_AS(correlate_nonlinear(mu2, mu, overlap, overlap, x), std::invalid_argument);
}

TEST_CASE("crosscorrelate: lambda-mu values") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 2000);
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, 2000);

    const CorrelationSeries t0 = crosscorrelate(lam, mu, 0, 1500);
    CHECK(t0.values[0] == static_cast<int64_t>(squarefree_count(1500)));  // lambda mu = mu^2
    CHECK(t0.left.fn == FunctionId::Liouville);
    CHECK(t0.right == FunctionId::Mobius);

    const CorrelationSeries t1 = crosscorrelate(lam, mu, 1, 6);
    CHECK(t1.values[1] == -2);  // lam1mu2+lam2mu3+lam3mu4+lam4mu5+lam5mu6 = -1+1+0-1-1
}

TEST_CASE("crosscorrelate: smallness at 1e5, t=3") {
    constexpr uint64_t x = 100000;
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, x + 3);
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, x);
    const CorrelationSeries s = crosscorrelate(lam, mu, 3, x);
    CHECK(std::abs(static_cast<double>(s.values[3])) / x < 0.05);
}

TEST_CASE("uniform_average: circular identity and zero series") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 512);
    const std::vector<double> v = embed_zero_slot(mu, 512);
    const CorrelationSeries series = correlate_circular(v, v);
    int64_t mertens = 0;
    for (uint64_t n = 1; n < 512; ++n) mertens += mu.at(n);
    const int64_t q = series.values[0];
    // (1/N)(sum_t R - R(0)) = (M^2 - Q)/N exactly
    CHECK(uniform_average(series) ==
          static_cast<double>(mertens * mertens - q) / static_cast<double>(series.x));

    CorrelationSeries zero;
    zero.mode = CorrelationMode::Linear;
    zero.x = 10;
    zero.shifts = {0, 1, 2};
    zero.values = {0, 0, 0};
    CHECK(uniform_average(zero) == 0.0);
}

TEST_CASE("uniform_average: matches the O(N^2) double-sum oracle at N=2^12") {
    constexpr uint64_t n = 4096;
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, n);
    const std::vector<double> v = embed_zero_slot(mu, n);
    const CorrelationSeries series = correlate_circular(v, v);

    std::vector<int64_t> vi(n);
    for (size_t i = 0; i < n; ++i) vi[i] = static_cast<int64_t>(v[i]);
    const std::vector<int64_t> oracle = reference::circular_correlation_serial(vi, vi);
    int64_t total = 0;
    for (uint64_t t = 1; t < n; ++t) total += oracle[t];
    CHECK(uniform_average(series) == static_cast<double>(total) / static_cast<double>(n));
}

TEST_CASE("harmonic_average: closed forms and oracle") {
    CorrelationSeries ramp;
    ramp.mode = CorrelationMode::Linear;
    ramp.x = 10;
    for (uint64_t t = 0; t < 10; ++t) {
        ramp.shifts.push_back(t);
        ramp.values.push_back(static_cast<int64_t>(t));
    }
    CHECK(harmonic_average(ramp) == doctest::Approx(9.0 / 10.0).epsilon(1e-15));

    CorrelationSeries single;
    single.mode = CorrelationMode::Linear;
    single.x = 10;
    single.shifts = {0, 1};
    single.values = {3, 5};
    CHECK(harmonic_average(single) == doctest::Approx(0.5).epsilon(1e-15));

    constexpr uint64_t x = 10000;
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 2 * x);
    const CorrelationSeries series = correlate_linear(mu, mu, x - 1, x);
    long double oracle = 0.0L;
    for (uint64_t t = 1; t < x; ++t)
        oracle += static_cast<long double>(series.values[t]) / static_cast<long double>(t);
    oracle /= static_cast<long double>(x);
    CHECK(harmonic_average(series) ==
          doctest::Approx(static_cast<double>(oracle)).epsilon(1e-9));
}

TEST_CASE("spectrum_factorization_check: delta, mu and random inputs") {
    const std::vector<double> delta = {1, 0, 0, 0, 0, 0, 0, 0};
    CHECK(spectrum_factorization_check(delta, delta) < 1e-12);

    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 1024);
    const std::vector<double> v = embed_zero_slot(mu, 1024);
    CHECK(spectrum_factorization_check(v, v) <= 1e-6 * 1024);

    const std::vector<double> r = seeded_pm1(256, 21), s = seeded_pm1(256, 22);
    CHECK(spectrum_factorization_check(r, s) <= 1e-6 * 256);
}

TEST_CASE("norm_expansion_check: exact identity and t=0 reduction") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 10010);

    const NormExpansion small = norm_expansion_check(mu, 1, 6);
    CHECK(small.diff == 0);
    CHECK(small.lhs == small.rhs);

    const NormExpansion at0 = norm_expansion_check(mu, 0, 5000);
    const int64_t q = static_cast<int64_t>(squarefree_count(5000));
    CHECK(at0.diagonal == q);
    CHECK(at0.off_diagonal == q * q - q);
    CHECK(at0.lhs == q * q);
    CHECK(at0.diff == 0);

    CHECK(norm_expansion_check(mu, 7, 10000).diff == 0);
}

TEST_CASE("zero padding: linear equals restricted circular with true tail") {
    constexpr uint64_t x = 50;
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, 2 * x);
    const CorrelationSeries lin = correlate_linear(lam, lam, x - 1, x);

    std::vector<double> padded(2 * x, 0.0), full(2 * x, 0.0);
    for (uint64_t n = 1; n < x; ++n) padded[n] = lam.at(n);
    for (uint64_t n = 1; n < 2 * x; ++n) full[n] = lam.at(n);
    const CorrelationSeries circ = correlate_circular(padded, full);
    for (uint64_t t = 0; t < x; ++t) CHECK(lin.values[t] == circ.values[t]);
}

TEST_CASE("linear correlation invariant: |R(t)| <= x - 1") {
    const ArithmeticTable lam = sieve(FunctionId::Liouville, 1, 4000);
    const CorrelationSeries s = correlate_linear(lam, lam, 100, 2000);
    for (int64_t v : s.values) CHECK(std::abs(v) <= 1999);
}

TEST_CASE("series serialization carries the documented fields") {
    const ArithmeticTable mu = sieve(FunctionId::Mobius, 1, 20);
    const CorrelationSeries s = correlate_linear(mu, mu, 2, 10);
    const std::string csv = s.to_csv();
    CHECK(csv.rfind("t,R,R_over_x,mode,k,offsets\n", 0) == 0);
    CHECK(csv.find("linear") != std::string::npos);
    const std::string json = s.to_json();
    CHECK(json.find("\"t\":0") != std::string::npos);
    CHECK(json.find("\"mode\":\"linear\"") != std::string::npos);
}

TEST_CASE("TupleSpec: parsing and validation") {
    const TupleSpec t = TupleSpec::parse_offsets("0,1,2");
    CHECK(t.offsets == std::vector<uint64_t>{0, 1, 2});
    CHECK(t.q == 1);
    CHECK(t.offsets_string() == "0,1,2");
    CHECK_THROWS_AS(TupleSpec::parse_offsets("2,1"), std::invalid_argument);
    CHECK_THROWS_AS(TupleSpec::parse_offsets(""), std::invalid_argument);
    CHECK_THROWS_AS(TupleSpec::parse_offsets("0,x"), std::invalid_argument);
}
