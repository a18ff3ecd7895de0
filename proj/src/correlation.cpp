#include "mulab/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mulab/summation.hpp"

namespace mulab {

namespace {

constexpr uint64_t kDirectCircularLimit = uint64_t{1} << 12;

void require_integer_valued(std::span<const double> v, const char* who) {
    for (double d : v)
        if (d != std::nearbyint(d) || std::abs(d) > 0x1p31)
            throw std::invalid_argument(std::string(who) + ": input values must be integers (series "
                                                           "values are exact integer counts)");
}

uint64_t resolve_x(const ArithmeticTable& f, uint64_t x, const char* who) {
    if (x == 0) {
        if (f.start != 1) throw std::invalid_argument(std::string(who) + ": default x requires a table starting at 1");
        return f.end();
    }
    if (!f.covers(1, x))
        throw std::invalid_argument(std::string(who) + ": left table must cover [1, " + std::to_string(x) + ")");
    return x;
}

std::string offsets_csv(std::span<const uint64_t> offs) {
    std::string s;
    for (size_t i = 0; i < offs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(offs[i]);
    }
    return s;
}

}  // namespace

void TupleSpec::validate() const {
    if (offsets.empty()) throw std::invalid_argument("tuple: needs at least one offset (k >= 1)");
    for (size_t i = 1; i < offsets.size(); ++i)
        if (offsets[i] <= offsets[i - 1])
            throw std::invalid_argument("tuple: offsets must be strictly increasing");
    if (q == 0) throw std::invalid_argument("tuple: q must be nonzero");
}

std::string TupleSpec::offsets_string() const { return offsets_csv(offsets); }

TupleSpec TupleSpec::parse_offsets(const std::string& csv, uint64_t q) {
    TupleSpec t;
    t.q = q;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("tuple: bad offset '" + item + "'");
        t.offsets.push_back(v);
    }
    t.validate();
    return t;
}

std::string CorrelationSeries::to_csv() const {
    std::string out = "t,R,R_over_x,mode,k,offsets\n";
    const char* mode_name = mode == CorrelationMode::Linear ? "linear" : "circular";
    const size_t k = left.offsets.size() + 1;
    const std::string offs = offsets_csv(left.offsets);
    char buf[160];
    for (size_t i = 0; i < shifts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%llu,%lld,%.17g,%s,%zu,\"%s\"\n",
                      static_cast<unsigned long long>(shifts[i]), static_cast<long long>(values[i]),
                      static_cast<double>(values[i]) / static_cast<double>(x), mode_name, k, offs.c_str());
        out += buf;
    }
    return out;
}

std::string CorrelationSeries::to_json() const {
    std::string out = "[";
    const char* mode_name = mode == CorrelationMode::Linear ? "linear" : "circular";
    const size_t k = left.offsets.size() + 1;
    const std::string offs = offsets_csv(left.offsets);
    char buf[220];
    for (size_t i = 0; i < shifts.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%s{\"t\":%llu,\"R\":%lld,\"R_over_x\":%.17g,\"mode\":\"%s\",\"k\":%zu,\"offsets\":\"%s\"}",
                      i ? "," : "", static_cast<unsigned long long>(shifts[i]),
                      static_cast<long long>(values[i]),
                      static_cast<double>(values[i]) / static_cast<double>(x), mode_name, k, offs.c_str());
        out += buf;
    }
    out += "]\n";
    return out;
}

CorrelationSeries correlate_linear(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t_max,
                                   uint64_t x) {
    x = resolve_x(f, x, "correlate_linear");
    if (!g.covers(1, x + t_max))
        throw std::invalid_argument("correlate_linear: right table must cover [1, " +
                                    std::to_string(x + t_max) + ") (x + t_max)");

    CorrelationSeries series;
    series.mode = CorrelationMode::Linear;
    series.x = x;
    series.left = {f.fn, {}};
    series.right = g.fn;
    series.shifts.resize(t_max + 1);
    series.values.resize(t_max + 1);

    const int8_t* fv = f.shifted_data();
    const int8_t* gv = g.shifted_data();
#pragma omp parallel for schedule(static)
    for (int64_t t = 0; t <= static_cast<int64_t>(t_max); ++t) {
        int64_t acc = 0;
        for (uint64_t n = 1; n < x; ++n) acc += static_cast<int64_t>(fv[n]) * gv[n + static_cast<uint64_t>(t)];
        series.shifts[static_cast<uint64_t>(t)] = static_cast<uint64_t>(t);
        series.values[static_cast<uint64_t>(t)] = acc;
    }
    return series;
}

CorrelationSeries crosscorrelate(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t_max,
                                 uint64_t x) {
    return correlate_linear(f, g, t_max, x);
}

CorrelationSeries correlate_circular(std::span<const double> f, std::span<const double> g,
                                     CircularPath path) {
    if (f.size() != g.size())
        throw std::invalid_argument("correlate_circular: length mismatch (" + std::to_string(f.size()) +
                                    " vs " + std::to_string(g.size()) + ")");
    const uint64_t n = f.size();
    if (n == 0) throw std::invalid_argument("correlate_circular: empty input");
    require_integer_valued(f, "correlate_circular");
    require_integer_valued(g, "correlate_circular");

    if (path == CircularPath::Auto)
        path = n <= kDirectCircularLimit ? CircularPath::Direct : CircularPath::Fft;

    CorrelationSeries series;
    series.mode = CorrelationMode::Circular;
    series.x = n;
    series.shifts.resize(n);
    series.values.resize(n);
    for (uint64_t t = 0; t < n; ++t) series.shifts[t] = t;

    if (path == CircularPath::Direct) {
        std::vector<int64_t> fi(n), gi(n);
        for (uint64_t i = 0; i < n; ++i) fi[i] = std::llround(f[i]);
        for (uint64_t i = 0; i < n; ++i) gi[i] = std::llround(g[i]);
#pragma omp parallel for schedule(static)
        for (int64_t t = 0; t < static_cast<int64_t>(n); ++t) {
            int64_t acc = 0;
            const uint64_t tt = static_cast<uint64_t>(t);
            for (uint64_t i = 0; i < n; ++i) {
                uint64_t j = i + tt;
                if (j >= n) j -= n;
                acc += fi[i] * gi[j];
            }
            series.values[tt] = acc;
        }
    } else {
        const Spectrum fs = dft_forward(f);
        const Spectrum gs = dft_forward(g);
        std::vector<cplx> prod(n);
        for (uint64_t s = 0; s < n; ++s) prod[s] = std::conj(fs.coeff[s]) * gs.coeff[s];
        Spectrum cross;
        cross.coeff = std::move(prod);
        const std::vector<cplx> r = dft_inverse_complex(cross);
        for (uint64_t t = 0; t < n; ++t) series.values[t] = std::llround(r[t].real());
    }
    return series;
}

int64_t correlate_ktuple(const ArithmeticTable& base, const TupleSpec& tuple, uint64_t x) {
    tuple.validate();
    if (tuple.q != 1)
        throw std::invalid_argument("correlate_ktuple: q != 1 is not part of the correlation sums "
                                    "(it belongs to the singular-series side)");
    const uint64_t a_max = tuple.offsets.back();
    if (!base.covers(1, x + a_max))
        throw std::invalid_argument("correlate_ktuple: table must cover [1, " + std::to_string(x + a_max) +
                                    ") (x + a_{k-1})");
    const int8_t* fv = base.shifted_data();
    const std::vector<uint64_t>& offs = tuple.offsets;
    return blocked_isum(1, x, [fv, &offs](uint64_t n) {
        int64_t prod = 1;
        for (uint64_t a : offs) {
            prod *= fv[n + a];
            if (prod == 0) break;
        }
        return prod;
    });
}

int64_t correlate_nonlinear(const ArithmeticTable& weights, const ArithmeticTable& signs,
                            std::span<const uint64_t> squared_offsets,
                            std::span<const uint64_t> plain_offsets, uint64_t x) {
    for (uint64_t b : squared_offsets)
        for (uint64_t c : plain_offsets)
            if (b == c)
                throw std::invalid_argument("correlate_nonlinear: offset " + std::to_string(b) +
                                            " appears both squared and plain (ambiguous)");
    uint64_t a_max = 0;
    for (uint64_t b : squared_offsets) a_max = std::max(a_max, b);
    for (uint64_t c : plain_offsets) a_max = std::max(a_max, c);
    if (!squared_offsets.empty() && !weights.covers(1, x + a_max))
        throw std::invalid_argument("correlate_nonlinear: weight table must cover [1, " +
                                    std::to_string(x + a_max) + ")");
    if (!plain_offsets.empty() && !signs.covers(1, x + a_max))
        throw std::invalid_argument("correlate_nonlinear: sign table must cover [1, " +
                                    std::to_string(x + a_max) + ")");

    const int8_t* wv = weights.shifted_data();
    const int8_t* sv = signs.shifted_data();
    return blocked_isum(1, x, [&](uint64_t n) {
        int64_t prod = 1;
        for (uint64_t b : squared_offsets) {
            const int64_t w = wv[n + b];
            prod *= w * w;  // weight tables may also be signed tables
            if (prod == 0) return int64_t{0};
        }
        for (uint64_t c : plain_offsets) {
            prod *= sv[n + c];
            if (prod == 0) return int64_t{0};
        }
        return prod;
    });
}

double uniform_average(const CorrelationSeries& series) {
    int64_t acc = 0;
    for (size_t i = 0; i < series.shifts.size(); ++i)
        if (series.shifts[i] != 0) acc += series.values[i];
    return static_cast<double>(acc) / static_cast<double>(series.x);
}

double harmonic_average(const CorrelationSeries& series) {
    NeumaierSum acc;
    for (size_t i = 0; i < series.shifts.size(); ++i)
        if (series.shifts[i] != 0)
            acc.add(static_cast<double>(series.values[i]) / static_cast<double>(series.shifts[i]));
    return acc.value() / static_cast<double>(series.x);
}

double spectrum_factorization_check(std::span<const double> f, std::span<const double> g) {
    const CorrelationSeries r = correlate_circular(f, g, CircularPath::Direct);
    std::vector<double> rv(r.values.size());
    for (size_t i = 0; i < rv.size(); ++i) rv[i] = static_cast<double>(r.values[i]);
    const Spectrum lhs = dft_forward(std::span<const double>(rv));

    const Spectrum fs = dft_forward(f);
    const Spectrum gs = dft_forward(g);
    double max_dev = 0.0;
    for (size_t s = 0; s < lhs.size(); ++s)
        max_dev = std::max(max_dev, std::abs(lhs.coeff[s] - std::conj(fs.coeff[s]) * gs.coeff[s]));
    return max_dev;
}

NormExpansion norm_expansion_check(const ArithmeticTable& f, uint64_t t, uint64_t x) {
    if (!f.covers(1, x + t))
        throw std::invalid_argument("norm_expansion_check: table must cover [1, " + std::to_string(x + t) +
                                    ")");
    const int8_t* fv = f.shifted_data();

    int64_t r_asc = 0;
    for (uint64_t n = 1; n < x; ++n) r_asc += static_cast<int64_t>(fv[n]) * fv[n + t];
    int64_t r_desc = 0;
    for (uint64_t n = x; n-- > 1;) r_desc += static_cast<int64_t>(fv[n]) * fv[n + t];
    int64_t diag = 0;
    for (uint64_t n = 1; n < x; ++n) {
        const int64_t p = static_cast<int64_t>(fv[n]) * fv[n + t];
        diag += p * p;
    }

    NormExpansion out;
    out.lhs = r_asc * r_asc;
    out.diagonal = diag;
    out.off_diagonal = r_desc * r_desc - diag;
    out.rhs = out.diagonal + out.off_diagonal;
    out.diff = out.lhs - out.rhs;
    return out;
}

}  // namespace mulab
