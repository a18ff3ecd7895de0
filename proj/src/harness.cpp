#include "mulab/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mulab/constants.hpp"
#include "mulab/errors.hpp"
#include "mulab/reference.hpp"
#include "mulab/summation.hpp"

namespace mulab {

namespace {

using njson = nlohmann::ordered_json;

constexpr uint64_t kQuadratureLimit = 4096;  // largest x for the trapezoid cross-check

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double envelope_log_power(uint64_t x, double c) {
    return static_cast<double>(x) / std::pow(std::log(static_cast<double>(x)), c);
}

double envelope_loglog_over_log(uint64_t x) {
    const double lx = std::log(static_cast<double>(x));
    return static_cast<double>(x) * std::log(lx) / lx;
}

class PointTimer {
  public:
    explicit PointTimer(std::string label) : label_(std::move(label)), t0_(clock::now()) {}
    ~PointTimer() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0_);
        // progress + timing go to stderr only; report files must be
        // byte-identical across reruns
        std::cerr << "[mulab] " << label_ << " done in " << ms.count() << " ms\n";
    }

  private:
    using clock = std::chrono::steady_clock;
    std::string label_;
    clock::time_point t0_;
};

void append_meta(ExperimentReport& report, const ExperimentSpec& spec) {
    report.meta.emplace_back("schema_version", "1");
    report.meta.emplace_back("kind", kind_name(spec.kind));
    report.meta.emplace_back("fn", function_name(spec.fn));
    report.meta.emplace_back("seed", std::to_string(spec.seed));
    report.meta.emplace_back("sum_convention", "strict_n_lt_x");
    report.meta.emplace_back("dft_convention", "forward_positive");
    std::string grid;
    for (size_t i = 0; i < spec.x_grid.size(); ++i) {
        if (i) grid += ' ';
        grid += std::to_string(spec.x_grid[i]);
    }
    report.meta.emplace_back("x_grid", grid);
}

uint64_t max_shift(const ExperimentSpec& spec) {
    uint64_t m = 0;
    for (uint64_t t : spec.shifts) m = std::max(m, t);
    return m;
}

uint64_t max_tuple_reach(const ExperimentSpec& spec, uint64_t x_max) {
    uint64_t m = 0;
    for (const TupleSpec& t : spec.tuples) m = std::max(m, t.q * (x_max - 1) + t.offsets.back());
    return m;
}

// Coarse upper estimate of peak allocation for the sweep, in bytes.
uint64_t estimate_bytes(const ExperimentSpec& spec) {
    const uint64_t x_max = spec.x_grid.back();
    switch (spec.kind) {
        case ExperimentKind::DecayFit:
            return x_max + max_shift(spec) + (uint64_t{1} << 24);
        case ExperimentKind::AverageSweep:
            // table + embedded doubles + FFT work (~12 complex vectors of 4N)
            return x_max + 256 * x_max + (uint64_t{1} << 24);
        case ExperimentKind::SupTwisted:
            return x_max + (uint64_t{1} << 24);
        case ExperimentKind::KTupleSweep:
            return max_tuple_reach(spec, x_max) + 1 + (uint64_t{1} << 24);
        case ExperimentKind::ParsevalSuite:
            return x_max + max_shift(spec) + 8 * x_max + (uint64_t{1} << 24);
        case ExperimentKind::ConstantsSuite:
            return max_tuple_reach(spec, x_max) + 1 + spec.prime_bound + (uint64_t{1} << 24);
    }
    return 0;
}

void enforce_budget(const ExperimentSpec& spec) {
    const uint64_t est = estimate_bytes(spec);
    const uint64_t budget = spec.budget_mib << 20;
    if (est > budget)
        throw BudgetError("run refused: estimated " + std::to_string(est >> 20) + " MiB exceeds budget " +
                          std::to_string(spec.budget_mib) + " MiB (raise --budget-mib to proceed)");
}

void run_decay_fit(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"t",        "x",           "R",          "abs_R_over_x", "ref_log_c1",
                      "ref_log_c2", "ref_loglog", "table_start", "table_end",  "fit_c",
                      "fit_log_c0",   "fit_max_residual", "fit_used_points", "fit_zero_points"};
    const uint64_t x_max = spec.x_grid.back();
    const uint64_t t_max = max_shift(spec);
    const ArithmeticTable table = sieve(spec.fn, 1, x_max + t_max);

    for (uint64_t t : spec.shifts) {
        std::vector<std::pair<double, double>> points;
        std::vector<std::vector<Cell>> pending;
        for (uint64_t x : spec.x_grid) {
            PointTimer timer("decay_fit t=" + std::to_string(t) + " x=" + std::to_string(x));
            const int64_t r = correlate_at(table, table, t, x);
            points.emplace_back(static_cast<double>(x), std::abs(static_cast<double>(r)));
            pending.push_back({static_cast<int64_t>(t), static_cast<int64_t>(x), r,
                               std::abs(static_cast<double>(r)) / static_cast<double>(x),
                               envelope_log_power(x, 1.0), envelope_log_power(x, 2.0), envelope_loglog_over_log(x),
                               static_cast<int64_t>(table.start), static_cast<int64_t>(table.end()),
                               std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                               std::monostate{}});
        }
        const FitResult fit = fit_decay(points);
        for (auto& row : pending) {
            row[9] = fit.c;
            row[10] = fit.log_c0;
            row[11] = fit.max_residual;
            row[12] = static_cast<int64_t>(fit.used_points);
            row[13] = static_cast<int64_t>(fit.zero_points);
            report.rows.push_back(std::move(row));
        }
    }
}

void run_average_sweep(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"x",      "uniform_avg", "uniform_avg_incl_t0", "harmonic_avg", "series_sum",
                      "r_zero", "period_sum_sq", "table_start",       "table_end"};
    const uint64_t x_max = spec.x_grid.back();
    const ArithmeticTable table = sieve(spec.fn, 1, x_max);
    for (uint64_t x : spec.x_grid) {
        PointTimer timer("average_sweep x=" + std::to_string(x));
        const std::vector<double> v = embed_zero_slot(table, x);
        const CorrelationSeries series = correlate_circular(v, v);
        int64_t total = 0;
        for (int64_t r : series.values) total += r;
        int64_t period_sum = 0;
        for (uint64_t n = 1; n < x; ++n) period_sum += table.at(n);
        if (total != period_sum * period_sum)
            throw std::logic_error("average_sweep: circular sum identity violated at x=" + std::to_string(x));
        report.rows.push_back({static_cast<int64_t>(x), uniform_average(series),
                               static_cast<double>(total) / static_cast<double>(x), harmonic_average(series),
                               total, series.values[0], period_sum * period_sum,
                               static_cast<int64_t>(table.start), static_cast<int64_t>(table.end())});
    }
}

void run_sup_twisted(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"x",        "denominator_bound", "random_samples", "candidates", "sup_alpha",
                      "sup_abs",  "ratio_c1",          "ratio_c2",       "table_start", "table_end"};
    const uint64_t x_max = spec.x_grid.back();
    const ArithmeticTable table = sieve(spec.fn, 1, x_max);
    for (uint64_t x : spec.x_grid) {
        PointTimer timer("sup_twisted x=" + std::to_string(x));
        const SupTwistedResult res =
            sup_twisted_sum(table, x, spec.denominator_bound, spec.random_samples, spec.seed);
        report.rows.push_back({static_cast<int64_t>(x), static_cast<int64_t>(res.denominator_bound),
                               static_cast<int64_t>(res.random_samples), static_cast<int64_t>(res.candidates),
                               res.sup_alpha, res.sup_abs, res.ratio_c1, res.ratio_c2,
                               static_cast<int64_t>(table.start), static_cast<int64_t>(table.end())});
    }
}

void run_ktuple_sweep(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"offsets", "q", "x", "R", "abs_R_over_x", "table_start", "table_end"};
    const uint64_t x_max = spec.x_grid.back();
    const uint64_t top = max_tuple_reach(spec, x_max);
    const ArithmeticTable table = sieve(spec.fn, 1, top + 1);
    for (const TupleSpec& tuple : spec.tuples) {
        for (uint64_t x : spec.x_grid) {
            PointTimer timer("ktuple (" + tuple.offsets_string() + ") x=" + std::to_string(x));
            const int64_t r = correlate_ktuple(table, tuple, x);
            report.rows.push_back({tuple.offsets_string(), static_cast<int64_t>(tuple.q),
                                   static_cast<int64_t>(x), r,
                                   std::abs(static_cast<double>(r)) / static_cast<double>(x),
                                   static_cast<int64_t>(table.start), static_cast<int64_t>(table.end())});
        }
    }
}

void run_parseval_suite(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"x", "t", "energy", "quadrature", "quadrature_rel_gap", "table_start", "table_end"};
    const uint64_t x_max = spec.x_grid.back();
    const uint64_t t_max = max_shift(spec);
    const ArithmeticTable table = sieve(spec.fn, 1, x_max + t_max);
    for (uint64_t t : spec.shifts) {
        for (uint64_t x : spec.x_grid) {
            PointTimer timer("parseval t=" + std::to_string(t) + " x=" + std::to_string(x));
            std::vector<double> w(x, 0.0);  // w[n] = f(n) f(n+t), 1-based
            for (uint64_t n = 1; n < x; ++n)
                w[n] = static_cast<double>(table.at(n)) * static_cast<double>(table.at(n + t));
            const double energy = parseval_energy(std::span<const double>(w).subspan(1));
            Cell quad = std::monostate{};
            Cell gap = std::monostate{};
            if (x <= kQuadratureLimit) {
                const double q = reference::trapezoid_energy(w, 4 * x);
                quad = q;
                gap = std::abs(q - energy) / std::max(1.0, energy);
            }
            report.rows.push_back({static_cast<int64_t>(x), static_cast<int64_t>(t),
                                   static_cast<int64_t>(std::llround(energy)), quad, gap,
                                   static_cast<int64_t>(table.start), static_cast<int64_t>(table.end())});
        }
    }
}

void run_constants_suite(const ExperimentSpec& spec, ExperimentReport& report) {
    report.columns = {"offsets", "q", "prime_bound", "value", "tail_bound", "obstruction",
                      "oracle_x", "oracle_density", "rel_gap"};
    for (const TupleSpec& tuple : spec.tuples) {
        PointTimer timer("constants (" + tuple.offsets_string() + ")");
        const EulerProductResult prod = singular_series(tuple, spec.prime_bound);
        for (uint64_t x : spec.x_grid) {
            const double density = density_oracle(tuple, x);
            const double gap = prod.value != 0.0 ? std::abs(density - prod.value) / prod.value : density;
            report.rows.push_back({tuple.offsets_string(), static_cast<int64_t>(tuple.q),
                                   static_cast<int64_t>(spec.prime_bound), prod.value, prod.tail_bound,
                                   std::string(prod.obstruction ? "true" : "false"),
                                   static_cast<int64_t>(x), density, gap});
        }
    }
}

}  // namespace

const char* kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::DecayFit: return "decay_fit";
        case ExperimentKind::AverageSweep: return "average_sweep";
        case ExperimentKind::SupTwisted: return "sup_twisted";
        case ExperimentKind::KTupleSweep: return "ktuple_sweep";
        case ExperimentKind::ParsevalSuite: return "parseval_suite";
        case ExperimentKind::ConstantsSuite: return "constants_suite";
    }
    return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind k : {ExperimentKind::DecayFit, ExperimentKind::AverageSweep,
                             ExperimentKind::SupTwisted, ExperimentKind::KTupleSweep,
                             ExperimentKind::ParsevalSuite, ExperimentKind::ConstantsSuite})
        if (name == kind_name(k)) return k;
    throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

void ExperimentSpec::validate() const {
    if (x_grid.empty()) throw std::invalid_argument("spec: x_grid must be non-empty");
    for (size_t i = 1; i < x_grid.size(); ++i)
        if (x_grid[i] <= x_grid[i - 1])
            throw std::invalid_argument("spec: x_grid must be strictly increasing");
    for (uint64_t x : x_grid)
        if (x < 2) throw std::invalid_argument("spec: grid points must be >= 2");

    const bool needs_shifts =
        kind == ExperimentKind::DecayFit || kind == ExperimentKind::ParsevalSuite;
    if (needs_shifts && shifts.empty())
        throw std::invalid_argument("spec: this kind needs a non-empty shifts list");
    if (kind == ExperimentKind::DecayFit)
        for (uint64_t t : shifts)
            if (t == 0) throw std::invalid_argument("spec: decay_fit shifts must be >= 1");
    const bool needs_tuples =
        kind == ExperimentKind::KTupleSweep || kind == ExperimentKind::ConstantsSuite;
    if (needs_tuples) {
        if (tuples.empty()) throw std::invalid_argument("spec: this kind needs a non-empty tuples list");
        for (const TupleSpec& t : tuples) t.validate();
    }
    if (kind == ExperimentKind::ConstantsSuite && prime_bound < 2)
        throw std::invalid_argument("spec: prime_bound must be >= 2");
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
    njson j;
    try {
        j = njson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
    }
    static const std::set<std::string> known = {
        "kind",   "fn",   "x_grid", "shifts", "tuples", "denominator_bound", "random_samples",
        "prime_bound", "seed", "output", "format", "budget_mib"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("spec: unknown key '" + it.key() + "'");

    ExperimentSpec spec;
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("fn")) spec.fn = function_from_name(j["fn"].get<std::string>());
    spec.x_grid = j.at("x_grid").get<std::vector<uint64_t>>();
    if (j.contains("shifts")) spec.shifts = j["shifts"].get<std::vector<uint64_t>>();
    if (j.contains("tuples")) {
        for (const auto& jt : j["tuples"]) {
            TupleSpec t;
            t.offsets = jt.at("offsets").get<std::vector<uint64_t>>();
            t.q = jt.value("q", uint64_t{1});
            t.validate();
            spec.tuples.push_back(std::move(t));
        }
    }
    if (j.contains("denominator_bound")) spec.denominator_bound = j["denominator_bound"].get<uint64_t>();
    if (j.contains("random_samples")) spec.random_samples = j["random_samples"].get<uint64_t>();
    if (j.contains("prime_bound")) spec.prime_bound = j["prime_bound"].get<uint64_t>();
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
    if (j.contains("output")) spec.output_path = j["output"].get<std::string>();
    if (j.contains("format")) {
        const std::string f = j["format"].get<std::string>();
        if (f == "csv")
            spec.format = ReportFormat::Csv;
        else if (f == "json")
            spec.format = ReportFormat::Json;
        else
            throw std::invalid_argument("spec: format must be csv or json");
    }
    if (j.contains("budget_mib")) spec.budget_mib = j["budget_mib"].get<uint64_t>();
    spec.validate();
    return spec;
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + "," + csv_escape(v) + "\n";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&out](const auto& cell) {
                    using T = std::decay_t<decltype(cell)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        ;  // empty field
                    else if constexpr (std::is_same_v<T, int64_t>)
                        out += std::to_string(cell);
                    else if constexpr (std::is_same_v<T, double>)
                        out += fmt_double(cell);
                    else
                        out += csv_escape(cell);
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string ExperimentReport::to_json() const {
    njson j;
    j["schema_version"] = 1;
    for (const auto& [k, v] : meta)
        if (k != "schema_version") j[k] = v;
    njson jrows = njson::array();
    for (const auto& row : rows) {
        njson obj;
        for (size_t i = 0; i < row.size(); ++i) {
            const std::string& col = columns[i];
            std::visit(
                [&obj, &col](const auto& cell) {
                    using T = std::decay_t<decltype(cell)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        obj[col] = nullptr;
                    else
                        obj[col] = cell;
                },
                row[i]);
        }
        jrows.push_back(std::move(obj));
    }
    j["rows"] = std::move(jrows);
    return j.dump(2) + "\n";
}

FitResult fit_decay(std::span<const std::pair<double, double>> points) {
    std::vector<std::pair<long double, long double>> uy;  // (-log log x, log(|R|/x))
    size_t zeros = 0;
    for (const auto& [x, abs_r] : points) {
        if (abs_r <= 0.0) {
            ++zeros;
            continue;
        }
        const long double u = -std::log(std::log(static_cast<long double>(x)));
        const long double y = std::log(static_cast<long double>(abs_r) / static_cast<long double>(x));
        uy.emplace_back(u, y);
    }
    if (uy.size() < 3)
        throw std::invalid_argument("fit_decay: needs at least 3 points with |R| > 0 (got " +
                                    std::to_string(uy.size()) + ", plus " + std::to_string(zeros) +
                                    " zeros)");
    long double su = 0, sy = 0;
    for (const auto& [u, y] : uy) {
        su += u;
        sy += y;
    }
    const long double mu = su / uy.size(), my = sy / uy.size();
    long double suu = 0, suy = 0;
    for (const auto& [u, y] : uy) {
        suu += (u - mu) * (u - mu);
        suy += (u - mu) * (y - my);
    }
    if (suu == 0) throw std::invalid_argument("fit_decay: degenerate grid (all x equal)");
    const long double slope = suy / suu;
    const long double intercept = my - slope * mu;
    long double max_res = 0;
    for (const auto& [u, y] : uy) max_res = std::max(max_res, std::abs(y - (intercept + slope * u)));

    FitResult fit;
    fit.c = static_cast<double>(slope);
    fit.log_c0 = static_cast<double>(intercept);
    fit.max_residual = static_cast<double>(max_res);
    fit.used_points = uy.size();
    fit.zero_points = zeros;
    return fit;
}

int64_t correlate_at(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t, uint64_t x) {
    if (!f.covers(1, x))
        throw std::invalid_argument("correlate_at: left table must cover [1, " + std::to_string(x) + ")");
    if (!g.covers(1, x + t))
        throw std::invalid_argument("correlate_at: right table must cover [1, " + std::to_string(x + t) +
                                    ")");
    const int8_t* fv = f.shifted_data();
    const int8_t* gv = g.shifted_data();
    return blocked_isum(1, x, [fv, gv, t](uint64_t n) { return static_cast<int64_t>(fv[n]) * gv[n + t]; });
}

ExperimentReport run(const ExperimentSpec& spec) {
    spec.validate();
    enforce_budget(spec);

    ExperimentReport report;
    append_meta(report, spec);
    switch (spec.kind) {
        case ExperimentKind::DecayFit: run_decay_fit(spec, report); break;
        case ExperimentKind::AverageSweep: run_average_sweep(spec, report); break;
        case ExperimentKind::SupTwisted: run_sup_twisted(spec, report); break;
        case ExperimentKind::KTupleSweep: run_ktuple_sweep(spec, report); break;
        case ExperimentKind::ParsevalSuite: run_parseval_suite(spec, report); break;
        case ExperimentKind::ConstantsSuite: run_constants_suite(spec, report); break;
    }
    return report;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    return format == ReportFormat::Csv ? report.to_csv() : report.to_json();
}

void write_report(const ExperimentReport& report, const ExperimentSpec& spec) {
    const std::string body = render_report(report, spec.format);
    if (spec.output_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(spec.output_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::invalid_argument("cannot open output file '" + spec.output_path + "'");
    os << body;
    if (!os) throw std::runtime_error("write failed for '" + spec.output_path + "'");
}

}  // namespace mulab
