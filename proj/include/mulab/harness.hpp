#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mulab/correlation.hpp"

namespace mulab {

enum class ExperimentKind : uint8_t {
    DecayFit,
    AverageSweep,
    SupTwisted,
    KTupleSweep,
    ParsevalSuite,
    ConstantsSuite,
};

const char* kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

enum class ReportFormat : uint8_t { Csv, Json };

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::DecayFit;
    FunctionId fn = FunctionId::Mobius;
    std::vector<uint64_t> x_grid;        // strictly increasing, non-empty
    std::vector<uint64_t> shifts;        // decay / parseval
    std::vector<TupleSpec> tuples;       // ktuple / constants
    uint64_t denominator_bound = 50;     // sup twisted
    uint64_t random_samples = 200;
    uint64_t prime_bound = 100000;       // constants
    uint64_t seed = 0;
    std::string output_path;             // empty = stdout
    ReportFormat format = ReportFormat::Csv;
    uint64_t budget_mib = 2048;

    void validate() const;
    // Strict parser: unknown keys are rejected. The same schema the CLI's
    // `sweep --config` consumes.
    static ExperimentSpec from_json_text(const std::string& text);
};

// One table cell; monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, int64_t, double, std::string>;

struct ExperimentReport {
    std::vector<std::pair<std::string, std::string>> meta;  // spec echo + convention tags
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    std::string to_json() const;  // schema_version 1, rows as objects
};

struct FitResult {
    double c = 0.0;        // decay exponent in log|R| = log C + log x - c log log x
    double log_c0 = 0.0;   // intercept log C
    double max_residual = 0.0;
    size_t used_points = 0;
    size_t zero_points = 0;  // |R| = 0 points, excluded from the fit
};

// Ordinary least squares of log(|R|/x) against -log log x over the points
// with |R| > 0. Throws when fewer than 3 usable points remain.
FitResult fit_decay(std::span<const std::pair<double, double>> points);

// Exact single-shift correlation sum_{1 <= n < x} f(n) g(n+t); the sweeps'
// workhorse (a full series per grid point would be quadratic waste).
int64_t correlate_at(const ArithmeticTable& f, const ArithmeticTable& g, uint64_t t, uint64_t x);

// Runs the experiment. Deterministic for a fixed spec + seed: reports are
// byte-identical across reruns and thread counts. Throws BudgetError when
// the memory estimate exceeds spec.budget_mib; any point failure aborts.
ExperimentReport run(const ExperimentSpec& spec);

// Serializes per spec.format to spec.output_path ("" = stdout).
void write_report(const ExperimentReport& report, const ExperimentSpec& spec);

// The report body as a string (what write_report emits), for determinism
// checks.
std::string render_report(const ExperimentReport& report, ReportFormat format);

}  // namespace mulab
