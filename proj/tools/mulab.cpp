#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mulab/constants.hpp"
#include "mulab/errors.hpp"
#include "mulab/harness.hpp"
#include "mulab/table_io.hpp"
#include "mulab/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefused = 2;
constexpr int kExitInternal = 3;

struct GlobalOpts {
    std::string out;
    std::string format = "csv";
    int threads = 0;  // 0 = auto
    uint64_t seed = 0;
    uint64_t budget_mib = 2048;
};

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    os << body;
    if (!os) throw std::runtime_error("write failed for '" + out_path + "'");
}

uint64_t estimate_table_mib(uint64_t length) { return (length >> 20) + 1; }

void check_budget(uint64_t length, uint64_t budget_mib, const std::string& what) {
    const uint64_t need = estimate_table_mib(length);
    if (need > budget_mib)
        throw mulab::BudgetError(what + " needs ~" + std::to_string(need) + " MiB of tables, over the " +
                                 std::to_string(budget_mib) + " MiB budget (raise --budget-mib)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mulab — shift-correlation laboratory for the Mobius and Liouville functions"};
    app.require_subcommand(1);
    app.fallthrough();  // lets the global flags appear after the subcommand too

    GlobalOpts g;
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "worker threads, 0 = auto");
    app.add_option("--seed", g.seed, "seed for all randomized scans");
    app.add_option("--budget-mib", g.budget_mib, "memory budget for refusal checks");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "sieve a table and write an MLTB file");
    std::string sv_fn = "mobius";
    uint64_t sv_start = 1, sv_len = 0;
    sieve_cmd->add_option("--fn", sv_fn, "mobius | liouville | mobius2");
    sieve_cmd->add_option("--start", sv_start, "first n (>= 1)");
    sieve_cmd->add_option("--len", sv_len, "number of values")->required();

    // correlate
    auto* corr_cmd = app.add_subcommand("correlate", "linear or circular shift correlation");
    std::string co_fn = "mobius", co_gfn, co_in, co_gin;
    uint64_t co_x = 0, co_tmax = 0;
    bool co_circular = false;
    corr_cmd->add_option("--fn", co_fn, "left function (ignored with --in)");
    corr_cmd->add_option("--gfn", co_gfn, "right function (defaults to --fn)");
    corr_cmd->add_option("--in", co_in, "left table from MLTB file instead of sieving");
    corr_cmd->add_option("--gin", co_gin, "right table from MLTB file");
    corr_cmd->add_option("--x", co_x, "range length")->required();
    corr_cmd->add_option("--tmax", co_tmax, "largest shift");
    corr_cmd->add_flag("--circular", co_circular, "period-x circular correlation");

    // ktuple
    auto* kt_cmd = app.add_subcommand("ktuple", "k-tuple autocorrelation at fixed offsets");
    std::string kt_fn = "mobius", kt_offsets;
    uint64_t kt_x = 0;
    kt_cmd->add_option("--fn", kt_fn, "base function");
    kt_cmd->add_option("--offsets", kt_offsets, "comma list, e.g. 0,1,2")->required();
    kt_cmd->add_option("--x", kt_x, "range length")->required();

    // spectrum
    auto* sp_cmd = app.add_subcommand("spectrum", "DFT of a table file, CSV out");
    std::string sp_in;
    uint64_t sp_n = 0;
    sp_cmd->add_option("--in", sp_in, "MLTB table file")->required();
    sp_cmd->add_option("--n", sp_n, "transform length (slot 0 is zero)")->required();

    // constants
    auto* ct_cmd = app.add_subcommand("constants", "singular-series Euler product (JSON out)");
    std::string ct_offsets;
    uint64_t ct_q = 1, ct_prime_bound = 0, ct_oracle_x = 0;
    ct_cmd->add_option("--offsets", ct_offsets, "comma list")->required();
    ct_cmd->add_option("--q", ct_q, "linear coefficient");
    ct_cmd->add_option("--prime-bound", ct_prime_bound, "truncation bound P")->required();
    ct_cmd->add_option("--oracle-x", ct_oracle_x, "also run the counting oracle at this x");

    // sweep
    auto* sw_cmd = app.add_subcommand("sweep", "run an experiment from a JSON config");
    std::string sw_config;
    sw_cmd->add_option("--config", sw_config, "experiment spec (JSON)")->required();

    // verify
    auto* vf_cmd = app.add_subcommand("verify", "run the full invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (g.threads > 0) omp_set_num_threads(g.threads);
    const mulab::ReportFormat fmt =
        g.format == "json" ? mulab::ReportFormat::Json : mulab::ReportFormat::Csv;

    try {
        if (sieve_cmd->parsed()) {
            if (g.out.empty()) throw std::invalid_argument("sieve: --out FILE is required");
            check_budget(sv_len, g.budget_mib, "sieve");
            const mulab::ArithmeticTable table =
                mulab::sieve(mulab::function_from_name(sv_fn), sv_start, sv_len);
            mulab::write_table(table, g.out);
            std::cerr << "[mulab] wrote " << g.out << " (" << table.size() << " values from n="
                      << table.start << ")\n";
        } else if (corr_cmd->parsed()) {
            using mulab::ArithmeticTable;
            if (co_circular) {
                // embedded doubles + spectra + Bluestein scratch, ~256 B/slot
                check_budget(co_x * 256, g.budget_mib, "correlate");
                const ArithmeticTable f = !co_in.empty()
                                              ? mulab::read_table(co_in)
                                              : mulab::sieve(mulab::function_from_name(co_fn), 1, co_x);
                const ArithmeticTable g2 =
                    !co_gin.empty() ? mulab::read_table(co_gin)
                    : co_gfn.empty() || co_gfn == co_fn
                        ? f
                        : mulab::sieve(mulab::function_from_name(co_gfn), 1, co_x);
                const std::vector<double> fv = mulab::embed_zero_slot(f, co_x);
                const std::vector<double> gv = mulab::embed_zero_slot(g2, co_x);
                mulab::CorrelationSeries series = mulab::correlate_circular(fv, gv);
                series.left.fn = f.fn;
                series.right = g2.fn;
                if (co_tmax != 0 && co_tmax + 1 < series.shifts.size()) {
                    series.shifts.resize(co_tmax + 1);
                    series.values.resize(co_tmax + 1);
                }
                emit(fmt == mulab::ReportFormat::Csv ? series.to_csv() : series.to_json(), g.out);
            } else {
                check_budget(2 * (co_x + co_tmax), g.budget_mib, "correlate");
                const ArithmeticTable f = !co_in.empty()
                                              ? mulab::read_table(co_in)
                                              : mulab::sieve(mulab::function_from_name(co_fn), 1, co_x);
                const ArithmeticTable g2 =
                    !co_gin.empty()
                        ? mulab::read_table(co_gin)
                        : mulab::sieve(mulab::function_from_name(co_gfn.empty() ? co_fn : co_gfn), 1,
                                       co_x + co_tmax);
                const mulab::CorrelationSeries series = mulab::correlate_linear(f, g2, co_tmax, co_x);
                emit(fmt == mulab::ReportFormat::Csv ? series.to_csv() : series.to_json(), g.out);
            }
        } else if (kt_cmd->parsed()) {
            const mulab::TupleSpec tuple = mulab::TupleSpec::parse_offsets(kt_offsets);
            check_budget(kt_x + tuple.offsets.back(), g.budget_mib, "ktuple");
            const mulab::ArithmeticTable table = mulab::sieve(mulab::function_from_name(kt_fn), 1,
                                                              kt_x + tuple.offsets.back() + 1);
            const int64_t r = mulab::correlate_ktuple(table, tuple, kt_x);
            std::ostringstream body;
            if (fmt == mulab::ReportFormat::Csv) {
                body << "offsets,q,x,R,R_over_x\n\"" << tuple.offsets_string() << "\",1," << kt_x << ","
                     << r << "," << static_cast<double>(r) / static_cast<double>(kt_x) << "\n";
            } else {
                body << "{\"offsets\":[" << tuple.offsets_string() << "],\"q\":1,\"x\":" << kt_x
                     << ",\"R\":" << r
                     << ",\"R_over_x\":" << static_cast<double>(r) / static_cast<double>(kt_x) << "}\n";
            }
            emit(body.str(), g.out);
        } else if (sp_cmd->parsed()) {
            const mulab::ArithmeticTable table = mulab::read_table(sp_in);
            const std::vector<double> v = mulab::embed_zero_slot(table, sp_n);
            const mulab::Spectrum spec = mulab::dft_forward(std::span<const double>(v));
            emit(mulab::spectrum_to_csv(spec), g.out);
        } else if (ct_cmd->parsed()) {
            const mulab::TupleSpec tuple = mulab::TupleSpec::parse_offsets(ct_offsets, ct_q);
            mulab::EulerProductResult res = mulab::singular_series(tuple, ct_prime_bound);
            if (ct_oracle_x != 0) {
                check_budget(tuple.q * ct_oracle_x + tuple.offsets.back(), g.budget_mib, "constants oracle");
                res.oracle_density = mulab::density_oracle(tuple, ct_oracle_x);
                res.oracle_x = ct_oracle_x;
            }
            emit(res.to_json(), g.out);
        } else if (sw_cmd->parsed()) {
            std::ifstream is(sw_config);
            if (!is) throw std::invalid_argument("sweep: cannot open config '" + sw_config + "'");
            std::stringstream buf;
            buf << is.rdbuf();
            mulab::ExperimentSpec spec = mulab::ExperimentSpec::from_json_text(buf.str());
            // command-line overrides
            if (!g.out.empty()) spec.output_path = g.out;
            if (app.count("--seed")) spec.seed = g.seed;
            if (app.count("--format")) spec.format = fmt;
            if (app.count("--budget-mib")) spec.budget_mib = g.budget_mib;
            const mulab::ExperimentReport report = mulab::run(spec);
            mulab::write_report(report, spec);
        } else if (vf_cmd->parsed()) {
            using namespace std::chrono;
            const auto t0 = steady_clock::now();
            bool all = true;
            for (const auto& check : mulab::verify::run_acceptance_checks()) {
                std::cout << mulab::verify::format_line(check) << "\n";
                all = all && check.pass;
            }
            for (const auto& check : mulab::verify::run_property_checks()) {
                std::cout << mulab::verify::format_line(check) << "\n";
                all = all && check.pass;
            }
            const double total = duration<double>(steady_clock::now() - t0).count();
            std::cout << (all ? "[PASS]" : "[FAIL]") << " verify suite total " << total << " s\n";
            if (!all) return kExitInternal;
        }
    } catch (const mulab::BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
