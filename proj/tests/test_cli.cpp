#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mulab/correlation.hpp"
#include "mulab/table_io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "mulab_cli_tests";
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const char* name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MULAB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cli sieve: writes the documented first ten mu values") {
    TempDir dir;
    const std::string tbl = dir.file("m.tbl");
    REQUIRE(run_cli("--out " + tbl + " sieve --fn mobius --start 1 --len 10") == 0);
    const mulab::ArithmeticTable t = mulab::read_table(tbl);
    CHECK(t.fn == mulab::FunctionId::Mobius);
    CHECK(t.values == std::vector<int8_t>{1, -1, -1, 0, -1, 1, -1, 0, 0, 1});

    // global flags are also accepted after the subcommand
    const std::string tbl2 = dir.file("m2.tbl");
    REQUIRE(run_cli("sieve --fn mobius --start 1 --len 10 --out " + tbl2) == 0);
    CHECK(slurp(tbl) == slurp(tbl2));
}

TEST_CASE("cli: file pipeline equals in-memory pipeline") {
    TempDir dir;
    const std::string ftbl = dir.file("f.tbl"), gtbl = dir.file("g.tbl"), out = dir.file("series.csv");
    REQUIRE(run_cli("--out " + ftbl + " sieve --fn liouville --start 1 --len 500") == 0);
    REQUIRE(run_cli("--out " + gtbl + " sieve --fn mobius --start 1 --len 520") == 0);
    REQUIRE(run_cli("--out " + out + " correlate --in " + ftbl + " --gin " + gtbl +
                    " --x 500 --tmax 20") == 0);

    const mulab::ArithmeticTable lam = mulab::sieve(mulab::FunctionId::Liouville, 1, 500);
    const mulab::ArithmeticTable mu = mulab::sieve(mulab::FunctionId::Mobius, 1, 520);
    const mulab::CorrelationSeries mem = mulab::correlate_linear(lam, mu, 20, 500);
    CHECK(slurp(out) == mem.to_csv());
}

TEST_CASE("cli ktuple: triple value at x=8") {
    TempDir dir;
    const std::string out = dir.file("kt.csv");
    REQUIRE(run_cli("--out " + out + " ktuple --offsets 0,1,2 --x 8") == 0);
    CHECK(slurp(out).find("\"0,1,2\",1,8,2,") != std::string::npos);
}

TEST_CASE("cli constants: k=1 product lands on 6/pi^2 to 1e-6") {
    TempDir dir;
    const std::string out = dir.file("c.json");
    REQUIRE(run_cli("--out " + out + " constants --offsets 0 --prime-bound 1000000") == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(std::abs(j.at("value").get<double>() - 0.6079271018540266) < 1e-6);
    CHECK(j.at("obstruction") == false);
}

TEST_CASE("cli spectrum: header and the alpha=0 coefficient") {
    TempDir dir;
    const std::string tbl = dir.file("m.tbl"), out = dir.file("spec.csv");
    REQUIRE(run_cli("--out " + tbl + " sieve --fn mobius --start 1 --len 10") == 0);
    REQUIRE(run_cli("--out " + out + " spectrum --in " + tbl + " --n 8") == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("s,re,im,magnitude\n", 0) == 0);
    // row s=0 holds sum_{n<8} mu(n) = -2
    CHECK(csv.find("0,-2,") != std::string::npos);
}

TEST_CASE("cli sweep: config-driven run is deterministic and honors --seed") {
    TempDir dir;
    const std::string cfg = dir.file("sweep.json");
    const std::string out1 = dir.file("r1.csv"), out2 = dir.file("r2.csv"), out3 = dir.file("r3.csv");
    std::ofstream(cfg) << R"({"kind":"sup_twisted","fn":"mobius","x_grid":[2000],)"
                       << R"("denominator_bound":10,"random_samples":20,"seed":5})";
    REQUIRE(run_cli("--out " + out1 + " sweep --config " + cfg) == 0);
    REQUIRE(run_cli("--out " + out2 + " sweep --config " + cfg) == 0);
    CHECK(slurp(out1) == slurp(out2));

    REQUIRE(run_cli("--out " + out3 + " --seed 6 sweep --config " + cfg) == 0);
    CHECK(slurp(out3) != slurp(out1));  // different seed, different random alphas
    CHECK(slurp(out3).find("# seed,6") != std::string::npos);
}

TEST_CASE("cli: exit codes for usage, refusal and success") {
    TempDir dir;
    CHECK(run_cli("no-such-subcommand") == 1);
    CHECK(run_cli("sieve --fn mobius --start 1") == 1);           // missing --len
    CHECK(run_cli("sieve --fn mobius --len 5 --bogus 1") == 1);   // unknown flag
    CHECK(run_cli("--out " + dir.file("t.tbl") + " sieve --fn nope --len 5") == 1);
    CHECK(run_cli("--budget-mib 2 correlate --fn mobius --x 100000000 --tmax 1") == 2);
    CHECK(run_cli("spectrum --in /does/not/exist.tbl --n 8") == 1);
    CHECK(run_cli("--out " + dir.file("ok.tbl") + " sieve --fn mobius --start 1 --len 5") == 0);
}

TEST_CASE("cli correlate: circular flag and json format") {
    TempDir dir;
    const std::string out = dir.file("circ.json");
    REQUIRE(run_cli("--format json --out " + out + " correlate --fn mobius --x 64 --circular") == 0);
    const std::string body = slurp(out);
    CHECK(body.find("\"mode\":\"circular\"") != std::string::npos);

    const mulab::ArithmeticTable mu = mulab::sieve(mulab::FunctionId::Mobius, 1, 64);
    const std::vector<double> v = mulab::embed_zero_slot(mu, 64);
    mulab::CorrelationSeries expect = mulab::correlate_circular(v, v);
    expect.left.fn = mulab::FunctionId::Mobius;
    expect.right = mulab::FunctionId::Mobius;
    CHECK(body == expect.to_json());
}
