#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "hallmhd/checkpoint.hpp"
#include "hallmhd/cli.hpp"
#include "hallmhd/config.hpp"
#include "hallmhd/norms.hpp"

using namespace hallmhd;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// 24^3 grid with dealias room for epsilon = 0.28
const std::vector<std::string> kSmall = {"--n", "24", "--box-side", "33.999920493396026", "--max-dk-over-epsilon",
                                         "0.66", "--epsilon", "0.28"};

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "hallmhd_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args, bool small = true) {
    if (small) args.insert(args.size() > 0 ? args.begin() + 1 : args.end(), kSmall.begin(), kSmall.end());
    std::vector<const char*> argv{"hallmhd"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::size_t fields(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("cli: argument errors exit 2, help exits 0") {
    CHECK(run_cli({}, false).code == cli::kInvalid);
    CHECK(run_cli({"frobnicate"}, false).code == cli::kInvalid);
    CHECK(run_cli({"run", "--n", "abc"}, false).code == cli::kInvalid);
    CHECK(run_cli({"run", "--dt", "soon"}, false).code == cli::kInvalid);
    CHECK(run_cli({"run", "-c", "/nonexistent/config.yaml"}, false).code == cli::kInvalid);
    CHECK(run_cli({"--help"}, false).code == cli::kOk);
}

TEST_CASE("cli: make-data writes the data files and is reproducible") {
    const fs::path a = scratch("md_a"), b = scratch("md_b");
    REQUIRE(run_cli({"make-data", "-o", a.string()}).code == cli::kOk);
    REQUIRE(run_cli({"make-data", "-o", b.string()}).code == cli::kOk);
    for (const char* f : {cli::kDataCheckpoint, cli::kDataReport}) CHECK(slurp(a / f) == slurp(b / f));

    const json r = read_json(a / cli::kDataReport);
    CHECK(r["n"] == 24);
    CHECK(r["epsilon"].get<double>() == 0.28);
    CHECK(r["div_res"].get<double>() <= 1e-12);
    CHECK(r["beltrami_res"].get<double>() <= 1e-12);
    CHECK(r["l1_ratio"].get<double>() > 0.0);

    const SpectralVectorField U0 = vector_from_checkpoint(read_checkpoint(a / cli::kDataCheckpoint));
    CHECK(U0.grid().n() == 24);
    CHECK(rel_diff(l2_norm(U0), r["l2"].get<double>()) < 1e-14);
    CHECK(rel_diff(spectral_l1(U0), r["l1_hat"].get<double>()) < 1e-14);

    // the provenance file reproduces the effective configuration
    const RunConfig resolved = load_config(a / cli::kResolvedConfig);
    CHECK(resolved.grid.n == 24);
    CHECK(resolved.recipe.epsilon == 0.28);
    CHECK(resolved.io.output_path == a.string());
}

TEST_CASE("cli: config file values with command-line overrides") {
    const fs::path d = scratch("cfg");
    std::ofstream(d / "in.yaml") << "grid:\n  n: 24\n  box_side: 33.999920493396026\n  max_dk_over_epsilon: 0.66\n"
                                    "recipe:\n  epsilon: 0.2\nio:\n  seed: 5\n";
    const Result r = run_cli({"make-data", "-c", (d / "in.yaml").string(), "--epsilon", "0.28", "--seed", "9", "-o",
                              (d / "out").string()},
                             false);
    REQUIRE(r.code == cli::kOk);
    const RunConfig c = load_config(d / "out" / cli::kResolvedConfig);
    CHECK(c.grid.n == 24);
    CHECK(c.recipe.epsilon == 0.28);
    CHECK(c.io.seed == 9);
}

TEST_CASE("cli: an under-resolved grid is rejected with a message naming dk") {
    const fs::path d = scratch("coarse");
    const Result r = run_cli({"make-data", "--n", "24", "--box-side", "35.9", "--epsilon", "0.05", "-o", d.string()},
                             false);
    CHECK(r.code == cli::kInvalid);
    CHECK(r.err.find("dk") != std::string::npos);
    CHECK(run_cli({"make-data", "--n", "7", "-o", d.string()}, false).code == cli::kInvalid);
}

TEST_CASE("cli: check-condition matches the stored regression values") {
    const fs::path fixtures = HALLMHD_FIXTURE_DIR;
    const json spec = read_json(fixtures / "condition_reference.json");
    const fs::path report = fixtures / spec["data_report"].get<std::string>();
    for (const json& c : spec["cases"]) {
        const fs::path d = scratch("cond");
        const Result r = run_cli({"check-condition", "--data-report", report.string(), "--constant-C",
                                  shortest_double(c["constant_C"].get<double>()), "--delta",
                                  shortest_double(c["delta"].get<double>()), "-o", d.string()},
                                 false);
        CHECK(r.code == (c["pass"].get<bool>() ? cli::kOk : cli::kCheckFailed));
        const json got = read_json(d / cli::kConditionReport);
        CHECK(rel_diff(got["lhs"].get<double>(), c["lhs"].get<double>()) <= 1e-12);
        CHECK(rel_diff(got["log_lhs"].get<double>(), c["log_lhs"].get<double>()) <= 1e-12);
        CHECK(got["pass"] == c["pass"]);
        CHECK(fs::exists(d / cli::kResolvedConfig));
    }
}

TEST_CASE("cli: check-condition on zero data passes; bad reports exit 2") {
    const fs::path d = scratch("cond_zero");
    std::ofstream(d / "zero.json") << R"({"epsilon": 0.2, "l1_hat": 0.0, "l2": 0.0})";
    std::ofstream(d / "broken.json") << R"({"epsilon": 0.2, "l1_hat": )";
    std::ofstream(d / "partial.json") << R"({"epsilon": 0.2})";
    const Result ok = run_cli({"check-condition", "--data-report", (d / "zero.json").string(), "-o", d.string()}, false);
    CHECK(ok.code == cli::kOk);
    CHECK(read_json(d / cli::kConditionReport)["lhs"].get<double>() == 0.0);
    for (const char* bad : {"broken.json", "partial.json", "absent.json"})
        CHECK(run_cli({"check-condition", "--data-report", (d / bad).string(), "-o", d.string()}, false).code ==
              cli::kInvalid);
}

TEST_CASE("cli: check-condition defaults to the data report in the output directory") {
    const fs::path d = scratch("cond_default");
    REQUIRE(run_cli({"make-data", "-o", d.string()}).code == cli::kOk);
    const Result r = run_cli({"check-condition", "-o", d.string()});
    CHECK(r.code == cli::kCheckFailed);  // C = 1 is far too large for this data
    CHECK(read_json(d / cli::kConditionReport)["log_lhs"].get<double>() > std::log(0.01));
}

TEST_CASE("cli: a zero-length run writes one row") {
    const fs::path d = scratch("t0");
    REQUIRE(run_cli({"run-perturbation", "--T", "0", "-o", d.string()}).code == cli::kOk);
    const auto rows = lines(slurp(d / cli::kTimeSeries));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].rfind("t,v_h3,c_h3,", 0) == 0);
    CHECK(fields(rows[0]) == 20);
    CHECK(rows[1].rfind("0,0,0,", 0) == 0);
    const json s = read_json(d / cli::kRunSummary);
    CHECK(s["rows"] == 1);
    CHECK(s["steps"] == 0);
    CHECK(s["status"] == "completed");
    CHECK(fs::exists(d / cli::kFinalCheckpoint));
}

TEST_CASE("cli: full runs are deterministic and write the requested files") {
    std::vector<fs::path> dirs{scratch("det_a"), scratch("det_b")};
    for (const fs::path& d : dirs) {
        const Result r = run_cli({"run", "--T", "0.02", "--dt", "0.002", "--v0-l2", "1", "--c0-l2", "1",
                                  "--observer-stride", "3", "--checkpoint-stride", "4", "-o", d.string()});
        REQUIRE(r.code == cli::kOk);
    }
    for (const char* f : {cli::kTimeSeries, cli::kFinalCheckpoint}) CHECK(slurp(dirs[0] / f) == slurp(dirs[1] / f));

    // rows at steps 0, 3, 6, 9 and the final step 10
    const auto rows = lines(slurp(dirs[0] / cli::kTimeSeries));
    REQUIRE(rows.size() == 6);
    for (const std::string& row : rows) CHECK(fields(row) == 20);
    CHECK(rows.back().rfind("0.02,", 0) == 0);

    for (int step : {4, 8}) {
        char name[32];
        std::snprintf(name, sizeof name, "step_%08d.ckpt", step);
        const Checkpoint ck = read_checkpoint(dirs[0] / "checkpoints" / name);
        CHECK(ck.components.size() == 6);
        CHECK(ck.grid.n() == 24);
    }
    const json s = read_json(dirs[0] / cli::kRunSummary);
    CHECK(s["system"] == "full");
    CHECK(s["steps"] == 10);
    CHECK(s["t_final"].get<double>() == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(s["max_energy_residual"].get<double>() <= 1e-9);
    CHECK(s["max_hall_cancel"].get<double>() <= 1e-11);
    CHECK(s["bootstrap"]["held"].is_boolean());
    CHECK(s["blowup"].is_null());
}

TEST_CASE("cli: full and perturbation runs describe the same solution") {
    const fs::path a = scratch("sys_full"), b = scratch("sys_pert");
    const std::vector<std::string> common{"--T", "0.01", "--dt", "0.002", "--v0-l2", "1", "--c0-l2", "1"};
    auto with = [&](std::vector<std::string> head, const fs::path& d) {
        head.insert(head.end(), common.begin(), common.end());
        head.push_back("-o");
        head.push_back(d.string());
        return run_cli(head);
    };
    REQUIRE(with({"run"}, a).code == cli::kOk);
    REQUIRE(with({"run-perturbation"}, b).code == cli::kOk);
    const auto ra = lines(slurp(a / cli::kTimeSeries)), rb = lines(slurp(b / cli::kTimeSeries));
    REQUIRE(ra.size() == rb.size());
    auto v_h3 = [](const std::string& row) {
        std::stringstream ss(row);
        std::string t, v;
        std::getline(ss, t, ',');
        std::getline(ss, v, ',');
        return std::stod(v);
    };
    for (std::size_t i = 1; i < ra.size(); ++i) CHECK(rel_diff(v_h3(ra[i]), v_h3(rb[i])) < 1e-8);
}

TEST_CASE("cli: blow-up exits 3 and keeps the partial outputs") {
    const fs::path d = scratch("blowup");
    const Result r = run_cli(
        {"run-perturbation", "--T", "20", "--dt", "0.5", "--v0-l2", "1e5", "--c0-l2", "1e5", "-o", d.string()});
    CHECK(r.code == cli::kBlowUp);
    CHECK(r.out.find("blow-up") != std::string::npos);
    const json s = read_json(d / cli::kRunSummary);
    CHECK(s["status"] == "blowup");
    CHECK(s["blowup"]["t"].get<double>() > 0.0);
    CHECK(lines(slurp(d / cli::kTimeSeries)).size() >= 2);
}

TEST_CASE("cli: verify on a small grid") {
    const fs::path d = scratch("verify");
    std::ofstream(d / "v.yaml") << "verify:\n  random_states: 3\n  reformulation_T: 0.01\n";
    const Result r = run_cli({"verify", "-c", (d / "v.yaml").string(), "--dt", "0.002", "-o", d.string()});
    CHECK(r.code == cli::kOk);
    const json v = read_json(d / cli::kVerifyReport);
    CHECK(v["pass"] == true);
    CHECK(v["checks"].size() >= 10);
    for (const json& c : v["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("cli: sweep is monotone, banded and independent of the job count") {
    const fs::path a = scratch("sweep_a"), b = scratch("sweep_b");
    const Result ra = run_cli({"sweep", "--jobs", "2", "-o", a.string()}, false);
    const Result rb = run_cli({"sweep", "--jobs", "1", "-o", b.string()}, false);
    REQUIRE(ra.code == cli::kOk);
    REQUIRE(rb.code == cli::kOk);
    CHECK(slurp(a / cli::kSweepTable) == slurp(b / cli::kSweepTable));

    const json s = read_json(a / cli::kSweepSummary);
    CHECK(s["band_pass"] == true);
    CHECK(s["l1_hat_monotone"] == true);
    CHECK(s["linf_first_monotone"] == true);
    REQUIRE(s["members"].size() == 3);
    CHECK(s["l1_ratio_band"].get<double>() <= 4.0);
    CHECK(s["l2_ratio_band"].get<double>() <= 4.0);
    CHECK(lines(slurp(a / cli::kSweepTable)).size() == 4);
    for (const char* eps : {"eps_0.28", "eps_0.2", "eps_0.12"}) {
        CHECK(fs::exists(a / eps / cli::kDataReport));
        CHECK(fs::exists(a / eps / cli::kConditionReport));
        CHECK(fs::exists(a / eps / cli::kResolvedConfig));
    }
}

TEST_CASE("cli: auto_grid picks the smallest 5-smooth grid holding the annulus") {
    const cli::SweepOptions defaults;
    CHECK(defaults.epsilons == std::vector<double>{0.28, 0.2, 0.12});
    struct Case {
        double eps;
        int n;
    };
    for (const Case c : {Case{0.28, 40}, Case{0.2, 50}, Case{0.12, 80}}) {
        const GridConfig g = cli::auto_grid(c.eps, 0.25);
        CHECK(g.n == c.n);
        CHECK(g.box_side == doctest::Approx(2.0 * kPi / (0.25 * c.eps)).epsilon(1e-15));
        const double dk = 2.0 * kPi / g.box_side;
        CHECK(dk * (g.n / 2) > 1.0 + c.eps);
    }
    CHECK_THROWS_AS(cli::auto_grid(0.0, 0.25), ValidationError);
}

TEST_CASE("cli: verify accepts unequal viscosity and diffusivity") {
    const fs::path d = scratch("verify_munu");
    std::ofstream(d / "v.yaml") << "verify:\n  random_states: 2\n  reformulation_T: 0.004\n";
    const Result r = run_cli({"verify", "-c", (d / "v.yaml").string(), "--mu", "0.5", "--nu", "1.5", "--dt", "0.002",
                              "-o", d.string()});
    CHECK(r.code == cli::kOk);
    for (const json& c : read_json(d / cli::kVerifyReport)["checks"]) {
        INFO(c["name"].get<std::string>());
        CHECK(c["pass"] == true);
    }
}
