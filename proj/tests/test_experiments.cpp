#include <windarea/experiments.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace windarea;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "windarea_tests";
    fs::create_directories(dir);
    return dir / name;
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(WINDAREA_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_json(const fs::path &p) {
    std::ifstream in(p);
    return json::parse(in);
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli(""), 2);
    EXPECT_EQ(run_cli("nonsense"), 2);
    EXPECT_EQ(run_cli("simulate --steps 0 --out " + scratch("zero.csv").string()), 2);
    EXPECT_EQ(run_cli("simulate --steps 8"), 2);
    EXPECT_EQ(run_cli("dn-scan --steps abc"), 2);
    EXPECT_EQ(run_cli("position-vs-levy --source square"), 2);
}

TEST(Cli, RuntimeErrors) {
    EXPECT_EQ(run_cli("stokes-check --curve /nonexistent/path.csv"), 1);
    EXPECT_EQ(run_cli("simulate --steps 8 --out /nonexistent/dir/p.csv"), 1);
}

TEST(Cli, SimulateWritesPath) {
    const auto out = scratch("sim.csv");
    const auto report = scratch("sim.json");
    ASSERT_EQ(run_cli("simulate --steps 8 --seed 3 --out " + out.string() + " --report " + report.string()), 0);
    const auto path = read_path_csv(out.string());
    EXPECT_EQ(path.size(), 9u);
    EXPECT_EQ(path, sample_brownian(8, 3));
    const auto j = read_json(report);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["command"], "simulate");
    EXPECT_EQ(j["params"]["seed"], 3);
    EXPECT_TRUE(j.contains("timing"));
}

TEST(Cli, ReportsAreDeterministicAcrossWorkers) {
    const auto a = scratch("dn1.json"), b = scratch("dn4.json");
    const std::string common = "dn-scan --steps 1024 --paths 6 --grid 128 --n-max 3 --no-timing --report ";
    ASSERT_EQ(run_cli(common + a.string() + " --workers 1"), 0);
    ASSERT_EQ(run_cli(common + b.string() + " --workers 4"), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(read_json(a).contains("timing"));
}

TEST(Cli, ConfigOverridesFlags) {
    const auto cfg = scratch("cfg.json");
    {
        std::ofstream out(cfg);
        out << R"({"paths": 3, "grid": 64, "n_max": 2})";
    }
    const auto report = scratch("cfg_report.json");
    ASSERT_EQ(run_cli("dn-scan --steps 256 --paths 2 --config " + cfg.string() + " --report " + report.string()), 0);
    const auto j = read_json(report);
    EXPECT_EQ(j["params"]["paths"], 3);
    EXPECT_EQ(j["params"]["grid"], 64);
    EXPECT_EQ(j["results"]["table"].size(), 2u);

    std::ofstream(scratch("bad_cfg.json")) << "[1, 2]";
    EXPECT_EQ(run_cli("dn-scan --config " + scratch("bad_cfg.json").string()), 2);
}

TEST(Cli, AssertExitCode) {
    // One trial cannot be fitted; the report records it and --assert fails.
    const auto report = scratch("one_trial.json");
    EXPECT_EQ(run_cli("poisson-cauchy --steps 256 --K 100 --trials 1 --assert --report " + report.string()), 3);
    const auto j = read_json(report);
    EXPECT_TRUE(j["results"]["fit"].is_null());
    EXPECT_TRUE(j["results"].contains("fit_error"));
    EXPECT_FALSE(j["assertions"]["passed"]);
    EXPECT_EQ(run_cli("poisson-cauchy --steps 256 --K 100 --trials 1 --report " + report.string()), 0);
}

TEST(DnScan, SinglePathOmitsErrors) {
    dn_scan_params p;
    p.steps = 512;
    p.paths = 1;
    p.grid = 128;
    p.n_max = 2;
    p.timing = false;
    const auto r = cmd_dn_scan(p);
    const auto &row = r.body["results"]["table"][0];
    EXPECT_FALSE(row.contains("std_error"));
    EXPECT_TRUE(row.contains("masked_bound"));
    EXPECT_FALSE(r.body.contains("timing"));
}

TEST(PositionVsLevy, CircleSourceIsExactUpToGrid) {
    position_vs_levy_params p;
    p.source = "circle";
    p.paths = 8;
    p.grid = 1024;
    p.timing = false;
    const auto r = cmd_position_vs_levy(p);
    EXPECT_TRUE(r.assertions_passed);
    EXPECT_NEAR(r.body["results"]["slope"].get<double>(), 1.0, 0.02);
    EXPECT_GT(r.body["results"]["correlation"].get<double>(), 0.999);
}

TEST(PoissonCauchy, CircleCloudCentresOnArea) {
    poisson_cauchy_params p;
    p.source = "circle";
    p.intensity = 2000;
    p.trials = 50;
    p.timing = false;
    const auto r = cmd_poisson_cauchy(p);
    const auto &res = r.body["results"];
    EXPECT_NEAR(res["position"].get<double>(), res["levy_area"].get<double>(), 0.2);
    EXPECT_EQ(res["trials"], 50);
}

TEST(PoissonCauchy, LineageNeedsPowerOfTwo) {
    poisson_cauchy_params p;
    p.steps = 1000;
    p.lineage_base = 256;
    EXPECT_THROW((void)cmd_poisson_cauchy(p), error);
}

TEST(PoissonCauchy, LineageReportsEveryLevel) {
    poisson_cauchy_params p;
    p.steps = 1024;
    p.lineage_base = 256;
    p.intensity = 500;
    p.trials = 20;
    p.timing = false;
    const auto r = cmd_poisson_cauchy(p);
    ASSERT_EQ(r.body["results"]["lineage"].size(), 3u);
    EXPECT_EQ(r.body["results"]["lineage"][2]["steps"], 1024);
    // The refined path keeps the coarse vertices.
    const auto lineage = brownian_lineage(256, 2, p.seed);
    EXPECT_EQ(lineage[2][4 * 17], lineage[0][17]);
}

TEST(StokesCheck, SuiteWithinBounds) {
    stokes_check_params p;
    p.timing = false;
    const auto r = cmd_stokes_check(p);
    EXPECT_TRUE(r.assertions_passed);
    EXPECT_EQ(r.body["results"]["curves"].size(), 5u);
    for (const auto &row : r.body["results"]["curves"]) {
        EXPECT_TRUE(row["within_bound"].get<bool>()) << row["curve"];
        EXPECT_NEAR(row["levy_area"].get<double>(), row["analytic_area"].get<double>(), 1e-6) << row["curve"];
    }
}

TEST(YoungCheck, CircleAndBrownian) {
    young_check_params p;
    p.timing = false;
    const auto circle = cmd_young_check(p);
    EXPECT_TRUE(circle.assertions_passed);
    EXPECT_EQ(circle.body["results"]["levels"].size(), 9u);

    p.curve = "brownian";
    p.steps = 1u << 12;
    const auto bm = cmd_young_check(p);
    EXPECT_TRUE(bm.assertions_passed);
    EXPECT_EQ(bm.body["results"]["full_dissection_shoelace_gap"].get<double>(), 0.0);

    p.level_lo = 5;
    p.level_hi = 4;
    EXPECT_THROW((void)cmd_young_check(p), error);
}
