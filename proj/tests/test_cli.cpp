#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tamedns/harness.hpp"
#include "tamedns/run_config.hpp"

using namespace tns;
namespace fs = std::filesystem;

namespace {

const char* kDemoConfig = R"({
  "grid": {"n": 8},
  "taming": {"threshold": 50.0, "nu": 1.0},
  "coefficients": {
    "eta1": {"base": 1.0, "amp": 0.5, "omega": 1.0},
    "f": {"kind": "osgood", "scale": -0.5, "fz_delta": 0.25,
          "time": {"base": 1.0, "amp": 1.0, "omega": 1.0}},
    "g": {"kind": "diag_low", "gamma": 0.1, "columns": 2},
    "modulus": "log_osgood",
    "mono_c": 2.0,
    "growth_c": 2.0,
    "growth_m": 1.0
  },
  "solver": {"dt": 0.002},
  "experiment": {"name": "simulate", "T": 0.05, "amplitude": 1.0},
  "seed": 11,
  "out": "OUTDIR"
})";

fs::path temp_dir() {
    fs::path p = fs::temp_directory_path() /
                 ("tamedns_test_" + std::to_string(std::rand()));
    fs::create_directories(p);
    return p;
}

std::string write_demo(const fs::path& dir) {
    std::string text = kDemoConfig;
    std::string out = (dir / "out").string();
    text.replace(text.find("OUTDIR"), 6, out);
    fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << text;
    return cfg.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("config round-trips through its canonical serialization") {
    fs::path dir = temp_dir();
    RunConfig cfg = RunConfig::load(write_demo(dir));
    CHECK(cfg.grid_n == 8);
    CHECK(cfg.f_kind == "osgood");
    CHECK(cfg.eta1.amp == 0.5);
    RunConfig again = RunConfig::from_json_text(cfg.canonical_json());
    CHECK(again.canonical_json() == cfg.canonical_json());
    CHECK(again.hash() == cfg.hash());
    // the hash reacts to any field change
    again.seed += 1;
    CHECK(again.hash() != cfg.hash());
    fs::remove_all(dir);
}

TEST_CASE("invalid configs are rejected with a named field") {
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/config.json"),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json_text("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"grid": {"n": 7}})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        RunConfig::from_json_text(R"({"coefficients": {"f": {"kind": "cubic"}}})"),
        std::invalid_argument);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"solver": {"dt": -1.0}})"),
                    std::invalid_argument);
}

TEST_CASE("simulate runs are byte-identical and experiments dispatch") {
    fs::path dir = temp_dir();
    RunConfig cfg = RunConfig::load(write_demo(dir));
    RunResult first = run(cfg);
    CHECK(first.exit_code == 0);
    std::string traj = slurp((fs::path(cfg.out) / "trajectory.csv").string());
    CHECK(traj.find("config_hash,seed,time") == 0);
    RunResult second = run(cfg);
    CHECK(second.exit_code == 0);
    CHECK(slurp((fs::path(cfg.out) / "trajectory.csv").string()) == traj);

    RunConfig bad = cfg;
    bad.experiment.name = "warp-drive";
    CHECK(run(bad).exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("validate-assumptions passes on the built-in osgood family") {
    fs::path dir = temp_dir();
    RunConfig cfg = RunConfig::load(write_demo(dir));
    cfg.experiment.name = "validate-assumptions";
    std::vector<AssumptionRow> rows = validate_assumptions(cfg);
    CHECK(rows.size() == 8);
    for (const auto& r : rows) {
        INFO(r.check, " margin ", r.margin, " note ", r.note);
        CHECK(r.pass);
    }
    CHECK(run(cfg).exit_code == 0);
    fs::remove_all(dir);
}

TEST_CASE("the command-line binary honors flags and exit codes") {
    fs::path dir = temp_dir();
    std::string cfg = write_demo(dir);
    std::string out = (dir / "cli_out").string();
    std::string cmd = std::string(TAMEDNS_CLI) + " simulate --config " + cfg +
                      " --out " + out + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(fs::path(out) / "trajectory.csv"));
    CHECK(fs::exists(fs::path(out) / "manifest.txt"));

    std::string manifest = slurp((fs::path(out) / "manifest.txt").string());
    CHECK(manifest.find("config_hash=") != std::string::npos);
    CHECK(manifest.find("seed=11") != std::string::npos);

    // --seed override changes the data, missing config is exit code 2
    std::string cmd2 = std::string(TAMEDNS_CLI) + " simulate --config " + cfg +
                       " --seed 99 --out " + out + "_b > /dev/null 2>&1";
    CHECK(std::system(cmd2.c_str()) == 0);
    std::string manifest2 = slurp((out + "_b/manifest.txt"));
    CHECK(manifest2.find("seed=99") != std::string::npos);

    std::string cmd3 = std::string(TAMEDNS_CLI) +
                       " simulate --config /nope.json > /dev/null 2>&1";
    int rc = std::system(cmd3.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    fs::remove_all(dir);
}
