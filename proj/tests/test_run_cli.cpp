#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sppsim/config.hpp"
#include "sppsim/run.hpp"

using namespace sppsim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "sppsim_run_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json read_json(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    return json::parse(f);
}

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
    std::map<std::string, std::string> m;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream f(e.path(), std::ios::binary);
        m[e.path().filename().string()] =
            std::string(std::istreambuf_iterator<char>(f), {});
    }
    return m;
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    static int n = 0;
    const fs::path log =
        fs::temp_directory_path() / ("sppsim_cli_log_" + std::to_string(n++));
    const std::string cmd =
        std::string("\"") + SPPSIM_CLI_PATH + "\" " + args + " > " +
        log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    std::ifstream f(log, std::ios::binary);
    std::string out(std::istreambuf_iterator<char>(f), {});
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

}  // namespace

TEST_CASE("a run writes its fields, tables, config echo and summary") {
    const fs::path dir = fresh_dir("oam");
    RunConfig cfg = parse_config(R"({
        "schema_version": 1, "experiment": "oam-ring",
        "grid": {"nx": 128, "nz": 128, "extent_x_m": 0.018, "extent_z_m": 0.018},
        "oam": {"l": 3, "ring_radius_m": 4.5e-3, "ring_width_m": 8e-4}})");
    cfg.output.directory = dir.string();
    const RunResult res = run_experiment(cfg);

    CHECK(res.out_dir == dir);
    REQUIRE(!res.outputs.empty());
    CHECK(res.outputs.back().filename() == "summary.json");
    for (const auto& p : res.outputs) CHECK(fs::exists(p));
    CHECK(fs::exists(dir / "ring.pgm"));
    CHECK(fs::exists(dir / "ring.csv"));
    CHECK(fs::exists(dir / "config.json"));

    const json summary = read_json(dir / "summary.json");
    CHECK(summary.at("experiment") == "oam-ring");
    CHECK(summary.at("material") == "aluminum");
    CHECK(summary.at("azimuthal_maxima") == 6);
    CHECK(summary.at("matches_expected") == true);
    CHECK(json::parse(res.summary_json) == summary);

    // the config echo reloads into an equivalent run
    const RunConfig echo = load_config_file(dir / "config.json");
    CHECK(echo.experiment == Experiment::oam_ring);
    CHECK(echo.oam.l == 3);
    CHECK(echo.output.directory == dir.string());
}

TEST_CASE("identical configs produce byte-identical output trees") {
    const std::string base = R"({
        "schema_version": 1, "experiment": "interferogram",
        "grid": {"nx": 96, "nz": 96, "extent_x_m": 0.018, "extent_z_m": 0.018},
        "phi0_rad": [0.0, 0.7853981633974483],
        "detector": {"nu": 48, "nv": 48,
                     "noise": {"model": "gaussian", "sigma_rel": 0.05},
                     "seed": 0}})";
    const fs::path a = fresh_dir("rep_a");
    const fs::path b = fresh_dir("rep_b");
    for (const fs::path& dir : {a, b}) {
        RunConfig cfg = parse_config(base);
        cfg.output.directory = dir.string();
        run_experiment(cfg);
    }
    auto ba = dir_bytes(a);
    auto bb = dir_bytes(b);
    // config.json echoes the differing output directory; everything else matches
    ba.erase("config.json");
    bb.erase("config.json");
    REQUIRE(ba.size() == bb.size());
    CHECK(ba.size() >= 6);  // thickness + 2x(g,o) + summary
    for (const auto& [name, bytes] : ba) {
        REQUIRE(bb.count(name) == 1);
        CHECK_MESSAGE(bytes == bb[name], name);
    }
}

TEST_CASE("the output directory falls back to the environment") {
    const fs::path dir = fresh_dir("envdir");
    setenv("SPPSIM_OUT_DIR", dir.string().c_str(), 1);
    RunConfig cfg = parse_config(R"({
        "schema_version": 1, "experiment": "deflection",
        "grid": {"nx": 32, "nz": 32, "extent_x_m": 0.018, "extent_z_m": 0.018}})");
    const RunResult res = run_experiment(cfg);
    unsetenv("SPPSIM_OUT_DIR");
    CHECK(res.out_dir == dir);
    CHECK(fs::exists(dir / "deflection_profile.csv"));
    CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("output formats select which files appear") {
    const fs::path dir = fresh_dir("csvonly");
    RunConfig cfg = parse_config(R"({
        "schema_version": 1, "experiment": "spp-map",
        "grid": {"nx": 64, "nz": 64, "extent_x_m": 0.018, "extent_z_m": 0.018},
        "output": {"formats": ["csv"]}})");
    cfg.output.directory = dir.string();
    run_experiment(cfg);
    CHECK(fs::exists(dir / "thickness_direct.csv"));
    CHECK(fs::exists(dir / "thickness_radon.csv"));
    CHECK_FALSE(fs::exists(dir / "thickness_direct.pgm"));

    const json summary = read_json(dir / "summary.json");
    // both thickness routes agree to well under the step height on this grid
    const double d = summary.at("d_lambda_m");
    CHECK(summary.at("route_rms_diff_m").get<double>() < 0.05 * d);
}

TEST_CASE("cli: mode subcommands run with overrides and report outputs") {
    const fs::path dir = fresh_dir("cli_ok");
    const CliResult r = run_cli("oam-ring -o " + dir.string() +
                                " -s grid.nx=128 -s grid.nz=128 -s oam.l=2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("wrote ") != std::string::npos);
    CHECK(r.output.find("summary.json") != std::string::npos);
    CHECK(fs::exists(dir / "ring.pgm"));
    const json summary = read_json(dir / "summary.json");
    CHECK(summary.at("azimuthal_maxima") == 4);
}

TEST_CASE("cli: --seed wires the detector seed") {
    const fs::path dir = fresh_dir("cli_seed");
    const CliResult r = run_cli(
        "interferogram -o " + dir.string() +
        " -s grid.nx=64 -s grid.nz=64 -s detector.nu=32 -s detector.nv=32"
        " -s detector.noise.model=\\\"poisson\\\" -s detector.noise.counts=500"
        " --seed 11");
    CHECK(r.exit_code == 0);
    const RunConfig echo = load_config_file(dir / "config.json");
    CHECK(echo.detector.seed == std::uint64_t(11));
    CHECK(echo.detector.noise_model == "poisson");
}

TEST_CASE("cli: validation failures exit 2 and name every problem") {
    const fs::path bad = fresh_dir("cli_bad") / "bad.json";
    std::ofstream(bad) << R"({"schema_version": 2, "experiment": "bogus",
                              "oam": {"l": 0}})";
    const CliResult r = run_cli("run -c " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("schema_version") != std::string::npos);
    CHECK(r.output.find("experiment") != std::string::npos);
    CHECK(r.output.find("oam.l") != std::string::npos);

    const fs::path garbled = fresh_dir("cli_garbled") / "garbled.json";
    std::ofstream(garbled) << "{not json";
    CHECK(run_cli("run -c " + garbled.string()).exit_code == 2);
}

TEST_CASE("cli: a missing config file exits 3") {
    const CliResult r = run_cli("run -c /nonexistent/sppsim.json");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("io error") != std::string::npos);
}

TEST_CASE("cli: argument errors exit 2, help exits 0") {
    CHECK(run_cli("run").exit_code == 2);        // --config is required here
    CHECK(run_cli("frobnicate").exit_code == 2);  // unknown mode
    CHECK(run_cli("").exit_code == 2);            // a mode is required
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("borrmann --help").exit_code == 0);
}
