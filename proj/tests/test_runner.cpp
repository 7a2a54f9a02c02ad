#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdelab/runner.hpp"

using namespace spdelab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig tiny_config(const std::string& out) {
    RunConfig cfg;
    cfg.scenario.id = "runner-test";
    cfg.scenario.grid = SpaceTimeGrid{1.0, 32, 7};
    cfg.scenario.sigma = "bounded-rational:1";
    cfg.scenario.n_paths = 60;
    cfg.scenario.seed = 7;
    cfg.checks = {"hypotheses", "local_property", "girsanov_entropy"};
    cfg.scenario.h = "constant:1";
    cfg.scenario.grid.nx = 2047;  // entropy needs the fine space quadrature
    cfg.scenario.grid.nt = 8;
    cfg.output_dir = out;
    return cfg;
}

}  // namespace

TEST_CASE("config text round trip") {
    const auto cfg = parse_config_text(
        "# comment\n"
        "scenario.id = demo\n"
        "grid.T = 2.0\n"
        "grid.nt = 128\n"
        "grid.nx = 31\n"
        "u0 = sine\n"
        "b = affine:0.5,0\n"
        "sigma = bounded-rational:1\n"
        "h = constant:1\n"
        "paths = 250\n"
        "seed = 99\n"
        "workers = 4\n"
        "checks = tci, layer_cake\n"
        "formats = json\n"
        "eps = 0.1,0.5\n"
        "lambdas = 0.5,1,2\n");
    CHECK(cfg.scenario.id == "demo");
    CHECK(cfg.scenario.grid.T == 2.0);
    CHECK(cfg.scenario.grid.nt == 128);
    CHECK(cfg.scenario.grid.nx == 31);
    CHECK(cfg.scenario.u0 == "sine");
    CHECK(cfg.scenario.b == "affine:0.5,0");
    CHECK(cfg.scenario.n_paths == 250);
    CHECK(cfg.scenario.seed == 99);
    CHECK(cfg.workers == 4);
    CHECK(cfg.checks == std::vector<std::string>{"tci", "layer_cake"});
    CHECK(cfg.write_json);
    CHECK_FALSE(cfg.write_csv);
    CHECK(cfg.eps_list == std::vector<double>{0.1, 0.5});
    CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), std::invalid_argument);
}

TEST_CASE("run: exit codes and artifacts") {
    const auto dir = fs::temp_directory_path() / "spdelab_runner_ok";
    fs::remove_all(dir);
    auto cfg = tiny_config(dir.string());
    CHECK(run(cfg) == 0);
    CHECK(fs::exists(dir / "manifest.txt"));
    CHECK(fs::exists(dir / "hypotheses.json"));
    CHECK(fs::exists(dir / "hypotheses.csv"));
    CHECK(fs::exists(dir / "local_property.json"));
    CHECK(fs::exists(dir / "girsanov_entropy.json"));

    // unknown check id: configuration error
    auto bad = cfg;
    bad.checks = {"no_such_check"};
    bad.output_dir = (fs::temp_directory_path() / "spdelab_runner_badid").string();
    CHECK(run(bad) == 2);
    CHECK(slurp(fs::path(bad.output_dir) / "manifest.txt").find("unknown check id") !=
          std::string::npos);

    // hypothesis violation: configuration error with a witness
    auto violate = cfg;
    violate.scenario.sigma = "affine:1,0";
    violate.output_dir = (fs::temp_directory_path() / "spdelab_runner_h2").string();
    CHECK(run(violate) == 2);
    CHECK(slurp(fs::path(violate.output_dir) / "manifest.txt").find("hypothesis violation") !=
          std::string::npos);

    // a degenerate concentration ensemble fails its check: exit 1
    auto fail = cfg;
    fail.scenario.sigma = "zero";
    fail.scenario.h = "zero";
    fail.checks = {"concentration"};
    fail.scenario.grid = SpaceTimeGrid{1.0, 8, 7};
    fail.scenario.n_paths = 150;
    fail.output_dir = (fs::temp_directory_path() / "spdelab_runner_fail").string();
    CHECK(run(fail) == 1);
    fs::remove_all(dir);
    fs::remove_all(bad.output_dir);
    fs::remove_all(violate.output_dir);
    fs::remove_all(fail.output_dir);
}

TEST_CASE("reruns produce bit-identical reports for any worker count") {
    const auto d1 = fs::temp_directory_path() / "spdelab_runner_det1";
    const auto d2 = fs::temp_directory_path() / "spdelab_runner_det2";
    const auto d3 = fs::temp_directory_path() / "spdelab_runner_det3";
    for (const auto& d : {d1, d2, d3}) fs::remove_all(d);

    RunConfig cfg;
    cfg.scenario.id = "det";
    cfg.scenario.grid = SpaceTimeGrid{1.0, 32, 7};
    cfg.scenario.sigma = "bounded-rational:1";
    cfg.scenario.h = "constant:1";
    cfg.scenario.n_paths = 80;
    cfg.scenario.seed = 41;
    cfg.checks = {"moment_bound", "tci", "local_property"};
    cfg.p_large = 12.0;

    cfg.output_dir = d1.string();
    cfg.workers = 1;
    CHECK(run(cfg) == 0);
    cfg.output_dir = d2.string();
    cfg.workers = 4;
    CHECK(run(cfg) == 0);
    cfg.output_dir = d3.string();
    cfg.workers = 8;
    CHECK(run(cfg) == 0);

    for (const char* name : {"moment_bound.json", "tci.json", "local_property.json",
                             "moment_bound.csv", "tci.csv", "local_property.csv"}) {
        const auto ref = slurp(d1 / name);
        CHECK(!ref.empty());
        CHECK(ref == slurp(d2 / name));
        CHECK(ref == slurp(d3 / name));
    }
    for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
}

TEST_CASE("every advertised check id dispatches") {
    RunConfig cfg;
    cfg.scenario.grid = SpaceTimeGrid{1.0, 16, 15};
    cfg.scenario.sigma = "bounded-rational:1";
    cfg.scenario.h = "sine-x:1";
    cfg.scenario.n_paths = 120;
    cfg.scenario.seed = 5;
    cfg.q = 12.0;
    cfg.p_small = 2.0;
    cfg.p_large = 12.0;
    cfg.lambdas = {1.0};
    cfg.eps_list = {0.5};
    cfg.checks = known_checks();
    const auto reports = run_checks(cfg);
    CHECK(reports.size() >= cfg.checks.size());
    for (const auto& r : reports) CHECK(!r.check_name.empty());
}
