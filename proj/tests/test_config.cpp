#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "scscc/run_config.hpp"

using namespace scscc;
namespace fs = std::filesystem;

namespace {

const char* sample = R"(# sweep description
[run]
seed = 1234
threads = 2
mode = blockwise
metric = maxlog
min_errors = 77
max_bits = 50000
chunk_blocks = 25
out = sweep_out

[code]
outer_feedback = 13
outer_feedforward = 15
outer_memory = 3
inner_feedback = 7
inner_feedforward = 5
inner_memory = 2

[ebno]
grid = 0.5 : 0.5 : 2.5

[scenario]
name = coupled
K = 16
m = 1
W = 4
I_eff = 80   # derives I_W = 20

[scenario]
K = 64
uncoupled = true
I_W = 8
)";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// data rows only, with the trailing wall-time column removed
std::vector<std::string> csv_rows_no_time(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("name,", 0) == 0)
            continue;
        const auto cut = line.find_last_of(',');
        rows.push_back(line.substr(0, cut));
    }
    return rows;
}

} // namespace

TEST_CASE("a full config parses into materialized scenarios") {
    const RunConfig cfg = parse_config(sample);
    CHECK(cfg.seed == 1234);
    CHECK(cfg.threads == 2);
    CHECK(cfg.mode == DecoderMode::block_wise);
    CHECK(cfg.metric == BcjrMetric::max_log);
    CHECK(cfg.stop.min_bit_errors == 77);
    CHECK(cfg.stop.max_info_bits == 50000);
    CHECK(cfg.chunk_blocks == 25);
    CHECK(cfg.out_dir == "sweep_out");
    CHECK(cfg.outer_gen.feedback == 013);
    CHECK(cfg.outer_gen.feedforward == 015);
    CHECK(cfg.outer_gen.memory == 3);
    CHECK(cfg.inner_gen.feedback == 07);
    REQUIRE(cfg.ebno_grid_db.size() == 5);
    CHECK(cfg.ebno_grid_db.front() == 0.5);
    CHECK(cfg.ebno_grid_db.back() == 2.5);

    REQUIRE(cfg.scenarios.size() == 2);
    const auto& a = cfg.scenarios[0];
    CHECK(a.name == "coupled");
    CHECK(a.params.block_info_bits == 16);
    CHECK(a.params.coupling_memory == 1);
    CHECK(a.params.window_blocks == 4);
    CHECK(a.params.window_iterations == 20); // from I_eff = 80
    CHECK_FALSE(a.uncoupled);

    const auto& b = cfg.scenarios[1];
    CHECK(b.uncoupled);
    CHECK(b.params.window_blocks == 1);
    CHECK(b.params.coupling_memory == 0);
    CHECK(b.params.window_iterations == 8);
    CHECK(b.name == "K64-W1-m0-scc");

    // run-level settings are copied onto every scenario
    for (const auto& sc : cfg.scenarios) {
        CHECK(sc.base_seed == 1234);
        CHECK(sc.mode == DecoderMode::block_wise);
        CHECK(sc.metric == BcjrMetric::max_log);
        CHECK(sc.stop.min_bit_errors == 77);
        CHECK(sc.chunk_blocks == 25);
        CHECK(sc.outer_gen.memory == 3);
        CHECK(sc.ebno_grid_db.size() == 5);
    }
}

TEST_CASE("config errors carry the offending key or constraint") {
    const char* base = "[ebno]\ngrid = 1:1:2\n[scenario]\nK = 8\nm = 1\nW = 2\nI_W = 1\n";
    CHECK_NOTHROW(parse_config(base));

    CHECK_THROWS_WITH(parse_config("[run]\nbogus = 1\n" + std::string(base)),
                      "unknown key 'bogus' in [run]");
    CHECK_THROWS_WITH(parse_config("[nope]\n"), "unknown section [nope]");
    CHECK_THROWS_WITH(parse_config("seed = 1\n"), "key 'seed' outside any section");
    CHECK_THROWS_AS(parse_config("[run]\nseed = banana\n" + std::string(base)),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[run]\nmode = sideways\n" + std::string(base)),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config("[ebno]\ngrid = 1:2\n"), std::invalid_argument);
    CHECK_THROWS_WITH(parse_config("[ebno]\ngrid = 1:1:2\n"), "config defines no scenarios");
    CHECK_THROWS_WITH(
        parse_config("[scenario]\nK = 8\nm = 1\nW = 2\nI_W = 1\n"),
        "empty Eb/N0 grid");

    // structural constraints surface with their own wording
    CHECK_THROWS_WITH(
        parse_config("[ebno]\ngrid = 1:1:2\n[scenario]\nK = 5\nm = 3\nW = 8\nI_W = 1\n"),
        "(m+1) must divide 2K");
    CHECK_THROWS_WITH(
        parse_config("[ebno]\ngrid = 1:1:2\n[scenario]\nK = 8\nm = 4\nW = 4\nI_W = 1\n"),
        "m < W required");
    CHECK_THROWS_WITH(
        parse_config(
            "[ebno]\ngrid = 1:1:2\n[scenario]\nK = 8\nm = 1\nW = 2\nI_W = 1\nuncoupled = true\n"),
        "scenario: uncoupled requires m = 0 and W = 1");
    CHECK_THROWS_WITH(
        parse_config("[ebno]\ngrid = 1:1:2\n[scenario]\nK = 8\nm = 1\nW = 2\n"),
        "scenario: I_W (or I_eff) is required");
}

TEST_CASE("presets cover the study families") {
    const auto names = preset_names();
    REQUIRE(names.size() == 8);

    for (const auto& n : names) {
        const RunConfig cfg = preset_config(n);
        CHECK(!cfg.scenarios.empty());
        CHECK(!cfg.ebno_grid_db.empty());
        for (const auto& sc : cfg.scenarios)
            CHECK(check_params(sc.params).empty());
    }

    const auto l1024 = preset_config("table1/L1024");
    CHECK(l1024.scenarios.size() == 5);
    for (const auto& sc : l1024.scenarios)
        CHECK(sc.params.structural_latency() == 1024);

    const auto fig5a = preset_config("fig5a");
    REQUIRE(fig5a.scenarios.size() == 4);
    for (const auto& sc : fig5a.scenarios) {
        CHECK(sc.params.block_info_bits == 32);
        CHECK(sc.params.window_blocks == 32);
        CHECK(sc.params.window_iterations == 3);
    }
    CHECK(fig5a.scenarios[0].params.coupling_memory == 1);
    CHECK(fig5a.scenarios[3].params.coupling_memory == 15);

    const auto fig7 = preset_config("fig7");
    REQUIRE(fig7.scenarios.size() == 2);
    CHECK_FALSE(fig7.scenarios[0].uncoupled);
    CHECK(fig7.scenarios[1].uncoupled);
    CHECK(fig7.scenarios[1].params.block_info_bits == 1024);
    CHECK(fig7.scenarios[1].params.window_iterations == 80);
    // equal structural latency and effective iterations across the pair
    CHECK(fig7.scenarios[0].params.structural_latency() ==
          fig7.scenarios[1].params.structural_latency());
    CHECK(fig7.scenarios[0].params.effective_iterations() ==
          fig7.scenarios[1].params.effective_iterations());

    CHECK(preset_config("fig8").scenarios.size() == 3);
    CHECK_THROWS_AS(preset_config("table1/L999"), std::invalid_argument);
    CHECK_THROWS_AS(preset_config("unknown"), std::invalid_argument);
}

TEST_CASE("the environment seed override wins and re-materializes") {
    RunConfig cfg = parse_config(sample);
    REQUIRE(setenv("SCSCC_SEED", "999", 1) == 0);
    apply_env_overrides(cfg);
    unsetenv("SCSCC_SEED");
    CHECK(cfg.seed == 999);
    for (const auto& sc : cfg.scenarios)
        CHECK(sc.base_seed == 999);

    REQUIRE(setenv("SCSCC_SEED", "not-a-number", 1) == 0);
    CHECK_THROWS_AS(apply_env_overrides(cfg), std::invalid_argument);
    unsetenv("SCSCC_SEED");
}

TEST_CASE("the config echo is itself a parseable config") {
    const RunConfig cfg = parse_config(sample);
    const std::string echo = config_echo(cfg);
    const RunConfig redo = parse_config(echo);
    CHECK(redo.seed == cfg.seed);
    CHECK(redo.mode == cfg.mode);
    CHECK(redo.metric == cfg.metric);
    CHECK(redo.outer_gen.feedback == cfg.outer_gen.feedback);
    CHECK(redo.ebno_grid_db == cfg.ebno_grid_db);
    REQUIRE(redo.scenarios.size() == cfg.scenarios.size());
    for (size_t i = 0; i < redo.scenarios.size(); ++i) {
        CHECK(redo.scenarios[i].name == cfg.scenarios[i].name);
        CHECK(redo.scenarios[i].params.block_info_bits ==
              cfg.scenarios[i].params.block_info_bits);
        CHECK(redo.scenarios[i].params.window_iterations ==
              cfg.scenarios[i].params.window_iterations);
        CHECK(redo.scenarios[i].uncoupled == cfg.scenarios[i].uncoupled);
    }
}

TEST_CASE("refreshing scenarios re-applies run-level fields") {
    RunConfig cfg = parse_config(sample);
    cfg.seed = 42424242;
    cfg.stop.min_bit_errors = 3;
    refresh_scenarios(cfg);
    for (const auto& sc : cfg.scenarios) {
        CHECK(sc.base_seed == 42424242);
        CHECK(sc.stop.min_bit_errors == 3);
    }
}

TEST_CASE("a sweep writes reproducible result files") {
    const char* tiny = R"(
[run]
seed = 77
min_errors = 5
max_bits = 4000
chunk_blocks = 10
[ebno]
grid = 2.0:1.0:2.0
[scenario]
name = smoke
K = 8
m = 1
W = 2
I_W = 1
)";
    RunConfig cfg = parse_config(tiny);
    const fs::path base = fs::temp_directory_path();
    const fs::path dir_a = base / "scscc_sweep_a";
    const fs::path dir_b = base / "scscc_sweep_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    std::ostringstream log_a, log_b;
    cfg.out_dir = dir_a.string();
    REQUIRE(run_sweep(cfg, log_a) == 0);
    cfg.out_dir = dir_b.string();
    REQUIRE(run_sweep(cfg, log_b) == 0);

    REQUIRE(fs::exists(dir_a / "results.csv"));
    REQUIRE(fs::exists(dir_a / "curves.dat"));

    const std::string csv = slurp(dir_a / "results.csv");
    CHECK(csv.find("# scscc-sim") != std::string::npos);
    CHECK(csv.find("seed = 77") != std::string::npos); // config echo embedded
    CHECK(csv.find("name,K,m,W,I_W,uncoupled,L,C,I_eff,ebno_db") != std::string::npos);
    const auto rows = csv_rows_no_time(csv);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rfind("smoke,8,1,2,1,0,16,16,2,2,", 0) == 0);

    // identical run, identical numbers; only wall time may differ
    CHECK(rows == csv_rows_no_time(slurp(dir_b / "results.csv")));

    const std::string dat = slurp(dir_a / "curves.dat");
    CHECK(dat.find("# curve: smoke") != std::string::npos);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    // a scenario the simulator rejects is logged and fails the sweep
    RunConfig bad = parse_config(tiny);
    bad.scenarios[0].uncoupled = true; // inconsistent with m = 1, W = 2
    bad.out_dir = (base / "scscc_sweep_c").string();
    std::ostringstream log_c;
    CHECK(run_sweep(bad, log_c) == 1);
    CHECK(log_c.str().find("failed") != std::string::npos);
    fs::remove_all(base / "scscc_sweep_c");
}
