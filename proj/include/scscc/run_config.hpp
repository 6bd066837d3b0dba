#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scscc/experiment.hpp"

namespace scscc {

extern const char* const version_string;

// Sweep description: shared run settings plus the scenario list. Scenarios
// inherit the run-level seed, mode, stop rule, chunk size and grid.
struct RunConfig {
    uint64_t seed = default_seed;
    int threads = 1; // 0 = hardware concurrency
    DecoderMode mode = DecoderMode::whole_window;
    BcjrMetric metric = BcjrMetric::exact;
    StopRule stop;
    int chunk_blocks = 200;
    std::string out_dir = "results";
    GeneratorSpec outer_gen{};
    GeneratorSpec inner_gen{};
    std::vector<double> ebno_grid_db;
    std::vector<Scenario> scenarios;
};

// Parses the sectioned key = value format:
//
//   [run]            seed, threads, mode, metric, min_errors, min_bits,
//                    max_bits, chunk_blocks, out
//   [code]           outer_feedback, outer_feedforward, outer_memory and the
//                    inner_* trio, polynomials as octal integers
//   [ebno]           grid = start:step:stop  (dB)
//   [scenario]       name, K, m, W, I_W (or I_eff), uncoupled; repeatable
//
// '#' starts a comment. Throws std::invalid_argument naming the offending
// key or constraint.
RunConfig parse_config(const std::string& text);

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name); // throws on unknown name

// SCSCC_SEED environment variable overrides the config seed when set.
void apply_env_overrides(RunConfig& cfg);

// Re-applies the run-level fields (seed, mode, stop rule, grid, ...) onto
// every scenario; call after mutating them, e.g. from command-line flags.
void refresh_scenarios(RunConfig& cfg);

// Canonical echo of the effective config, one "key = value" line per entry.
std::string config_echo(const RunConfig& cfg);

// Runs every (scenario, grid point) work unit, appending rows to
// <out_dir>/results.csv as they finish and curve blocks to
// <out_dir>/curves.dat at the end. Returns 0 when every unit succeeded.
int run_sweep(const RunConfig& cfg, std::ostream& log);

} // namespace scscc
