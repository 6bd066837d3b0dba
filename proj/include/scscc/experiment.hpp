#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scscc/coupling_encoder.hpp"
#include "scscc/window_decoder.hpp"

namespace scscc {

// Scenario algebra: with a fixed decoding latency L = W*K, the coupling
// memory trades constraint length C = K*(m+1) against block length, and
// matched iteration counts keep W*I_W (and so decoding work per bit)
// constant across the trade.
long constraint_length(int block_info_bits, int coupling_memory);
long structural_latency(int block_info_bits, int window_blocks);
long effective_iterations(int window_blocks, int window_iterations);
// decoding operations per info bit: 3 * unit_cost * W * I_W / K, where
// unit_cost is the outer per-block sweep cost (the inner sweep costs twice
// that, hence the factor 3)
double complexity_per_bit(int block_info_bits, int window_blocks,
                          int window_iterations, double unit_cost);
// smallest I_W whose W*I_W reaches the reference product (never below 1)
int matched_iterations(int ref_window, int ref_iterations, int window_blocks);

inline constexpr uint64_t default_seed = 0xC0DE5EEDull;

struct StopRule {
    long min_bit_errors = 200;
    long min_info_bits = 0;
    long max_info_bits = 10'000'000;
};

struct Scenario {
    std::string name;
    CouplingParams params;
    bool uncoupled = false; // m = 0, W = 1: plain serial concatenation
    GeneratorSpec outer_gen{};
    GeneratorSpec inner_gen{};
    uint64_t base_seed = default_seed;
    DecoderMode mode = DecoderMode::whole_window;
    BcjrMetric metric = BcjrMetric::exact;
    int chunk_blocks = 200;
    StopRule stop;
    std::vector<double> ebno_grid_db;
};

struct BerPoint {
    double ebno_db = 0.0;
    long info_bits = 0;
    long bit_errors = 0;
    long block_errors = 0;
    long blocks = 0;
    double ber = 0.0;
    double ci_low = 0.0;  // 95% Wilson
    double ci_high = 0.0;
    long inner_sections = 0;
    long outer_sections = 0;
    double sections_per_bit = 0.0;
};

// 95% score interval for an error probability from (errors, trials)
std::pair<double, double> wilson_interval(long errors, long trials, double z = 1.959963984540054);

// inclusive grid start, start+step, ..., stop
std::vector<double> make_ebno_grid(double start_db, double step_db, double stop_db);

// The five fixed-latency rows (L = 16384 ... 1024, C = L/2): per row the
// window doubles across {4,8,16,32,64,128} while K halves and m = W/2 - 1,
// with I_W matched to keep W*I_W >= 80. Cells whose coupling memory would
// reach 2K are structurally invalid and omitted (28 scenarios total).
std::vector<Scenario> table1_scenarios();

// Monte Carlo BER at one operating point. Simulates independent seeded
// chunks of chunk_blocks + W blocks until the stop rule is met; chunk
// results are accumulated in index order, so the outcome does not depend on
// the thread count.
BerPoint run_ber_point(const Scenario& sc, double ebno_db, int threads = 1);

// log-linear interpolation of the first crossing of `target` on a
// (x, value) curve walked left to right; values are floored at 1e-12.
// Throws std::runtime_error if the curve never brackets the target from
// above; returns the first x if the curve starts below it.
double interpolate_crossing(const std::vector<std::pair<double, double>>& curve, double target);

struct RequiredSnr {
    double ebno_db = 0.0; // point estimate
    double lo_db = 0.0;   // from the Wilson lower BER curve
    double hi_db = 0.0;   // from the Wilson upper BER curve
    std::vector<BerPoint> evaluated;
};

// Walks the scenario's Eb/N0 grid upward, simulating points until the BER
// estimate (and its upper confidence curve) fall below target_ber, then
// interpolates the crossing. Throws std::runtime_error when the grid cannot
// bracket the target.
RequiredSnr required_snr(const Scenario& sc, double target_ber, int threads = 1);

} // namespace scscc
