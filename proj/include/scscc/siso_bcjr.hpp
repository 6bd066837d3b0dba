#pragma once

#include <vector>

#include "scscc/trellis.hpp"

namespace scscc {

// Log-domain state weights, shifted so the max entry is 0. Entries of -inf
// mark impossible states.
struct StateDistribution {
    std::vector<double> log_p;

    static StateDistribution uniform(int num_states);
    static StateDistribution one_hot(int num_states, int state);
    void normalize();
};

// All LLRs follow the log(P(0)/P(1)) convention. The total weight attached
// to section k's input bit is systematic_llrs[k] + prior_in[k]; parity_llrs
// carries the full parity-bit attachment (zero where punctured). Inputs are
// clamped to +-llr_clamp before use.
struct SisoInput {
    std::vector<double> systematic_llrs;
    std::vector<double> parity_llrs;
    std::vector<double> prior_in;
    StateDistribution alpha0;
    StateDistribution betaN;
};

struct BcjrResult {
    // input-bit quantities; posterior = systematic + prior + extrinsic
    std::vector<double> extrinsic;
    std::vector<double> posterior;
    // parity-bit quantities; parity_posterior = parity_llr + parity_extrinsic
    std::vector<double> parity_extrinsic;
    std::vector<double> parity_posterior;
    StateDistribution alpha_final; // forward weights after the last section
    StateDistribution beta_initial; // backward weights before the first section
    StateDistribution alpha_tap;   // forward weights at the requested section edge
};

enum class BcjrMetric { exact, max_log };

inline constexpr double llr_clamp = 300.0;

struct BcjrOptions {
    BcjrMetric metric = BcjrMetric::exact;
    // if >= 0, alpha_tap captures the forward weights entering section
    // alpha_tap_index (edge between sections alpha_tap_index-1 and
    // alpha_tap_index)
    int alpha_tap_index = -1;
    // parity outputs cost extra log-sums; callers that only consume input-bit
    // extrinsics can turn them off
    bool parity_outputs = true;
};

// Forward-backward a-posteriori decoding of one RSC segment. No termination
// assumptions: boundary knowledge enters only through alpha0/betaN.
class BcjrEngine {
public:
    explicit BcjrEngine(const Trellis& trellis);
    void run(const SisoInput& in, const BcjrOptions& opts, BcjrResult& out);

private:
    const Trellis& trellis_;
    std::vector<double> alpha_; // (N+1) x num_states
    std::vector<double> beta_;  //  2    x num_states, ping-pong rows
};

BcjrResult bcjr(const Trellis& trellis, const SisoInput& in, const BcjrOptions& opts = {});

} // namespace scscc
