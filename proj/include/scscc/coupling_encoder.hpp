#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "scscc/interleaver.hpp"
#include "scscc/trellis.hpp"

namespace scscc {

// Coupled-code shape: K info bits per block, coupling memory m, decoding
// window of W blocks, I_W iterations per window position.
struct CouplingParams {
    int block_info_bits = 0;    // K
    int coupling_memory = 0;    // m
    int window_blocks = 0;      // W
    int window_iterations = 0;  // I_W

    long constraint_length() const { return long(block_info_bits) * (coupling_memory + 1); }
    long structural_latency() const { return long(window_blocks) * block_info_bits; }
    long effective_iterations() const { return long(window_blocks) * window_iterations; }
    int subsequence_bits() const { return 2 * block_info_bits / (coupling_memory + 1); }
};

// Empty string when valid, otherwise the violated constraint.
std::string check_params(const CouplingParams& p);
void validate_params(const CouplingParams& p); // throws std::invalid_argument

// One transmitted block: K systematic bits, K outer parity bits, K surviving
// inner parity bits. Rate 1/3 with no termination overhead at any length.
struct CodedBlock {
    std::vector<uint8_t> systematic;
    std::vector<uint8_t> outer_parity;
    std::vector<uint8_t> inner_parity; // punctured, even positions kept
};

// u0,p0,u1,p1,...
std::vector<uint8_t> mux_pairs(std::span<const uint8_t> u, std::span<const uint8_t> p);

// Slices q into m+1 equal parts, part i = q[i*S, (i+1)*S). Requires (m+1) | q.size().
std::vector<std::vector<uint8_t>> split_subsequences(std::span<const uint8_t> q, int m);

// Keeps even indices. Input length must be even.
std::vector<uint8_t> puncture_even(std::span<const uint8_t> bits);

// Spreads K kept LLRs back over 2K trellis sections, zeros where punctured.
std::vector<double> depuncture_llrs(std::span<const double> kept);

// Section c of a block's inner trellis carries the bit that entered the
// coupler `lag` blocks earlier at position `mux_pos` of that block's
// multiplexed (u, outer parity) pair sequence.
struct CouplingRoute {
    std::vector<int> lag;     // by inner section, 0..m
    std::vector<int> mux_pos; // by inner section, 0..2K-1
    // reverse direction: mux position g of block t is consumed by the inner
    // trellis of block t + fwd_lag[g] at section fwd_section[g]
    std::vector<int> fwd_lag;
    std::vector<int> fwd_section;
};

// Everything fixed for one code instance: component trellises, the two
// permutations (drawn once from the seed schedule, reused for every block),
// and the coupling route derived from them.
struct CodeContext {
    CouplingParams params;
    Trellis outer;
    Trellis inner;
    Permutation perm1; // after mux, length 2K
    Permutation perm2; // after coupling assembly, length 2K
    CouplingRoute route;
};

CodeContext make_code_context(const CouplingParams& params,
                              const GeneratorSpec& outer_gen,
                              const GeneratorSpec& inner_gen,
                              uint64_t base_seed);

// Continuous-encoding state: component encoder states plus the split
// subsequences of the last m blocks (newest first). Blocks before the stream
// start read as all-zero subsequences.
class EncoderPipelineState {
public:
    explicit EncoderPipelineState(const CouplingParams& params);

    EncoderState outer_state;
    EncoderState inner_state;

    // q-subsequence of the block encoded `lag` blocks ago at part index
    // `lag`, zeros when that block predates the stream
    std::vector<uint8_t> pending_subsequence(int lag) const;
    void push_parts(std::vector<std::vector<uint8_t>> parts);
    long blocks_encoded() const { return blocks_encoded_; }

private:
    CouplingParams params_;
    std::deque<std::vector<std::vector<uint8_t>>> past_parts_; // front = newest
    long blocks_encoded_ = 0;
};

// Plain serial concatenation of one block (no coupling): u -> outer ->
// mux -> perm -> inner -> puncture. Component states are carried through.
CodedBlock scc_encode_block(std::span<const uint8_t> u,
                            const Permutation& perm,
                            const Trellis& outer, const Trellis& inner,
                            EncoderState& outer_state, EncoderState& inner_state);

// One block of the coupled stream. Advances the pipeline state.
CodedBlock sc_scc_encode_block(const CodeContext& ctx,
                               std::span<const uint8_t> u,
                               EncoderPipelineState& pipe);

} // namespace scscc
