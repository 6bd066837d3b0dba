#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "scscc/coupling_encoder.hpp"
#include "scscc/siso_bcjr.hpp"

namespace scscc {

// Channel LLRs for one received block. inner_parity is depunctured to the
// full 2K trellis sections (zeros where nothing was transmitted).
struct BlockChannelLlrs {
    std::vector<double> systematic;   // K
    std::vector<double> outer_parity; // K
    std::vector<double> inner_parity; // 2K
};

// Decoder-side per-block storage. outer_extrinsic lives in the multiplexed
// (u, outer parity) domain; inner_extrinsic is indexed by the block's inner
// trellis sections. Both start at zero when the block enters the window.
struct LlrBlock {
    BlockChannelLlrs ch;
    std::vector<double> outer_extrinsic; // 2K
    std::vector<double> inner_extrinsic; // 2K
};

enum class DecoderMode { whole_window, block_wise };

struct DecodeCounters {
    long inner_calls = 0;
    long outer_calls = 0;
    long inner_sections = 0;
    long outer_sections = 0;
    long positions = 0;
};

// Sliding-window decoder over the coupled stream. A window position sees W
// consecutive blocks; each of the I_W iterations runs the inner soft decoder
// and then the outer one, exchanging extrinsics through the coupling route.
// In whole_window mode one forward/backward pass spans all W blocks per
// component per iteration; in block_wise mode each block is swept separately
// with forward state passed on within the sweep and backward boundaries held
// over from the previous iteration. The leftmost block is decided after I_W
// iterations and the window slides by one block; forward boundary
// distributions thread across positions and are frozen at emission. Blocks
// before the stream start act as known zeros; emitted blocks keep their
// frozen extrinsics, which still feed the coupled a-priori of lags 1..m.
class WindowDecoder {
public:
    WindowDecoder(const CodeContext& ctx, DecoderMode mode,
                  BcjrMetric metric = BcjrMetric::exact);

    void push_block(BlockChannelLlrs block);
    // Decodes the current position and emits the leftmost block, then slides.
    std::vector<uint8_t> decode_position();
    // Decisions for the W-1 blocks left after the final position, from the
    // posteriors that position already computed.
    std::vector<std::vector<uint8_t>> flush();

    bool view_full() const { return view_.size() == size_t(ctx_.params.window_blocks); }
    long first_block_index() const { return first_block_; }
    const std::deque<LlrBlock>& view() const { return view_; }
    const DecodeCounters& counters() const { return counters_; }
    const std::vector<long>& processed_per_block() const { return processed_; }

private:
    void run_iteration(bool capture);
    void run_iteration_whole(bool capture);
    void run_iteration_blockwise(bool capture);
    void build_inner_input(int w0, int blocks, SisoInput& in) const;
    void build_outer_input(int w0, int blocks, SisoInput& in) const;
    double mux_channel(const LlrBlock& blk, int pos) const;
    const LlrBlock* block_at(long t) const; // view, history, or null (pre-stream)

    const CodeContext& ctx_;
    DecoderMode mode_;
    BcjrMetric metric_;
    BcjrEngine inner_engine_;
    BcjrEngine outer_engine_;

    std::deque<LlrBlock> view_;
    std::deque<LlrBlock> history_; // up to m emitted blocks, newest first
    long first_block_ = 0;         // stream index of view front
    long pushed_ = 0;

    StateDistribution inner_alpha_left_;
    StateDistribution outer_alpha_left_;
    StateDistribution inner_alpha_next_;
    StateDistribution outer_alpha_next_;
    // block_wise mode: backward weights at each in-view block's left edge,
    // kept from the previous sweep
    std::deque<StateDistribution> inner_beta_edge_;
    std::deque<StateDistribution> outer_beta_edge_;

    std::vector<double> last_posteriors_; // W*K, final outer pass of a position
    bool position_decoded_ = false;
    bool flushed_ = false;

    SisoInput inner_in_;
    SisoInput outer_in_;
    BcjrResult inner_out_;
    BcjrResult outer_out_;

    DecodeCounters counters_;
    std::vector<long> processed_;
};

struct StreamDecodeResult {
    std::vector<uint8_t> bits; // T*K, block-major
    std::vector<long> processed_per_block;
    DecodeCounters counters;
};

// Decodes a T-block stream (T >= W): positions 0..T-W each emit one block,
// the final position also flushes the remaining W-1.
StreamDecodeResult run_stream_decoder(const CodeContext& ctx,
                                      const std::vector<BlockChannelLlrs>& stream,
                                      DecoderMode mode,
                                      BcjrMetric metric = BcjrMetric::exact);

} // namespace scscc
