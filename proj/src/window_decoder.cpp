#include "scscc/window_decoder.hpp"

#include <stdexcept>
#include <utility>

namespace scscc {

WindowDecoder::WindowDecoder(const CodeContext& ctx, DecoderMode mode, BcjrMetric metric)
    : ctx_(ctx), mode_(mode), metric_(metric),
      inner_engine_(ctx.inner), outer_engine_(ctx.outer) {
    inner_alpha_left_ = StateDistribution::one_hot(ctx.inner.num_states, 0);
    outer_alpha_left_ = StateDistribution::one_hot(ctx.outer.num_states, 0);
    const int w = ctx.params.window_blocks;
    for (int i = 0; i < w; ++i) {
        inner_beta_edge_.push_back(StateDistribution::uniform(ctx.inner.num_states));
        outer_beta_edge_.push_back(StateDistribution::uniform(ctx.outer.num_states));
    }
}

void WindowDecoder::push_block(BlockChannelLlrs block) {
    const int k = ctx_.params.block_info_bits;
    if (view_full())
        throw std::logic_error("window is already full");
    if (flushed_)
        throw std::logic_error("decoder already flushed");
    if (block.systematic.size() != size_t(k) ||
        block.outer_parity.size() != size_t(k) ||
        block.inner_parity.size() != size_t(2 * k))
        throw std::invalid_argument("block llr lengths do not match K");
    LlrBlock blk;
    blk.ch = std::move(block);
    blk.outer_extrinsic.assign(size_t(2 * k), 0.0);
    blk.inner_extrinsic.assign(size_t(2 * k), 0.0);
    view_.push_back(std::move(blk));
    ++pushed_;
}

double WindowDecoder::mux_channel(const LlrBlock& blk, int pos) const {
    return (pos & 1) ? blk.ch.outer_parity[size_t(pos >> 1)]
                     : blk.ch.systematic[size_t(pos >> 1)];
}

const LlrBlock* WindowDecoder::block_at(long t) const {
    if (t >= first_block_) {
        const size_t off = size_t(t - first_block_);
        return off < view_.size() ? &view_[off] : nullptr;
    }
    if (t >= 0) {
        const size_t back = size_t(first_block_ - 1 - t);
        if (back < history_.size())
            return &history_[back];
    }
    return nullptr; // pre-stream zeros or beyond retained history
}

void WindowDecoder::build_inner_input(int w0, int blocks, SisoInput& in) const {
    const int n2 = 2 * ctx_.params.block_info_bits;
    const size_t n = size_t(blocks) * n2;
    in.systematic_llrs.resize(n);
    in.parity_llrs.resize(n);
    in.prior_in.resize(n);
    size_t idx = 0;
    for (int w = w0; w < w0 + blocks; ++w) {
        const long t = first_block_ + w;
        const LlrBlock& cur = view_[size_t(w)];
        for (int c = 0; c < n2; ++c, ++idx) {
            const long ref = t - ctx_.route.lag[size_t(c)];
            const int g = ctx_.route.mux_pos[size_t(c)];
            if (ref < 0) {
                // zero padding before the stream: never transmitted, known 0
                in.systematic_llrs[idx] = 0.0;
                in.prior_in[idx] = llr_clamp;
            } else if (const LlrBlock* src = block_at(ref)) {
                in.systematic_llrs[idx] = mux_channel(*src, g);
                in.prior_in[idx] = src->outer_extrinsic[size_t(g)];
            } else {
                throw std::logic_error("coupled reference outside retained blocks");
            }
            in.parity_llrs[idx] = cur.ch.inner_parity[size_t(c)];
        }
    }
}

void WindowDecoder::build_outer_input(int w0, int blocks, SisoInput& in) const {
    const int k = ctx_.params.block_info_bits;
    const long right = first_block_ + long(view_.size()) - 1;
    const size_t n = size_t(blocks) * k;
    in.systematic_llrs.resize(n);
    in.parity_llrs.resize(n);
    in.prior_in.resize(n);
    size_t idx = 0;
    for (int w = w0; w < w0 + blocks; ++w) {
        const long t = first_block_ + w;
        const LlrBlock& cur = view_[size_t(w)];
        for (int i = 0; i < k; ++i, ++idx) {
            const int gu = 2 * i;
            const int gp = 2 * i + 1;
            const long src_u = t + ctx_.route.fwd_lag[size_t(gu)];
            const long src_p = t + ctx_.route.fwd_lag[size_t(gp)];
            double la_u = 0.0, la_p = 0.0;
            if (src_u <= right)
                la_u = view_[size_t(src_u - first_block_)]
                           .inner_extrinsic[size_t(ctx_.route.fwd_section[size_t(gu)])];
            if (src_p <= right)
                la_p = view_[size_t(src_p - first_block_)]
                           .inner_extrinsic[size_t(ctx_.route.fwd_section[size_t(gp)])];
            in.systematic_llrs[idx] = cur.ch.systematic[size_t(i)];
            in.prior_in[idx] = la_u;
            in.parity_llrs[idx] = cur.ch.outer_parity[size_t(i)] + la_p;
        }
    }
}

void WindowDecoder::run_iteration_whole(bool capture) {
    const auto& p = ctx_.params;
    const int n2 = 2 * p.block_info_bits;
    const int w = p.window_blocks;

    build_inner_input(0, w, inner_in_);
    inner_in_.alpha0 = inner_alpha_left_;
    inner_in_.betaN = StateDistribution::uniform(ctx_.inner.num_states);
    BcjrOptions iopts;
    iopts.metric = metric_;
    iopts.alpha_tap_index = n2;
    iopts.parity_outputs = false;
    inner_engine_.run(inner_in_, iopts, inner_out_);
    counters_.inner_calls += 1;
    counters_.inner_sections += long(n2) * w;
    for (int wb = 0; wb < w; ++wb)
        for (int c = 0; c < n2; ++c)
            view_[size_t(wb)].inner_extrinsic[size_t(c)] =
                inner_out_.extrinsic[size_t(wb) * n2 + c];
    if (capture)
        inner_alpha_next_ = inner_out_.alpha_tap;

    const int k = p.block_info_bits;
    build_outer_input(0, w, outer_in_);
    outer_in_.alpha0 = outer_alpha_left_;
    outer_in_.betaN = StateDistribution::uniform(ctx_.outer.num_states);
    BcjrOptions oopts;
    oopts.metric = metric_;
    oopts.alpha_tap_index = k;
    outer_engine_.run(outer_in_, oopts, outer_out_);
    counters_.outer_calls += 1;
    counters_.outer_sections += long(k) * w;
    for (int wb = 0; wb < w; ++wb)
        for (int i = 0; i < k; ++i) {
            const size_t idx = size_t(wb) * k + i;
            view_[size_t(wb)].outer_extrinsic[size_t(2 * i)] = outer_out_.extrinsic[idx];
            view_[size_t(wb)].outer_extrinsic[size_t(2 * i + 1)] = outer_out_.parity_extrinsic[idx];
        }
    if (capture) {
        outer_alpha_next_ = outer_out_.alpha_tap;
        last_posteriors_ = outer_out_.posterior;
    }
}

void WindowDecoder::run_iteration_blockwise(bool capture) {
    const auto& p = ctx_.params;
    const int n2 = 2 * p.block_info_bits;
    const int k = p.block_info_bits;
    const int w = p.window_blocks;

    BcjrOptions iopts;
    iopts.metric = metric_;
    iopts.parity_outputs = false;
    StateDistribution alpha_carry = inner_alpha_left_;
    std::deque<StateDistribution> new_beta;
    for (int wb = 0; wb < w; ++wb) {
        build_inner_input(wb, 1, inner_in_);
        inner_in_.alpha0 = alpha_carry;
        inner_in_.betaN = (wb + 1 < w) ? inner_beta_edge_[size_t(wb + 1)]
                                       : StateDistribution::uniform(ctx_.inner.num_states);
        inner_engine_.run(inner_in_, iopts, inner_out_);
        counters_.inner_calls += 1;
        counters_.inner_sections += n2;
        for (int c = 0; c < n2; ++c)
            view_[size_t(wb)].inner_extrinsic[size_t(c)] = inner_out_.extrinsic[size_t(c)];
        new_beta.push_back(inner_out_.beta_initial);
        alpha_carry = inner_out_.alpha_final;
        if (wb == 0 && capture)
            inner_alpha_next_ = inner_out_.alpha_final;
    }
    inner_beta_edge_ = std::move(new_beta);

    BcjrOptions oopts;
    oopts.metric = metric_;
    if (capture)
        last_posteriors_.resize(size_t(w) * k);
    alpha_carry = outer_alpha_left_;
    new_beta.clear();
    for (int wb = 0; wb < w; ++wb) {
        build_outer_input(wb, 1, outer_in_);
        outer_in_.alpha0 = alpha_carry;
        outer_in_.betaN = (wb + 1 < w) ? outer_beta_edge_[size_t(wb + 1)]
                                       : StateDistribution::uniform(ctx_.outer.num_states);
        outer_engine_.run(outer_in_, oopts, outer_out_);
        counters_.outer_calls += 1;
        counters_.outer_sections += k;
        for (int i = 0; i < k; ++i) {
            view_[size_t(wb)].outer_extrinsic[size_t(2 * i)] = outer_out_.extrinsic[size_t(i)];
            view_[size_t(wb)].outer_extrinsic[size_t(2 * i + 1)] =
                outer_out_.parity_extrinsic[size_t(i)];
        }
        new_beta.push_back(outer_out_.beta_initial);
        alpha_carry = outer_out_.alpha_final;
        if (wb == 0 && capture)
            outer_alpha_next_ = outer_out_.alpha_final;
        if (capture)
            for (int i = 0; i < k; ++i)
                last_posteriors_[size_t(wb) * k + i] = outer_out_.posterior[size_t(i)];
    }
    outer_beta_edge_ = std::move(new_beta);
}

void WindowDecoder::run_iteration(bool capture) {
    if (mode_ == DecoderMode::whole_window)
        run_iteration_whole(capture);
    else
        run_iteration_blockwise(capture);
}

std::vector<uint8_t> WindowDecoder::decode_position() {
    const auto& p = ctx_.params;
    if (!view_full())
        throw std::logic_error("decode_position requires a full window");
    if (flushed_)
        throw std::logic_error("decoder already flushed");

    for (int it = 0; it < p.window_iterations; ++it)
        run_iteration(it + 1 == p.window_iterations);
    counters_.positions += 1;

    processed_.resize(size_t(first_block_) + p.window_blocks, 0);
    for (int wb = 0; wb < p.window_blocks; ++wb)
        processed_[size_t(first_block_) + wb] += p.window_iterations;

    const int k = p.block_info_bits;
    std::vector<uint8_t> decided(size_t(k), 0);
    for (int i = 0; i < k; ++i)
        decided[size_t(i)] = last_posteriors_[size_t(i)] < 0.0 ? 1 : 0;

    inner_alpha_left_ = inner_alpha_next_;
    outer_alpha_left_ = outer_alpha_next_;
    history_.push_front(std::move(view_.front()));
    view_.pop_front();
    if (history_.size() > size_t(p.coupling_memory))
        history_.pop_back();
    if (!inner_beta_edge_.empty()) {
        inner_beta_edge_.pop_front();
        outer_beta_edge_.pop_front();
        inner_beta_edge_.push_back(StateDistribution::uniform(ctx_.inner.num_states));
        outer_beta_edge_.push_back(StateDistribution::uniform(ctx_.outer.num_states));
    }
    ++first_block_;
    position_decoded_ = true;
    return decided;
}

std::vector<std::vector<uint8_t>> WindowDecoder::flush() {
    const auto& p = ctx_.params;
    if (!position_decoded_)
        throw std::logic_error("flush before any decoded position");
    if (flushed_)
        throw std::logic_error("decoder already flushed");
    flushed_ = true;
    const int k = p.block_info_bits;
    std::vector<std::vector<uint8_t>> out;
    for (int wb = 1; wb < p.window_blocks; ++wb) {
        std::vector<uint8_t> decided(size_t(k), 0);
        for (int i = 0; i < k; ++i)
            decided[size_t(i)] = last_posteriors_[size_t(wb) * k + i] < 0.0 ? 1 : 0;
        out.push_back(std::move(decided));
    }
    return out;
}

StreamDecodeResult run_stream_decoder(const CodeContext& ctx,
                                      const std::vector<BlockChannelLlrs>& stream,
                                      DecoderMode mode, BcjrMetric metric) {
    const auto& p = ctx.params;
    const size_t w = size_t(p.window_blocks);
    if (stream.size() < w)
        throw std::invalid_argument("stream shorter than the decoding window");

    WindowDecoder dec(ctx, mode, metric);
    StreamDecodeResult res;
    res.bits.reserve(stream.size() * size_t(p.block_info_bits));

    size_t next = 0;
    while (next < w)
        dec.push_block(stream[next++]);
    for (;;) {
        auto decided = dec.decode_position();
        res.bits.insert(res.bits.end(), decided.begin(), decided.end());
        if (next < stream.size()) {
            dec.push_block(stream[next++]);
        } else {
            for (auto& blk : dec.flush())
                res.bits.insert(res.bits.end(), blk.begin(), blk.end());
            break;
        }
    }
    res.processed_per_block = dec.processed_per_block();
    res.counters = dec.counters();
    return res;
}

} // namespace scscc
