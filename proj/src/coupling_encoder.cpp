#include "scscc/coupling_encoder.hpp"

#include <stdexcept>
#include <utility>

#include "scscc/rng.hpp"

namespace scscc {

std::string check_params(const CouplingParams& p) {
    if (p.block_info_bits < 1)
        return "K must be positive";
    if (p.coupling_memory < 0)
        return "m must be non-negative";
    if (p.window_blocks < 1)
        return "W must be positive";
    if (p.window_iterations < 1)
        return "I_W must be positive";
    if (p.coupling_memory >= p.window_blocks)
        return "m < W required";
    if (p.coupling_memory >= 2 * p.block_info_bits)
        return "m < 2K required";
    if ((2 * p.block_info_bits) % (p.coupling_memory + 1) != 0)
        return "(m+1) must divide 2K";
    return {};
}

void validate_params(const CouplingParams& p) {
    const std::string msg = check_params(p);
    if (!msg.empty())
        throw std::invalid_argument(msg);
}

std::vector<uint8_t> mux_pairs(std::span<const uint8_t> u, std::span<const uint8_t> p) {
    if (u.size() != p.size())
        throw std::invalid_argument("mux: length mismatch");
    std::vector<uint8_t> out(2 * u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        out[2 * i] = u[i];
        out[2 * i + 1] = p[i];
    }
    return out;
}

std::vector<std::vector<uint8_t>> split_subsequences(std::span<const uint8_t> q, int m) {
    if (m < 0)
        throw std::invalid_argument("m must be non-negative");
    const size_t parts = size_t(m) + 1;
    if (q.size() % parts != 0)
        throw std::invalid_argument("(m+1) must divide 2K");
    const size_t s = q.size() / parts;
    std::vector<std::vector<uint8_t>> out(parts);
    for (size_t i = 0; i < parts; ++i)
        out[i].assign(q.begin() + long(i * s), q.begin() + long((i + 1) * s));
    return out;
}

std::vector<uint8_t> puncture_even(std::span<const uint8_t> bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("puncture: length must be even");
    std::vector<uint8_t> out(bits.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = bits[2 * i];
    return out;
}

std::vector<double> depuncture_llrs(std::span<const double> kept) {
    std::vector<double> out(kept.size() * 2, 0.0);
    for (size_t i = 0; i < kept.size(); ++i)
        out[2 * i] = kept[i];
    return out;
}

CodeContext make_code_context(const CouplingParams& params,
                              const GeneratorSpec& outer_gen,
                              const GeneratorSpec& inner_gen,
                              uint64_t base_seed) {
    validate_params(params);
    CodeContext ctx;
    ctx.params = params;
    ctx.outer = build_trellis(outer_gen);
    ctx.inner = build_trellis(inner_gen);
    const size_t n2 = size_t(2) * params.block_info_bits;
    ctx.perm1 = make_permutation(n2, derive_seed(base_seed, role_interleaver1, 0));
    ctx.perm2 = make_permutation(n2, derive_seed(base_seed, role_interleaver2, 0));

    const int s = params.subsequence_bits();
    ctx.route.lag.resize(n2);
    ctx.route.mux_pos.resize(n2);
    ctx.route.fwd_lag.resize(n2);
    ctx.route.fwd_section.resize(n2);
    for (size_t c = 0; c < n2; ++c) {
        const uint32_t j = ctx.perm2.inverse[c];
        ctx.route.lag[c] = int(j) / s;
        ctx.route.mux_pos[c] = int(ctx.perm1.inverse[j]);
    }
    for (size_t g = 0; g < n2; ++g) {
        const uint32_t j = ctx.perm1.forward[g];
        ctx.route.fwd_lag[g] = int(j) / s;
        ctx.route.fwd_section[g] = int(ctx.perm2.forward[j]);
    }
    return ctx;
}

EncoderPipelineState::EncoderPipelineState(const CouplingParams& params) : params_(params) {
    validate_params(params);
}

std::vector<uint8_t> EncoderPipelineState::pending_subsequence(int lag) const {
    if (lag < 1 || lag > params_.coupling_memory)
        throw std::invalid_argument("lag out of range");
    if (size_t(lag) <= past_parts_.size())
        return past_parts_[size_t(lag) - 1][size_t(lag)];
    return std::vector<uint8_t>(size_t(params_.subsequence_bits()), 0);
}

void EncoderPipelineState::push_parts(std::vector<std::vector<uint8_t>> parts) {
    past_parts_.push_front(std::move(parts));
    if (past_parts_.size() > size_t(params_.coupling_memory))
        past_parts_.pop_back();
    ++blocks_encoded_;
}

CodedBlock scc_encode_block(std::span<const uint8_t> u,
                            const Permutation& perm,
                            const Trellis& outer, const Trellis& inner,
                            EncoderState& outer_state, EncoderState& inner_state) {
    if (2 * u.size() != perm.size())
        throw std::invalid_argument("permutation length must be 2K");
    auto [p_outer, outer_end] = rsc_encode(outer, u, outer_state);
    outer_state = outer_end;
    const auto muxed = mux_pairs(u, p_outer);
    const auto q = permute<uint8_t>(perm, muxed);
    auto [p_inner, inner_end] = rsc_encode(inner, q, inner_state);
    inner_state = inner_end;
    CodedBlock blk;
    blk.systematic.assign(u.begin(), u.end());
    blk.outer_parity = std::move(p_outer);
    blk.inner_parity = puncture_even(p_inner);
    return blk;
}

CodedBlock sc_scc_encode_block(const CodeContext& ctx,
                               std::span<const uint8_t> u,
                               EncoderPipelineState& pipe) {
    const auto& p = ctx.params;
    if (u.size() != size_t(p.block_info_bits))
        throw std::invalid_argument("u must have K bits");

    auto [p_outer, outer_end] = rsc_encode(ctx.outer, u, pipe.outer_state);
    pipe.outer_state = outer_end;
    const auto muxed = mux_pairs(u, p_outer);
    const auto q = permute<uint8_t>(ctx.perm1, muxed);
    auto parts = split_subsequences(q, p.coupling_memory);

    const int s = p.subsequence_bits();
    std::vector<uint8_t> assembled(size_t(2) * p.block_info_bits);
    std::copy(parts[0].begin(), parts[0].end(), assembled.begin());
    for (int lag = 1; lag <= p.coupling_memory; ++lag) {
        const auto part = pipe.pending_subsequence(lag);
        std::copy(part.begin(), part.end(), assembled.begin() + size_t(lag) * s);
    }

    const auto inner_in = permute<uint8_t>(ctx.perm2, assembled);
    auto [p_inner, inner_end] = rsc_encode(ctx.inner, inner_in, pipe.inner_state);
    pipe.inner_state = inner_end;
    pipe.push_parts(std::move(parts));

    CodedBlock blk;
    blk.systematic.assign(u.begin(), u.end());
    blk.outer_parity = std::move(p_outer);
    blk.inner_parity = puncture_even(p_inner);
    return blk;
}

} // namespace scscc
