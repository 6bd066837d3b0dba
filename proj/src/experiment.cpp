#include "scscc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "scscc/channel.hpp"
#include "scscc/rng.hpp"

namespace scscc {

long constraint_length(int block_info_bits, int coupling_memory) {
    return long(block_info_bits) * (coupling_memory + 1);
}

long structural_latency(int block_info_bits, int window_blocks) {
    return long(window_blocks) * block_info_bits;
}

long effective_iterations(int window_blocks, int window_iterations) {
    return long(window_blocks) * window_iterations;
}

double complexity_per_bit(int block_info_bits, int window_blocks,
                          int window_iterations, double unit_cost) {
    return 3.0 * unit_cost * double(effective_iterations(window_blocks, window_iterations)) /
           double(block_info_bits);
}

int matched_iterations(int ref_window, int ref_iterations, int window_blocks) {
    if (ref_window < 1 || ref_iterations < 1 || window_blocks < 1)
        throw std::invalid_argument("window and iteration counts must be positive");
    const long product = long(ref_window) * ref_iterations;
    const long iters = (product + window_blocks - 1) / window_blocks;
    return int(std::max(1l, iters));
}

std::pair<double, double> wilson_interval(long errors, long trials, double z) {
    if (trials <= 0 || errors < 0 || errors > trials)
        throw std::invalid_argument("wilson_interval: bad counts");
    const double n = double(trials);
    const double p = double(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // The bound is exact at the extremes; avoid cancellation residue there.
    const double lo = errors == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = errors == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

std::vector<double> make_ebno_grid(double start_db, double step_db, double stop_db) {
    if (step_db <= 0.0)
        throw std::invalid_argument("grid step must be positive");
    if (stop_db < start_db)
        throw std::invalid_argument("grid stop must not precede start");
    std::vector<double> grid;
    for (long i = 0;; ++i) {
        const double x = start_db + double(i) * step_db;
        if (x > stop_db + 1e-9)
            break;
        grid.push_back(x);
    }
    return grid;
}

std::vector<Scenario> table1_scenarios() {
    std::vector<Scenario> out;
    for (const long latency : {16384l, 8192l, 4096l, 2048l, 1024l}) {
        for (const int w : {4, 8, 16, 32, 64, 128}) {
            Scenario sc;
            sc.params.block_info_bits = int(latency) / w;
            sc.params.coupling_memory = w / 2 - 1;
            sc.params.window_blocks = w;
            sc.params.window_iterations = matched_iterations(4, 20, w);
            if (!check_params(sc.params).empty())
                continue;
            sc.name = "L" + std::to_string(latency) +
                      "-K" + std::to_string(sc.params.block_info_bits) +
                      "-W" + std::to_string(w) +
                      "-m" + std::to_string(sc.params.coupling_memory);
            sc.ebno_grid_db = make_ebno_grid(0.0, 0.25, 4.0);
            out.push_back(std::move(sc));
        }
    }
    return out;
}

namespace {

struct ChunkResult {
    long info_bits = 0;
    long bit_errors = 0;
    long block_errors = 0;
    long blocks = 0;
    long inner_sections = 0;
    long outer_sections = 0;
};

// A chunk models a slice of the continuous stream in steady state. The first
// m blocks lean on the known zero-padding before the stream (artificially
// strong) and the tail blocks lose coupled shares to the stream end
// (artificially weak), so the chunk encodes extra blocks on both sides and
// only the middle chunk_blocks are counted.
ChunkResult simulate_chunk(const Scenario& sc, const CodeContext& ctx,
                           const ChannelSpec& ch, long chunk_index) {
    const auto& p = ctx.params;
    const int k = p.block_info_bits;
    const long counted = long(sc.chunk_blocks);
    const long skip = p.coupling_memory;
    const long blocks = counted + p.window_blocks + 2l * p.coupling_memory;

    CounterRng info_rng(derive_seed(sc.base_seed, role_info, uint64_t(chunk_index)));
    const uint64_t noise_key = derive_seed(sc.base_seed, role_noise, uint64_t(chunk_index));

    EncoderPipelineState pipe(p);
    std::vector<uint8_t> sent;
    sent.reserve(size_t(blocks) * k);
    std::vector<BlockChannelLlrs> stream(size_t(blocks), BlockChannelLlrs{});

    std::vector<uint8_t> u(size_t(k), 0);
    for (long t = 0; t < blocks; ++t) {
        for (auto& b : u)
            b = uint8_t(info_rng.next_u64() >> 63);
        const CodedBlock blk = sc_scc_encode_block(ctx, u, pipe);
        sent.insert(sent.end(), u.begin(), u.end());

        std::vector<uint8_t> tx;
        tx.reserve(size_t(3) * k);
        tx.insert(tx.end(), blk.systematic.begin(), blk.systematic.end());
        tx.insert(tx.end(), blk.outer_parity.begin(), blk.outer_parity.end());
        tx.insert(tx.end(), blk.inner_parity.begin(), blk.inner_parity.end());

        CounterRng noise_rng(derive_seed(noise_key, 0, uint64_t(t)));
        const auto symbols = modulate(tx);
        const auto received = add_noise(symbols, ch, noise_rng);
        const auto llrs = channel_llrs(received, ch);

        BlockChannelLlrs& b = stream[size_t(t)];
        b.systematic.assign(llrs.begin(), llrs.begin() + k);
        b.outer_parity.assign(llrs.begin() + k, llrs.begin() + 2 * k);
        b.inner_parity = depuncture_llrs(
            std::span<const double>(llrs.data() + 2 * k, size_t(k)));
    }

    const StreamDecodeResult dec = run_stream_decoder(ctx, stream, sc.mode, sc.metric);

    ChunkResult res;
    res.blocks = counted;
    res.info_bits = counted * k;
    for (long t = skip; t < skip + counted; ++t) {
        long block_errs = 0;
        for (int i = 0; i < k; ++i)
            block_errs += dec.bits[size_t(t) * k + i] != sent[size_t(t) * k + i];
        res.bit_errors += block_errs;
        res.block_errors += block_errs > 0;
    }
    res.inner_sections = dec.counters.inner_sections;
    res.outer_sections = dec.counters.outer_sections;
    return res;
}

} // namespace

BerPoint run_ber_point(const Scenario& sc, double ebno_db, int threads) {
    validate_params(sc.params);
    if (sc.uncoupled &&
        (sc.params.coupling_memory != 0 || sc.params.window_blocks != 1))
        throw std::invalid_argument("uncoupled scenarios require m = 0 and W = 1");
    if (sc.chunk_blocks < 1)
        throw std::invalid_argument("chunk_blocks must be positive");

    const CodeContext ctx =
        make_code_context(sc.params, sc.outer_gen, sc.inner_gen, sc.base_seed);
    const ChannelSpec ch = make_channel(ebno_db, 1.0 / 3.0);
    const int lanes = std::max(1, threads);

    BerPoint pt;
    pt.ebno_db = ebno_db;
    long chunk = 0;
    bool done = false;
    while (!done) {
        std::vector<std::future<ChunkResult>> wave;
        for (int i = 0; i < lanes; ++i) {
            const long idx = chunk + i;
            wave.push_back(std::async(lanes == 1 ? std::launch::deferred : std::launch::async,
                                      [&sc, &ctx, &ch, idx] {
                                          return simulate_chunk(sc, ctx, ch, idx);
                                      }));
        }
        for (auto& f : wave) {
            const ChunkResult r = f.get();
            if (done)
                continue; // later chunks of the wave are discarded once stopped
            pt.info_bits += r.info_bits;
            pt.bit_errors += r.bit_errors;
            pt.block_errors += r.block_errors;
            pt.blocks += r.blocks;
            pt.inner_sections += r.inner_sections;
            pt.outer_sections += r.outer_sections;
            const bool enough_errors = pt.bit_errors >= sc.stop.min_bit_errors &&
                                       pt.info_bits >= sc.stop.min_info_bits;
            if (enough_errors || pt.info_bits >= sc.stop.max_info_bits)
                done = true;
        }
        chunk += lanes;
    }

    pt.ber = double(pt.bit_errors) / double(pt.info_bits);
    std::tie(pt.ci_low, pt.ci_high) = wilson_interval(pt.bit_errors, pt.info_bits);
    pt.sections_per_bit =
        double(pt.inner_sections + pt.outer_sections) / double(pt.info_bits);
    return pt;
}

double interpolate_crossing(const std::vector<std::pair<double, double>>& curve, double target) {
    if (curve.empty())
        throw std::runtime_error("empty curve");
    if (target <= 0.0)
        throw std::invalid_argument("target must be positive");
    const auto floor_val = [](double v) { return std::max(v, 1e-12); };
    if (floor_val(curve.front().second) < target)
        return curve.front().first;
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        const double b1 = floor_val(curve[i].second);
        const double b2 = floor_val(curve[i + 1].second);
        if (b1 >= target && b2 < target) {
            const double x1 = curve[i].first;
            const double x2 = curve[i + 1].first;
            return x1 + (x2 - x1) * (std::log(b1) - std::log(target)) /
                            (std::log(b1) - std::log(b2));
        }
    }
    throw std::runtime_error("target BER not bracketed by the SNR grid");
}

RequiredSnr required_snr(const Scenario& sc, double target_ber, int threads) {
    if (sc.ebno_grid_db.empty())
        throw std::invalid_argument("scenario has an empty Eb/N0 grid");
    RequiredSnr out;
    bool point_bracketed = false;
    bool upper_bracketed = false;
    for (const double x : sc.ebno_grid_db) {
        out.evaluated.push_back(run_ber_point(sc, x, threads));
        const auto& pt = out.evaluated.back();
        if (out.evaluated.size() >= 2) {
            const auto& prev = out.evaluated[out.evaluated.size() - 2];
            if (prev.ber >= target_ber && pt.ber < target_ber)
                point_bracketed = true;
        } else if (pt.ber < target_ber) {
            throw std::runtime_error("target BER not bracketed by the SNR grid");
        }
        if (pt.ci_high < target_ber)
            upper_bracketed = true;
        if (point_bracketed && upper_bracketed)
            break;
    }

    std::vector<std::pair<double, double>> mid, lo, hi;
    for (const auto& pt : out.evaluated) {
        mid.emplace_back(pt.ebno_db, pt.ber);
        lo.emplace_back(pt.ebno_db, pt.ci_low);
        hi.emplace_back(pt.ebno_db, pt.ci_high);
    }
    out.ebno_db = interpolate_crossing(mid, target_ber);
    out.lo_db = interpolate_crossing(lo, target_ber);
    if (!upper_bracketed)
        throw std::runtime_error("confidence curve not bracketed by the SNR grid");
    out.hi_db = interpolate_crossing(hi, target_ber);
    return out;
}

} // namespace scscc
