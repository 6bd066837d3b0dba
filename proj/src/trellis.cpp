#include "scscc/trellis.hpp"

#include <bit>
#include <stdexcept>

namespace scscc {

namespace {

int parity_of(unsigned v) {
    return std::popcount(v) & 1;
}

} // namespace

Trellis build_trellis(const GeneratorSpec& spec) {
    if (spec.memory < 1 || spec.memory > 16)
        throw std::invalid_argument("memory must be in [1, 16]");
    if ((spec.feedback & 1u) == 0)
        throw std::invalid_argument("feedback polynomial must have constant term 1");
    if ((spec.feedback >> spec.memory) != 1u)
        throw std::invalid_argument("feedback polynomial degree must equal memory");
    if (spec.feedforward == 0)
        throw std::invalid_argument("feedforward polynomial must be nonzero");
    if ((spec.feedforward >> (spec.memory + 1)) != 0)
        throw std::invalid_argument("feedforward polynomial must fit in memory+1 bits");

    Trellis t;
    t.spec = spec;
    t.num_states = 1 << spec.memory;
    t.next_state.resize(size_t(t.num_states) * 2);
    t.parity_out.resize(size_t(t.num_states) * 2);
    t.prev_state.assign(t.num_states, {-1, -1});

    // state bit j = register cell j, cell 0 holds the newest feedback bit
    const unsigned fb_taps = spec.feedback >> 1;   // taps on cells 0..memory-1
    const unsigned ff_taps = spec.feedforward >> 1;
    for (int s = 0; s < t.num_states; ++s) {
        for (int u = 0; u < 2; ++u) {
            const int w = u ^ parity_of(unsigned(s) & fb_taps);
            const int p = (w & int(spec.feedforward & 1u)) ^ parity_of(unsigned(s) & ff_taps);
            const int ns = ((s << 1) | w) & (t.num_states - 1);
            t.next_state[size_t(s) * 2 + u] = ns;
            t.parity_out[size_t(s) * 2 + u] = uint8_t(p);
            t.prev_state[ns][u] = s;
        }
    }
    for (int s = 0; s < t.num_states; ++s)
        if (t.prev_state[s][0] < 0 || t.prev_state[s][1] < 0)
            throw std::logic_error("trellis is not 2-in/2-out");
    return t;
}

RscResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> bits, EncoderState start) {
    if (start.index < 0 || start.index >= trellis.num_states)
        throw std::invalid_argument("start state out of range");
    std::vector<uint8_t> parity(bits.size());
    int s = start.index;
    for (size_t i = 0; i < bits.size(); ++i) {
        const int u = bits[i] & 1;
        parity[i] = trellis.parity_out[size_t(s) * 2 + u];
        s = trellis.next_state[size_t(s) * 2 + u];
    }
    return {std::move(parity), EncoderState{s}};
}

} // namespace scscc
