#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace scscc {

// Rate-1/2 recursive systematic convolutional component code, controller
// canonical form. Polynomials are bit masks: bit i is the coefficient of D^i,
// so the classic (1, 5/7) code is {07, 05, 2} in octal.
struct GeneratorSpec {
    unsigned feedback = 07;
    unsigned feedforward = 05;
    int memory = 2;
};

struct EncoderState {
    int index = 0;
};

struct Trellis {
    GeneratorSpec spec;
    int num_states = 0;
    // indexed [state * 2 + input_bit]
    std::vector<int> next_state;
    std::vector<uint8_t> parity_out;
    // incoming edges: prev_state[s][b] is the unique state that reaches s on
    // input bit b (the feedback polynomial's top coefficient makes the
    // per-input state map a bijection)
    std::vector<std::array<int, 2>> prev_state;
};

// Validates the generators (feedback constant term 1, feedback degree exactly
// `memory`, feedforward nonzero and within memory+1 bits) and builds the
// state tables. Throws std::invalid_argument on malformed generators.
Trellis build_trellis(const GeneratorSpec& spec);

struct RscResult {
    std::vector<uint8_t> parity;
    EncoderState end_state;
};

// Encodes one parity bit per input bit, starting from `start`. No
// termination: the caller carries the end state into the next call.
RscResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> bits, EncoderState start);

} // namespace scscc
