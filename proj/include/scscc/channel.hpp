#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scscc/rng.hpp"

namespace scscc {

// BPSK over AWGN. Eb/N0 is per information bit, so the noise variance folds
// in the code rate: sigma2 = 1 / (2 * rate * 10^(ebno_db/10)).
struct ChannelSpec {
    double ebno_db = 0.0;
    double rate = 1.0 / 3.0;
    double sigma2 = 1.5;
};

ChannelSpec make_channel(double ebno_db, double rate);

// bit 0 -> +1, bit 1 -> -1
std::vector<double> modulate(std::span<const uint8_t> bits);

std::vector<double> add_noise(std::span<const double> symbols, const ChannelSpec& ch, CounterRng& rng);

// L = 2y / sigma2, positive means bit 0
std::vector<double> channel_llrs(std::span<const double> received, const ChannelSpec& ch);

} // namespace scscc
