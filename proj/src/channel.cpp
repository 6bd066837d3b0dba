#include "scscc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace scscc {

ChannelSpec make_channel(double ebno_db, double rate) {
    if (rate <= 0.0 || rate > 1.0)
        throw std::invalid_argument("rate must be in (0, 1]");
    ChannelSpec ch;
    ch.ebno_db = ebno_db;
    ch.rate = rate;
    ch.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0));
    return ch;
}

std::vector<double> modulate(std::span<const uint8_t> bits) {
    std::vector<double> out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i)
        out[i] = bits[i] ? -1.0 : 1.0;
    return out;
}

std::vector<double> add_noise(std::span<const double> symbols, const ChannelSpec& ch, CounterRng& rng) {
    const double sigma = std::sqrt(ch.sigma2);
    std::vector<double> out(symbols.size());
    for (size_t i = 0; i < symbols.size(); ++i)
        out[i] = symbols[i] + sigma * rng.next_gaussian();
    return out;
}

std::vector<double> channel_llrs(std::span<const double> received, const ChannelSpec& ch) {
    const double scale = 2.0 / ch.sigma2;
    std::vector<double> out(received.size());
    for (size_t i = 0; i < received.size(); ++i)
        out[i] = scale * received[i];
    return out;
}

} // namespace scscc
