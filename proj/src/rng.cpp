#include "scscc/rng.hpp"

#include <cmath>
#include <numbers>

namespace scscc {

namespace {
constexpr uint64_t golden = 0x9E3779B97F4A7C15ull;
}

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t base, uint64_t role, uint64_t index) {
    return mix64(mix64(base + golden * (role + 1)) + index);
}

uint64_t CounterRng::next_u64() {
    ++counter_;
    return mix64(key_ + golden * counter_);
}

uint64_t CounterRng::next_below(uint64_t bound) {
    const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

double CounterRng::next_unit() {
    // 53 random bits, shifted into (0, 1]
    return double((next_u64() >> 11) + 1) * 0x1p-53;
}

double CounterRng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

} // namespace scscc
