#pragma once

#include <cstdint>

namespace scscc {

// 64-bit finalizer with full avalanche (splitmix64 output stage).
uint64_t mix64(uint64_t z);

// Stream key for a (role, index) pair under one master seed. Distinct roles
// and indices give statistically independent streams.
uint64_t derive_seed(uint64_t base, uint64_t role, uint64_t index);

inline constexpr uint64_t role_interleaver1 = 1;
inline constexpr uint64_t role_interleaver2 = 2;
inline constexpr uint64_t role_noise = 3;
inline constexpr uint64_t role_info = 4;

// Counter-based generator: output i is a pure function of (key, i), so
// sequences are identical on every platform and can be re-seeded mid-stream.
class CounterRng {
public:
    explicit CounterRng(uint64_t key) : key_(key) {}

    uint64_t next_u64();
    // uniform in [0, bound), bound >= 1, unbiased via rejection
    uint64_t next_below(uint64_t bound);
    // uniform in (0, 1]
    double next_unit();
    // standard normal, Box-Muller
    double next_gaussian();

    uint64_t key() const { return key_; }

private:
    uint64_t key_;
    uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace scscc
