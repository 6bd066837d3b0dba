#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "scscc/rng.hpp"

using namespace scscc;

TEST_CASE("counter rng is a pure function of key and counter") {
    CounterRng a(12345), b(12345);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());

    CounterRng c(12345), d(12346);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        same += (c.next_u64() == d.next_u64());
    CHECK(same == 0);
}

TEST_CASE("derived seeds are distinct across roles and indices") {
    std::set<uint64_t> seen;
    for (uint64_t role = 0; role < 8; ++role)
        for (uint64_t idx = 0; idx < 64; ++idx)
            seen.insert(derive_seed(0xC0DE5EEDull, role, idx));
    CHECK(seen.size() == 8u * 64u);

    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("bounded draws stay in range and look uniform") {
    CounterRng rng(987654321);
    const uint64_t bound = 5;
    std::vector<int> counts(bound, 0);
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const uint64_t v = rng.next_below(bound);
        REQUIRE(v < bound);
        ++counts[v];
    }
    const double expect = double(n) / double(bound);
    double chi2 = 0;
    for (const int c : counts)
        chi2 += (c - expect) * (c - expect) / expect;
    // 4 degrees of freedom: mean 4, sd sqrt(8); allow a wide band.
    CHECK(chi2 < 20.0);
}

TEST_CASE("unit draws are in (0, 1]") {
    CounterRng rng(42);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("gaussian draws have the right first two moments") {
    CounterRng rng(0xFEEDu);
    const int n = 1000000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::fabs(mean) < 5e-3);
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}
