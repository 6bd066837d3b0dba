#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scscc/rng.hpp"
#include "scscc/trellis.hpp"

using namespace scscc;

TEST_CASE("default recursive code matches the hand-derived transition table") {
    const Trellis tr = build_trellis(GeneratorSpec{});
    REQUIRE(tr.num_states == 4);

    // next state / parity for (state, input), register cell 0 newest,
    // state index = cell0 + 2*cell1.
    const int next[4][2] = {{0, 1}, {3, 2}, {1, 0}, {2, 3}};
    const int par[4][2] = {{0, 1}, {1, 0}, {0, 1}, {1, 0}};
    for (int s = 0; s < 4; ++s)
        for (int b = 0; b < 2; ++b) {
            CHECK(tr.next_state[size_t(s) * 2 + size_t(b)] == next[s][b]);
            CHECK(tr.parity_out[size_t(s) * 2 + size_t(b)] == par[s][b]);
        }
}

TEST_CASE("zero input from the zero state emits zero parity") {
    const Trellis tr = build_trellis(GeneratorSpec{});
    const auto res = rsc_encode(tr, std::vector<uint8_t>(64, 0), EncoderState{});
    for (const auto p : res.parity)
        CHECK(p == 0);
    CHECK(res.end_state.index == 0);
}

TEST_CASE("impulse response cycles with period three") {
    const Trellis tr = build_trellis(GeneratorSpec{});
    std::vector<uint8_t> u(10, 0);
    u[0] = 1;
    const auto res = rsc_encode(tr, u, EncoderState{});
    const std::vector<uint8_t> expect = {1, 1, 1, 0, 1, 1, 0, 1, 1, 0};
    CHECK(res.parity == expect);
    CHECK(res.end_state.index == 1); // states cycle 1,3,2 after the impulse
}

TEST_CASE("encoding a concatenation equals encoding the halves in sequence") {
    const Trellis tr = build_trellis(GeneratorSpec{});
    CounterRng rng(7);
    std::vector<uint8_t> a(17), b(23);
    for (auto& x : a)
        x = uint8_t(rng.next_u64() >> 63);
    for (auto& x : b)
        x = uint8_t(rng.next_u64() >> 63);

    std::vector<uint8_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());

    const auto whole = rsc_encode(tr, ab, EncoderState{});
    const auto first = rsc_encode(tr, a, EncoderState{});
    const auto second = rsc_encode(tr, b, first.end_state);

    std::vector<uint8_t> stitched = first.parity;
    stitched.insert(stitched.end(), second.parity.begin(), second.parity.end());
    CHECK(whole.parity == stitched);
    CHECK(whole.end_state.index == second.end_state.index);
}

TEST_CASE("parity is linear in the input from the zero state") {
    const Trellis tr = build_trellis(GeneratorSpec{});
    CounterRng rng(99);
    std::vector<uint8_t> u(32), v(32), w(32);
    for (size_t i = 0; i < u.size(); ++i) {
        u[i] = uint8_t(rng.next_u64() >> 63);
        v[i] = uint8_t(rng.next_u64() >> 63);
        w[i] = u[i] ^ v[i];
    }
    const auto pu = rsc_encode(tr, u, EncoderState{}).parity;
    const auto pv = rsc_encode(tr, v, EncoderState{}).parity;
    const auto pw = rsc_encode(tr, w, EncoderState{}).parity;
    for (size_t i = 0; i < u.size(); ++i)
        CHECK(pw[i] == (pu[i] ^ pv[i]));
}

TEST_CASE("every state keeps two inbound and two outbound edges") {
    for (const auto spec : {GeneratorSpec{},
                            GeneratorSpec{013, 015, 3},
                            GeneratorSpec{03, 02, 1}}) {
        const Trellis tr = build_trellis(spec);
        std::vector<int> inbound(size_t(tr.num_states), 0);
        for (int s = 0; s < tr.num_states; ++s) {
            CHECK(tr.next_state[size_t(s) * 2] != tr.next_state[size_t(s) * 2 + 1]);
            ++inbound[size_t(tr.next_state[size_t(s) * 2])];
            ++inbound[size_t(tr.next_state[size_t(s) * 2 + 1])];
        }
        for (const int c : inbound)
            CHECK(c == 2);
        for (int s = 0; s < tr.num_states; ++s)
            for (int b = 0; b < 2; ++b) {
                const int ns = tr.next_state[size_t(s) * 2 + size_t(b)];
                CHECK(tr.prev_state[size_t(ns)][size_t(b)] == s);
            }
    }
}

TEST_CASE("malformed generator specs are rejected") {
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{06, 05, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{07, 05, 3}), std::invalid_argument);
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{07, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{07, 037, 2}), std::invalid_argument);
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{07, 05, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_trellis(GeneratorSpec{07, 05, 17}), std::invalid_argument);
}

TEST_CASE("memory three code encodes deterministically") {
    const Trellis tr = build_trellis(GeneratorSpec{013, 015, 3});
    REQUIRE(tr.num_states == 8);
    std::vector<uint8_t> u(6, 0);
    u[0] = 1;
    const auto a = rsc_encode(tr, u, EncoderState{});
    const auto b = rsc_encode(tr, u, EncoderState{});
    CHECK(a.parity == b.parity);
    // parity of the impulse is nonzero somewhere
    int ones = 0;
    for (const auto p : a.parity)
        ones += p;
    CHECK(ones > 0);
}
