#include "scscc/interleaver.hpp"

#include <numeric>
#include <utility>

#include "scscc/rng.hpp"

namespace scscc {

namespace {

void fill_inverse(Permutation& p) {
    p.inverse.resize(p.forward.size());
    for (size_t i = 0; i < p.forward.size(); ++i)
        p.inverse[p.forward[i]] = uint32_t(i);
}

} // namespace

Permutation make_permutation(size_t length, uint64_t seed) {
    if (length == 0)
        throw std::invalid_argument("permutation length must be positive");
    Permutation p;
    p.seed = seed;
    p.forward.resize(length);
    std::iota(p.forward.begin(), p.forward.end(), 0u);
    CounterRng rng(seed);
    for (size_t i = length - 1; i > 0; --i) {
        const size_t j = size_t(rng.next_below(i + 1));
        std::swap(p.forward[i], p.forward[j]);
    }
    fill_inverse(p);
    return p;
}

Permutation identity_permutation(size_t length) {
    if (length == 0)
        throw std::invalid_argument("permutation length must be positive");
    Permutation p;
    p.forward.resize(length);
    std::iota(p.forward.begin(), p.forward.end(), 0u);
    p.inverse = p.forward;
    return p;
}

Permutation compose(const Permutation& second, const Permutation& first) {
    if (second.size() != first.size())
        throw std::invalid_argument("compose: length mismatch");
    Permutation p;
    p.seed = mix64(first.seed ^ mix64(second.seed));
    p.forward.resize(first.size());
    for (size_t i = 0; i < first.size(); ++i)
        p.forward[i] = second.forward[first.forward[i]];
    fill_inverse(p);
    return p;
}

} // namespace scscc
