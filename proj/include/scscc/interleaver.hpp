#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace scscc {

// Fixed pseudo-random permutation. forward[i] is where element i lands:
// out[forward[i]] = in[i].
struct Permutation {
    uint64_t seed = 0;
    std::vector<uint32_t> forward;
    std::vector<uint32_t> inverse;

    size_t size() const { return forward.size(); }
};

// Fisher-Yates shuffle driven by the counter-based generator, so a given
// (length, seed) pair yields the same permutation everywhere.
Permutation make_permutation(size_t length, uint64_t seed);

Permutation identity_permutation(size_t length);

// first then second: result.forward[i] = second.forward[first.forward[i]]
Permutation compose(const Permutation& second, const Permutation& first);

template <typename T>
std::vector<T> permute(const Permutation& p, std::span<const T> in) {
    if (in.size() != p.size())
        throw std::invalid_argument("permute: length mismatch");
    std::vector<T> out(in.size());
    for (size_t i = 0; i < in.size(); ++i)
        out[p.forward[i]] = in[i];
    return out;
}

template <typename T>
std::vector<T> depermute(const Permutation& p, std::span<const T> in) {
    if (in.size() != p.size())
        throw std::invalid_argument("depermute: length mismatch");
    std::vector<T> out(in.size());
    for (size_t i = 0; i < in.size(); ++i)
        out[i] = in[p.forward[i]];
    return out;
}

} // namespace scscc
