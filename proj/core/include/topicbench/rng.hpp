#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace topicbench {

// All randomized code in the library draws through these helpers instead of
// <random> distributions, whose output is implementation-defined. mt19937_64
// itself is fully specified, so results are identical across toolchains.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a stream id.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n); n must be > 0.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

template <typename T>
void shuffle_inplace(std::vector<T>& items, std::mt19937_64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(gen, i));
        std::swap(items[i - 1], items[j]);
    }
}

// Index sampled proportionally to weights (all >= 0, at least one > 0).
std::size_t weighted_pick(std::span<const double> weights, std::mt19937_64& gen);

}  // namespace topicbench
