#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace vqsp {

using Rng = std::mt19937_64;

/// Builds an independent generator stream from a tuple of integer keys,
/// e.g. (base seed, iteration, parameter index, shift sign). Distinct key
/// tuples give statistically independent streams; equal tuples give
/// identical streams.
inline Rng make_rng(std::initializer_list<std::uint64_t> key) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * key.size() + 1);
    words.push_back(static_cast<std::uint32_t>(key.size()));
    for (auto k : key) {
        words.push_back(static_cast<std::uint32_t>(k & 0xffffffffULL));
        words.push_back(static_cast<std::uint32_t>(k >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

} // namespace vqsp
