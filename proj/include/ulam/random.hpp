#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ulam/rational.hpp"
#include "ulam/types.hpp"

namespace ulam {

// All randomness in the library flows through mt19937_64 (fully specified by
// the standard, hence bit-portable) seeded through splitmix64, with bounded
// draws done by rejection sampling instead of std::uniform_int_distribution
// (whose output is implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Independent engine for substream `stream` of a master seed.
inline std::mt19937_64 substream_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1)));
}

// Unbiased uniform draw from {0, ..., bound-1}.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = eng();
    } while (r >= limit);
    return r % bound;
}

// Exact Bernoulli(p/q) without floating point.
inline bool bernoulli_rational(std::mt19937_64& eng, const Rational& p) {
    if (p.num() <= 0) return false;
    if (p.num() >= p.den()) return true;
    return uniform_below(eng, static_cast<std::uint64_t>(p.den())) <
           static_cast<std::uint64_t>(p.num());
}

inline Permutation random_permutation(std::mt19937_64& eng, int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(eng, static_cast<std::uint64_t>(i) + 1));
        std::swap(e[static_cast<std::size_t>(i)], e[j]);
    }
    return Permutation(std::move(e));
}

inline SymbolString random_string(std::mt19937_64& eng, int sigma, int length) {
    std::vector<int> e(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        e[static_cast<std::size_t>(i)] = 1 + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(sigma)));
    }
    return SymbolString(std::move(e), sigma);
}

}  // namespace ulam
