#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace girg {

// splitmix64 step; also used to expand seeds into engine state.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic substream key: folds a path of integers into a master seed.
// Streams with different paths are independent for all practical purposes, so
// results do not depend on the order in which substreams are consumed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                           std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ull);
    for (std::uint64_t v : path)
        s = mix64(s ^ (v + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2)));
    return s;
}

// xoshiro256++ — small, fast engine; state seeded via splitmix64 as recommended.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256pp(std::uint64_t seed = 0) : s_{} {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> s_;
};

using Rng = Xoshiro256pp;

// Uniform double in [0, 1): 53 random mantissa bits.
template <class Gen>
inline double uniform01(Gen& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe to feed into log().
template <class Gen>
inline double uniform01_pos(Gen& g) {
    return static_cast<double>((g() >> 11) + 1) * 0x1.0p-53;
}

// Uniform integer in [0, bound) via rejection-free scaling (bias < 2^-64·bound,
// irrelevant at the bounds used here).
template <class Gen>
inline std::uint64_t uniform_below(Gen& g, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(g()) * bound) >> 64);
}

// Fixed tags for the toolkit's substreams.
namespace stream {
inline constexpr std::uint64_t positions = 1;
inline constexpr std::uint64_t weights = 2;
inline constexpr std::uint64_t edges = 3;
inline constexpr std::uint64_t radii = 4;
inline constexpr std::uint64_t angles = 5;
inline constexpr std::uint64_t retry = 6;
inline constexpr std::uint64_t stats = 7;
} // namespace stream

} // namespace girg
