#pragma once

#include "forge/rational.hpp"

#include <cstdint>

namespace forge {

/// splitmix64 — pinned so that seeded runs reproduce bit-for-bit on every
/// platform. Standard library distributions are deliberately not used.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). Modulo bias is irrelevant at harness scales and
    /// keeps the sequence trivially reproducible.
    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next() % n); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    bool coin() { return (next() & 1ull) != 0; }

    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

    /// Uniform rational with denominator in [1, max_den] and value in [lo, hi].
    Rat rat_in(const Rat& lo, const Rat& hi, std::uint32_t max_den = 8) {
        const std::uint32_t d = 1 + below(max_den);
        const Rat width = hi - lo;
        const Int lo_n = rat_floor(lo * d);
        const Int hi_n = rat_floor(hi * d);
        const Int span = hi_n - lo_n + 1;
        const std::uint64_t s = span.convert_to<std::uint64_t>();
        Rat v(lo_n + Int(next() % s), Int(d));
        if (v < lo) v = lo;
        if (v > hi) v = hi;
        (void)width;
        return v;
    }
};

/// Stream for instance `index` of a suite seeded with `seed`.
[[nodiscard]] inline Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng{mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ull))};
}

}  // namespace forge
