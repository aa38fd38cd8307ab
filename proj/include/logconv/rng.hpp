#pragma once

#include <cstdint>

#include "logconv/rational.hpp"

namespace logconv {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one multiply-xorshift
// chain per draw. Every sampling decision in verification campaigns flows
// through one of these, so a seed fully determines a report.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Rejection-free modulo is fine here: n is tiny
    // compared to 2^64, the bias is far below anything observable and,
    // more to the point, reproducibility only needs determinism.
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Rational in (0,1) with a small power-of-two denominator.
    Rat unit_open(long den = 64) { return Rat(range(1, den - 1), den); }
};

}  // namespace logconv
