#pragma once

#include <cstdint>

#include "qfrob/bigint.hpp"

namespace qfrob {

/// SplitMix64 (Steele, Lea, Flood 2014).  State advances by the 64-bit
/// golden-ratio increment; output is finalized with two xor-shift-multiply
/// rounds.  Pinned here so recorded fixtures stay stable: for a given seed
/// the stream is identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Uniform value in [0, m) by rejection sampling: draw bit_length(m) bits
/// (64-bit words, least significant word first), retry when >= m.
Int uniform_below(SplitMix64& rng, const Int& m);

/// Uniform value in [1, n-1].
inline Int uniform_residue(SplitMix64& rng, const Int& n) {
    return uniform_below(rng, n - 1) + 1;
}

/// Random odd integer of exactly `bits` bits (top and bottom bit forced).
Int random_odd_bits(SplitMix64& rng, unsigned bits);

}  // namespace qfrob
