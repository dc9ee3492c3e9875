#include "qfrob/rng.hpp"

#include <stdexcept>
#include <vector>

namespace qfrob {

Int uniform_below(SplitMix64& rng, const Int& m) {
    if (m <= 0) throw std::invalid_argument("uniform_below: range must be positive");
    const std::size_t bits = bit_length(m);
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    Int v;
    while (true) {
        for (auto& w : buf) w = rng.next();
        mpz_import(v.get_mpz_t(), words, -1 /*lsw first*/, sizeof(std::uint64_t),
                   0 /*native endian*/, 0, buf.data());
        mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
        if (v < m) return v;
    }
}

Int random_odd_bits(SplitMix64& rng, unsigned bits) {
    if (bits < 2) throw std::invalid_argument("random_odd_bits: need at least 2 bits");
    Int v = uniform_below(rng, Int(1) << bits);
    mpz_setbit(v.get_mpz_t(), bits - 1);
    mpz_setbit(v.get_mpz_t(), 0);
    return v;
}

}  // namespace qfrob
