#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfrob {

using Int = mpz_class;

inline bool is_odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }
inline bool is_even(const Int& n) { return mpz_even_p(n.get_mpz_t()) != 0; }

/// Number of bits in |n|; bit_length(0) == 0.
inline std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool test_bit(const Int& n, std::size_t i) {
    return mpz_tstbit(n.get_mpz_t(), i) != 0;
}

/// log2 of n as a double, exact enough for selfridge reporting.
inline double log2_approx(const Int& n) {
    long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return static_cast<double>(exp) + std::log2(d);
}

/// Parses a decimal or 0x-prefixed hex string of arbitrary length.
inline Int parse_int(std::string_view text) {
    std::string_view body = text;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body.remove_prefix(1);
    }
    int base = 10;
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        base = 16;
        body.remove_prefix(2);
    }
    Int v;
    if (body.empty() || mpz_set_str(v.get_mpz_t(), std::string(body).c_str(), base) != 0) {
        throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    }
    return neg ? Int(-v) : v;
}

}  // namespace qfrob
