#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfrob/bigint.hpp"
#include "qfrob/meter.hpp"

namespace qfrob {

/// Jacobi symbol (a/n); n must be odd and positive.  Returns 0 iff gcd(a,n) > 1.
int jacobi(const Int& a, const Int& n, Meter* meter = nullptr);

/// Floor of the square root; exact integer Newton iteration.
Int isqrt(const Int& n);

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

/// Ascending list of all primes <= bound (bound >= 2).  Backed by a sieve
/// that is grown once per process behind a thread-safe guard.
std::vector<std::uint32_t> sieve_primes(std::uint32_t bound);

struct TrialDivision {
    enum class Kind { divisor_found, no_divisor, proven_prime };
    Kind kind;
    std::uint32_t divisor = 0;  // least prime divisor when kind == divisor_found
};

/// Divides n by every prime <= min{bound, isqrt(n)}.  When the sweep was
/// exhaustive (isqrt(n) <= bound) and found nothing, n is proven prime and
/// the later test steps must be skipped.
TrialDivision trial_divide(const Int& n, std::uint32_t bound);

/// An odd integer n > 1 together with the 2-adic decompositions the test
/// schedule consumes:
///   n - eps = 2^rprime * sprime   (eps = +1 for n = 1 mod 4, else -1)
///   n^2 - 1 = 2^r * s             (s odd, r = rprime + 1 >= 3)
///   t = (sprime - 1) / 2,  half = 2^-1 mod n.
struct TestSubject {
    Int n;
    int parity_class;  // n mod 4: 1 or 3
    unsigned long rprime;
    Int sprime;
    unsigned long r;
    Int s;
    Int t;
    Int half;
};

/// Builds a TestSubject; rejects even n and n <= 1.
TestSubject decompose(const Int& n);

Int gcd(const Int& a, const Int& b, Meter* meter = nullptr);

/// Inverse of a mod n, or nullopt when gcd(a, n) > 1.
std::optional<Int> modinv(const Int& a, const Int& n, Meter* meter = nullptr);

}  // namespace qfrob
