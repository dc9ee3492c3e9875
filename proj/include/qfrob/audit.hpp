#pragma once

#include <cstdint>
#include <vector>

#include "qfrob/bigint.hpp"
#include "qfrob/prp.hpp"

namespace qfrob::audit {

/// Jacobi symbol on machine words (binary algorithm); the fast path of the
/// enumeration kernels.  n must be odd and positive.
int jacobi_u64(std::uint64_t a, std::uint64_t n);

struct PairCensus {
    std::uint32_t n;
    int eps1;
    int eps2;
    std::uint64_t count;
};

/// Exact count of pairs (b,c) mod p with jacobi(b^2+4c, p) = eps1 and
/// jacobi(-c, p) = eps2, by brute force over all p^2 pairs.  p must be an
/// odd prime <= cap.
PairCensus census_pairs(std::uint32_t p, int eps1, int eps2, std::uint32_t cap = 101);

/// Same count for an odd squarefree composite n <= cap.
PairCensus census_pairs_composite(std::uint32_t n, int eps1, int eps2,
                                  std::uint32_t cap = 1000);

/// M(n): pairs (b,c) mod n whose symbols meet the test's side conditions or
/// whose b^2+4c or c shares a nontrivial factor with n.  n must be an odd
/// non-square composite <= cap.
std::uint64_t census_m(std::uint32_t n, std::uint32_t cap = 1000);

struct PassCensus {
    std::uint32_t n;
    std::uint32_t b_eff;
    bool skip_steps12;
    std::uint64_t m_n;           // M(n), counted in the same sweep
    std::uint64_t eligible;      // symbol-eligible pairs actually run
    std::uint64_t gcd_recorded;  // pairs recorded composite-by-gcd
    std::uint64_t passes;        // pairs the QFT core accepts
    std::uint64_t core_mismatches;  // fast/naive verdict differences (must be 0)
    double alpha;                // passes / m_n
};

/// Runs both QFT cores for every eligible pair (b,c) mod n and diffs them.
/// With skip_steps12 the cores run unconditionally; otherwise trial division
/// up to b_eff and the square test gate the sweep as in the full test.
PassCensus census_pass(std::uint32_t n, std::uint32_t b_eff, bool skip_steps12,
                       std::uint32_t cap = 2100);

/// Count of pairs (b,c) mod p with jacobi(b^2+4c, p) = 1 whose two roots
/// a1, a2 of x^2 - b x - c mod p satisfy a1^n = a2 and a2^n = a1.  p must be
/// a prime divisor of n.
std::uint64_t census_root_swaps(const Int& n, std::uint32_t p, std::uint32_t cap = 1000);

struct FactoredDiagnostic {
    Int n;
    std::vector<Int> primes;  // distinct prime divisors
    unsigned long k = 0;      // number of distinct prime divisors
    unsigned long big_j = 0;  // largest J with 2^{J+1} | p^2-1 for every p | n
    Int g;                    // product over p | n of gcd(p^2-1, s)
    double ratio = 0.0;       // n^2 / (2^{k(J+1)} g)
    bool exceeds_one = false; // exact integer comparison of the same ratio

    /// Exact test of n^2 / (2^{k(J+1)} g) > B / 2^{3k+1}.
    bool hypothesis(std::uint32_t B) const;
};

/// Diagnostic quantities for an n of known factorization.  The supplied
/// distinct primes must multiply (with multiplicity) to exactly n.
FactoredDiagnostic diagnostic(const Int& n, std::vector<Int> prime_factors);

std::uint64_t totient_u32(std::uint32_t n);
int mobius_u32(std::uint32_t n);

struct PairExpectation {
    bool exact;           // exact count vs upper bound
    std::uint64_t value;
};

/// Closed-form expectation for a prime-modulus pair census: (p-1)^2/4 when
/// the signs differ, (p-1)(p-3)/4 for (+1,+1), and the (p^2-1)/4 + (p-1)/2
/// upper bound for (-1,-1).
PairExpectation pair_expectation_prime(std::uint32_t p, int eps1, int eps2);

/// Upper bound for a squarefree-composite pair census:
/// phi(n)^2/4, plus eps1 * mu(n) phi(n)/2 when the signs agree.
std::uint64_t pair_bound_composite(std::uint32_t n, int eps1, int eps2);

/// Serial reference implementations.  They take the mpz arithmetic route
/// throughout (no machine-word fast path, no OpenMP) and exist to cross-check
/// the parallel kernels; the census_bench tool compares the two.
namespace ref {
PairCensus census_pairs(std::uint32_t n, int eps1, int eps2, std::uint32_t cap = 1000);
std::uint64_t census_m(std::uint32_t n, std::uint32_t cap = 1000);
PassCensus census_pass(std::uint32_t n, std::uint32_t b_eff, bool skip_steps12,
                       std::uint32_t cap = 2100);
}  // namespace ref

}  // namespace qfrob::audit
