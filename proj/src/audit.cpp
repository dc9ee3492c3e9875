#include "qfrob/audit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qfrob::audit {

int jacobi_u64(std::uint64_t a, std::uint64_t n) {
    a %= n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::uint64_t r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

namespace {

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, base = a % m;
    while (e) {
        if (e & 1) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

bool is_small_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : sieve_primes(static_cast<std::uint32_t>(isqrt(Int(n)).get_ui()) + 1)) {
        if (p * static_cast<std::uint64_t>(p) > n) break;
        if (n % p == 0) return n == p;
    }
    return true;
}

void factor_u32(std::uint32_t n, std::vector<std::pair<std::uint32_t, unsigned>>& out) {
    out.clear();
    for (std::uint32_t p : sieve_primes(static_cast<std::uint32_t>(isqrt(Int(n)).get_ui()) + 1)) {
        if (n == 1) break;
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
}

// Symbol classification of one pair (b, c) mod n: does it meet the side
// conditions, or does b^2+4c or c expose a nontrivial gcd?
struct PairClass {
    bool symbol = false;
    bool gcd_witness = false;
};

PairClass classify_pair(std::uint64_t b, std::uint64_t c, std::uint64_t n) {
    PairClass pc;
    std::uint64_t d = (b * b + 4 * c) % n;
    std::uint64_t g1 = std::gcd(d, n);
    std::uint64_t g2 = std::gcd(c, n);
    pc.gcd_witness = (g1 > 1 && g1 < n) || (g2 > 1 && g2 < n);
    if (g1 == 1 && g2 == 1) {
        pc.symbol = jacobi_u64(d, n) == -1 && jacobi_u64(n - c, n) == 1;
    }
    return pc;
}

void check_cap(std::uint64_t n, std::uint32_t cap, const char* what) {
    if (n > cap) throw std::invalid_argument(std::string(what) + ": enumeration cap exceeded");
}

}  // namespace

PairCensus census_pairs(std::uint32_t p, int eps1, int eps2, std::uint32_t cap) {
    check_cap(p, cap, "census_pairs");
    if (p < 3 || p % 2 == 0 || !is_small_prime(p)) {
        throw std::invalid_argument("census_pairs: p must be an odd prime");
    }
    const long long np = p;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long b = 0; b < np; ++b) {
        for (long long c = 0; c < np; ++c) {
            std::uint64_t d = (static_cast<std::uint64_t>(b) * b + 4ull * c) % p;
            if (jacobi_u64(d, p) == eps1 && jacobi_u64((p - c) % p, p) == eps2) ++count;
        }
    }
    return {p, eps1, eps2, count};
}

PairCensus census_pairs_composite(std::uint32_t n, int eps1, int eps2, std::uint32_t cap) {
    check_cap(n, cap, "census_pairs_composite");
    if (n % 2 == 0 || n < 9 || is_small_prime(n)) {
        throw std::invalid_argument("census_pairs_composite: n must be an odd composite");
    }
    std::vector<std::pair<std::uint32_t, unsigned>> factors;
    factor_u32(n, factors);
    for (auto& [p, e] : factors) {
        if (e > 1) throw std::invalid_argument("census_pairs_composite: n must be squarefree");
    }
    const long long nn = n;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long b = 0; b < nn; ++b) {
        for (long long c = 0; c < nn; ++c) {
            std::uint64_t d = (static_cast<std::uint64_t>(b) * b + 4ull * c) % n;
            if (jacobi_u64(d, n) == eps1 && jacobi_u64((n - c) % n, n) == eps2) ++count;
        }
    }
    return {n, eps1, eps2, count};
}

std::uint64_t census_m(std::uint32_t n, std::uint32_t cap) {
    check_cap(n, cap, "census_m");
    if (n % 2 == 0 || n < 9 || is_small_prime(n)) {
        throw std::invalid_argument("census_m: n must be an odd composite");
    }
    if (is_perfect_square(Int(n))) {
        throw std::invalid_argument("census_m: perfect squares are excluded");
    }
    const long long nn = n;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long b = 0; b < nn; ++b) {
        for (long long c = 0; c < nn; ++c) {
            PairClass pc = classify_pair(b, c, n);
            if (pc.symbol || pc.gcd_witness) ++count;
        }
    }
    return count;
}

PassCensus census_pass(std::uint32_t n, std::uint32_t b_eff, bool skip_steps12,
                       std::uint32_t cap) {
    check_cap(n, cap, "census_pass");
    if (n % 2 == 0 || n <= 1) throw std::invalid_argument("census_pass: n must be odd and > 1");
    if (is_perfect_square(Int(n))) {
        throw std::invalid_argument("census_pass: perfect squares are excluded");
    }

    const Int big_n(n);
    const TestSubject subject = decompose(big_n);

    // Steps 1 and 2 do not depend on (b, c); when they are enabled and kill
    // n, no pair can pass.
    bool steps12_kill = false;
    if (!skip_steps12) {
        steps12_kill = trial_divide(big_n, b_eff).kind == TrialDivision::Kind::divisor_found;
    }

    const long long nn = n;
    std::uint64_t m_n = 0, eligible = 0, gcd_recorded = 0, passes = 0, mismatches = 0;
#pragma omp parallel for reduction(+ : m_n, eligible, gcd_recorded, passes, mismatches) \
    schedule(static)
    for (long long b = 0; b < nn; ++b) {
        for (long long c = 0; c < nn; ++c) {
            PairClass pc = classify_pair(b, c, n);
            if (pc.symbol || pc.gcd_witness) ++m_n;
            if (pc.symbol) {
                if (std::gcd(static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(n)) != 1) {
                    // In M(n) via the symbols, but a parameter search would
                    // surface gcd(b, n); recorded, never run.
                    ++gcd_recorded;
                    continue;
                }
                ++eligible;
                if (steps12_kill) continue;
                std::uint64_t d = (static_cast<std::uint64_t>(b) * b + 4ull * c) % n;
                QftParams params{Int(b), Int(c), Int(static_cast<unsigned long>(d))};
                Verdict fast = qft_core_fast(subject, params);
                Verdict naive = qft_core_naive(subject, params);
                if (fast.outcome != naive.outcome || fast.reason != naive.reason) ++mismatches;
                if (fast.outcome == Outcome::probable_prime) ++passes;
            } else if (pc.gcd_witness) {
                ++gcd_recorded;
            }
        }
    }

    PassCensus out;
    out.n = n;
    out.b_eff = b_eff;
    out.skip_steps12 = skip_steps12;
    out.m_n = m_n;
    out.eligible = eligible;
    out.gcd_recorded = gcd_recorded;
    out.passes = passes;
    out.core_mismatches = mismatches;
    out.alpha = m_n ? static_cast<double>(passes) / static_cast<double>(m_n) : 0.0;
    return out;
}

std::uint64_t census_root_swaps(const Int& n, std::uint32_t p, std::uint32_t cap) {
    check_cap(p, cap, "census_root_swaps");
    if (!is_small_prime(p) || p % 2 == 0) {
        throw std::invalid_argument("census_root_swaps: p must be an odd prime");
    }
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        throw std::invalid_argument("census_root_swaps: p does not divide n");
    }

    // One square root per residue; the pair's two roots come out of
    // (b +- sqrt(b^2+4c)) / 2.
    std::vector<std::int64_t> sqrt_of(p, -1);
    for (std::uint64_t a = 0; a < p; ++a) {
        std::uint64_t s = a * a % p;
        if (sqrt_of[s] < 0) sqrt_of[s] = static_cast<std::int64_t>(a);
    }
    const std::uint64_t inv2 = (p + 1) / 2;
    const std::uint64_t e = mpz_fdiv_ui(n.get_mpz_t(), p - 1);
    auto pow_n = [&](std::uint64_t a) -> std::uint64_t {
        return a == 0 ? 0 : powmod_u64(a, e, p);
    };

    const long long np = p;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long b = 0; b < np; ++b) {
        for (long long c = 0; c < np; ++c) {
            std::uint64_t d = (static_cast<std::uint64_t>(b) * b + 4ull * c) % p;
            if (jacobi_u64(d, p) != 1) continue;
            std::uint64_t s = static_cast<std::uint64_t>(sqrt_of[d]);
            std::uint64_t a1 = (b + s) % p * inv2 % p;
            std::uint64_t a2 = (b + p - s) % p * inv2 % p;
            if (pow_n(a1) == a2 && pow_n(a2) == a1) ++count;
        }
    }
    return count;
}

std::uint64_t totient_u32(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, unsigned>> factors;
    factor_u32(n, factors);
    std::uint64_t phi = 1;
    for (auto& [p, e] : factors) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

int mobius_u32(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, unsigned>> factors;
    factor_u32(n, factors);
    for (auto& [p, e] : factors) {
        if (e > 1) return 0;
    }
    return factors.size() % 2 == 0 ? 1 : -1;
}

PairExpectation pair_expectation_prime(std::uint32_t p, int eps1, int eps2) {
    std::uint64_t pm1 = p - 1;
    if (eps1 != eps2) return {true, pm1 * pm1 / 4};
    if (eps1 == 1) return {true, pm1 * (p - 3) / 4};
    return {false, (static_cast<std::uint64_t>(p) * p - 1) / 4 + pm1 / 2};
}

std::uint64_t pair_bound_composite(std::uint32_t n, int eps1, int eps2) {
    std::uint64_t phi = totient_u32(n);
    std::uint64_t base = phi * phi / 4;
    if (eps1 != eps2) return base;
    std::int64_t shift = static_cast<std::int64_t>(eps1) * mobius_u32(n) *
                         static_cast<std::int64_t>(phi) / 2;
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(base) + shift);
}

bool FactoredDiagnostic::hypothesis(std::uint32_t B) const {
    // n^2 / (2^{k(J+1)} g) > B / 2^{3k+1}, compared exactly.
    Int lhs = n * n << (3 * k + 1);
    Int rhs = Int(B) * g << (k * (big_j + 1));
    return lhs > rhs;
}

FactoredDiagnostic diagnostic(const Int& n, std::vector<Int> prime_factors) {
    if (n <= 1 || is_even(n)) throw std::invalid_argument("diagnostic: n must be odd and > 1");
    std::sort(prime_factors.begin(), prime_factors.end());
    prime_factors.erase(std::unique(prime_factors.begin(), prime_factors.end()),
                        prime_factors.end());
    if (prime_factors.empty()) throw std::invalid_argument("diagnostic: factorization empty");

    Int rest = n;
    for (const Int& p : prime_factors) {
        if (p <= 1 || !mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            throw std::invalid_argument("diagnostic: factorization inconsistent with n");
        }
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
    }
    if (rest != 1) throw std::invalid_argument("diagnostic: factorization inconsistent with n");
    if (prime_factors.size() == 1 && prime_factors[0] == n) {
        throw std::invalid_argument("diagnostic: n must be composite");
    }

    FactoredDiagnostic out;
    out.n = n;
    out.k = prime_factors.size();

    Int m2 = n * n - 1;
    unsigned long r = mpz_scan1(m2.get_mpz_t(), 0);
    Int s = m2 >> r;

    unsigned long min_v2 = ~0ul;
    out.g = 1;
    for (const Int& p : prime_factors) {
        Int pm = p * p - 1;
        min_v2 = std::min(min_v2, mpz_scan1(pm.get_mpz_t(), 0));
        out.g *= gcd(pm, s);
    }
    out.big_j = min_v2 - 1;
    out.primes = std::move(prime_factors);

    Int denom = out.g << (out.k * (out.big_j + 1));
    out.exceeds_one = n * n > denom;
    mpq_class ratio(n * n, denom);
    ratio.canonicalize();
    out.ratio = ratio.get_d();
    return out;
}

namespace ref {

PairCensus census_pairs(std::uint32_t n, int eps1, int eps2, std::uint32_t cap) {
    check_cap(n, cap, "ref::census_pairs");
    const Int big_n(n);
    std::uint64_t count = 0;
    for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
            Int d = (Int(b) * b + 4 * Int(c)) % big_n;
            if (jacobi(d, big_n) == eps1 && jacobi(Int(n - c), big_n) == eps2) ++count;
        }
    }
    return {n, eps1, eps2, count};
}

std::uint64_t census_m(std::uint32_t n, std::uint32_t cap) {
    check_cap(n, cap, "ref::census_m");
    const Int big_n(n);
    std::uint64_t count = 0;
    for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
            Int d = (Int(b) * b + 4 * Int(c)) % big_n;
            Int g1 = gcd(d, big_n);
            Int g2 = gcd(Int(c), big_n);
            if ((g1 > 1 && g1 < big_n) || (g2 > 1 && g2 < big_n)) {
                ++count;
            } else if (g1 == 1 && g2 == 1 && jacobi(d, big_n) == -1 &&
                       jacobi(Int(n - c), big_n) == 1) {
                ++count;
            }
        }
    }
    return count;
}

PassCensus census_pass(std::uint32_t n, std::uint32_t b_eff, bool skip_steps12,
                       std::uint32_t cap) {
    check_cap(n, cap, "ref::census_pass");
    if (n % 2 == 0 || n <= 1) throw std::invalid_argument("ref::census_pass: n must be odd > 1");
    const Int big_n(n);
    if (is_perfect_square(big_n)) {
        throw std::invalid_argument("ref::census_pass: perfect squares are excluded");
    }
    const TestSubject subject = decompose(big_n);
    bool steps12_kill = false;
    if (!skip_steps12) {
        steps12_kill = trial_divide(big_n, b_eff).kind == TrialDivision::Kind::divisor_found;
    }

    PassCensus out{};
    out.n = n;
    out.b_eff = b_eff;
    out.skip_steps12 = skip_steps12;
    for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
            Int d = (Int(b) * b + 4 * Int(c)) % big_n;
            Int g1 = gcd(d, big_n);
            Int g2 = gcd(Int(c), big_n);
            bool gcd_witness = (g1 > 1 && g1 < big_n) || (g2 > 1 && g2 < big_n);
            bool symbol = g1 == 1 && g2 == 1 && jacobi(d, big_n) == -1 &&
                          jacobi(Int(n - c), big_n) == 1;
            if (symbol || gcd_witness) ++out.m_n;
            if (symbol) {
                if (gcd(Int(b), big_n) != 1) {
                    ++out.gcd_recorded;
                    continue;
                }
                ++out.eligible;
                if (steps12_kill) continue;
                QftParams params{Int(b), Int(c), d};
                Verdict fast = qft_core_fast(subject, params);
                Verdict naive = qft_core_naive(subject, params);
                if (fast.outcome != naive.outcome || fast.reason != naive.reason) {
                    ++out.core_mismatches;
                }
                if (fast.outcome == Outcome::probable_prime) ++out.passes;
            } else if (gcd_witness) {
                ++out.gcd_recorded;
            }
        }
    }
    out.alpha = out.m_n ? static_cast<double>(out.passes) / static_cast<double>(out.m_n) : 0.0;
    return out;
}

}  // namespace ref

}  // namespace qfrob::audit
