#include "qfrob/core_arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace qfrob {

int jacobi(const Int& a, const Int& n, Meter* meter) {
    if (n <= 0 || is_even(n)) {
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    }
    if (meter) meter->on_jacobi();
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    if (n < 2) return n;
    // Newton iteration on integers: x <- (x + n/x) / 2, seeded above the root.
    Int x = Int(1) << ((bit_length(n) + 1) / 2);
    while (true) {
        Int y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    // Downward correction keeps the result exact for all sizes.
    while (x * x > n) --x;
    return x;
}

namespace {

std::mutex sieve_mutex;
std::vector<std::uint32_t> sieve_cache;       // primes, ascending
std::uint32_t sieve_cache_bound = 0;

void extend_sieve(std::uint32_t bound) {
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= bound; q += p) {
            composite[static_cast<std::size_t>(q)] = true;
        }
    }
    sieve_cache = std::move(primes);
    sieve_cache_bound = bound;
}

}  // namespace

std::vector<std::uint32_t> sieve_primes(std::uint32_t bound) {
    if (bound < 2) throw std::invalid_argument("sieve_primes: bound must be >= 2");
    std::lock_guard<std::mutex> lock(sieve_mutex);
    if (bound > sieve_cache_bound) {
        extend_sieve(std::max(bound, std::uint32_t{50000}));
    }
    auto end = std::upper_bound(sieve_cache.begin(), sieve_cache.end(), bound);
    return {sieve_cache.begin(), end};
}

TrialDivision trial_divide(const Int& n, std::uint32_t bound) {
    if (n <= 1 || is_even(n)) {
        throw std::invalid_argument("trial_divide: n must be odd and > 1");
    }
    Int root = isqrt(n);
    std::uint32_t limit = bound;
    bool exhaustive = false;
    if (root <= bound) {
        limit = static_cast<std::uint32_t>(root.get_ui());
        exhaustive = true;
    }
    if (limit >= 2) {
        for (std::uint32_t p : sieve_primes(limit)) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                return {TrialDivision::Kind::divisor_found, p};
            }
        }
    }
    return {exhaustive ? TrialDivision::Kind::proven_prime : TrialDivision::Kind::no_divisor, 0};
}

TestSubject decompose(const Int& n) {
    if (n <= 1 || is_even(n)) {
        throw std::invalid_argument("decompose: n must be odd and > 1");
    }
    TestSubject ts;
    ts.n = n;
    ts.parity_class = static_cast<int>(mpz_fdiv_ui(n.get_mpz_t(), 4));
    int eps = ts.parity_class == 1 ? 1 : -1;

    Int m = n - eps;
    ts.rprime = mpz_scan1(m.get_mpz_t(), 0);
    ts.sprime = m >> ts.rprime;

    Int m2 = n * n - 1;
    ts.r = mpz_scan1(m2.get_mpz_t(), 0);
    ts.s = m2 >> ts.r;

    ts.t = (ts.sprime - 1) >> 1;
    ts.half = (n + 1) >> 1;
    return ts;
}

Int gcd(const Int& a, const Int& b, Meter* meter) {
    if (meter) meter->on_gcd();
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::optional<Int> modinv(const Int& a, const Int& n, Meter* meter) {
    if (meter) meter->on_inversion();
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    return r;
}

}  // namespace qfrob
