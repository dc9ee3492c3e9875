#include "qfrob/prp.hpp"

#include <stdexcept>
#include <vector>

namespace qfrob {

const char* to_string(Reason r) {
    switch (r) {
        case Reason::trial_division: return "trial_division";
        case Reason::perfect_square: return "perfect_square";
        case Reason::gcd_witness: return "gcd_witness";
        case Reason::step3_nonscalar: return "step3_nonscalar";
        case Reason::step4_failed: return "step4_failed";
        case Reason::step5_failed: return "step5_failed";
        case Reason::sprp_failed: return "sprp_failed";
        case Reason::passed_all_steps: return "passed_all_steps";
        case Reason::param_search_exhausted: return "param_search_exhausted";
        case Reason::proven_prime_by_trial_division: return "proven_prime_by_trial_division";
    }
    return "?";
}

namespace {

Verdict composite(Reason reason, Int witness) {
    return {Outcome::composite, reason, std::move(witness), std::nullopt, std::nullopt};
}

Verdict composite_ring(Reason reason, const RingElement& value) {
    return {Outcome::composite, reason, std::nullopt, std::make_pair(value.d, value.e),
            std::nullopt};
}

Verdict probable_prime(Reason reason, std::optional<unsigned long> step5_j = std::nullopt) {
    return {Outcome::probable_prime, reason, std::nullopt, std::nullopt, step5_j};
}

Int mulmod(const Int& x, const Int& y, const Int& n, Meter* meter) {
    count_mult(meter);
    Int r = x * y;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Left-to-right square-and-multiply.  A multiply step by base 2 is a
// modular doubling (addition), so only the squarings are metered then.
Int powmod_metered(const Int& base, const Int& exponent, const Int& n, Meter* meter) {
    if (exponent == 0) return Int(1) % n;
    Int result = base % n;
    for (std::size_t i = bit_length(exponent) - 1; i-- > 0;) {
        result = mulmod(result, result, n, meter);
        if (test_bit(exponent, i)) {
            if (base == 2) {
                result += result;
                if (result >= n) result -= n;
            } else {
                result = mulmod(result, base, n, meter);
            }
        }
    }
    return result;
}

}  // namespace

Verdict sprp(const Int& n, const Int& a, Meter* meter) {
    if (n <= 2 || is_even(n)) throw std::invalid_argument("sprp: n must be odd and > 2");
    if (a < 1 || a > n - 1) throw std::invalid_argument("sprp: base outside [1, n-1]");
    Int m = n - 1;
    unsigned long r = mpz_scan1(m.get_mpz_t(), 0);
    Int s = m >> r;

    Int x = powmod_metered(a, s, n, meter);
    if (x == 1) return probable_prime(Reason::passed_all_steps);
    for (unsigned long j = 0; j < r; ++j) {
        if (x == m) return probable_prime(Reason::passed_all_steps, j);
        if (j + 1 < r) x = mulmod(x, x, n, meter);
    }
    return composite(Reason::sprp_failed, x);
}

Verdict qft_core_naive(const TestSubject& subject, const QftParams& params, Meter* meter) {
    const Int& n = subject.n;
    RingContext ctx(n, params, meter);
    RingElement x = ring_x(ctx);

    RingElement v3 = ring_pow_naive(x, (n + 1) >> 1);
    if (!v3.is_scalar()) return composite_ring(Reason::step3_nonscalar, v3);

    RingElement v4 = ring_mul(v3, v3);
    if (!(v4.d == 0 && v4.e == ctx.neg(ctx.c()))) {
        return composite_ring(Reason::step4_failed, v4);
    }

    RingElement xs = ring_pow_naive(x, subject.s);
    if (is_one(xs)) return probable_prime(Reason::passed_all_steps);
    RingElement v = xs;
    for (unsigned long j = 0; j + 1 < subject.r; ++j) {  // j = 0 .. r-2
        if (is_minus_one(v)) return probable_prime(Reason::passed_all_steps, j);
        if (j + 2 < subject.r) v = ring_mul(v, v);
    }
    return composite_ring(Reason::step5_failed, xs);
}

namespace {

// Value class of a Step 5 probe.
enum class ProbeClass { one, minus_one, other };

ProbeClass classify(const RingElement& v) {
    if (is_one(v)) return ProbeClass::one;
    if (is_minus_one(v)) return ProbeClass::minus_one;
    return ProbeClass::other;
}

}  // namespace

Verdict qft_core_fast(const TestSubject& subject, const QftParams& params, Meter* meter) {
    const Int& n = subject.n;
    const bool one_mod_four = subject.parity_class == 1;
    RingContext ctx(n, params, meter);

    // Ladder to T_t, then T_{s'} = add(double(T_t), T_1): 11 multiplications.
    AbcTriple t_t = triple_power(ctx, subject.t);
    AbcTriple t_sp = triple_add(triple_double(t_t), triple_base(ctx));

    // rungs[e] = triple at 2^e s'; the top rung sits at (n -+ 1)/2.
    std::vector<AbcTriple> rungs;
    rungs.reserve(subject.rprime);
    rungs.push_back(t_sp);
    for (unsigned long e = 1; e < subject.rprime; ++e) {
        rungs.push_back(triple_double(rungs.back()));
    }

    RingElement x = ring_x(ctx);
    RingElement x3{&ctx, 0, 0};
    RingElement x_nm1_half{&ctx, 0, 0};
    if (one_mod_four) {
        x_nm1_half = x_power_from_triple(rungs.back());  // x^{(n-1)/2}
        x3 = ring_mul(x_nm1_half, x);                    // x^{(n+1)/2}
    } else {
        x3 = x_power_from_triple(rungs.back());          // x^{(n+1)/2}
    }
    if (!x3.is_scalar()) return composite_ring(Reason::step3_nonscalar, x3);

    RingElement x4 = ring_mul(x3, x3);
    if (!(x4.d == 0 && x4.e == ctx.neg(ctx.c()))) {
        return composite_ring(Reason::step4_failed, x4);
    }

    // Step 4 passing gives x^n = b - x, so x^{nj} = sigma(x^j) below.
    RingElement xt = x_power_from_triple(t_t);
    RingElement sxt = frobenius(xt);
    RingElement xs{&ctx, 0, 0};
    if (one_mod_four) {
        // s = nt + t + (n-1)/2 + 1
        xs = ring_mul(ring_mul(ring_mul(sxt, xt), x_nm1_half), x);
    } else {
        // s = nt - t + (n+1)/2 - 1:
        // x^s = sigma(x^t)^2 (x^{(n+1)/2}) (x - b) ((-c)^t c)^{-1}
        RingElement w = ring_mul(sxt, sxt);
        w = ring_mul(w, x3);
        RingElement x_minus_b{&ctx, 1, ctx.neg(ctx.b())};
        w = ring_mul(w, x_minus_b);
        Int nu = t_t.parity_odd() ? ctx.neg(t_t.C) : t_t.C;  // (-c)^t
        Int denom = ctx.mul(nu, ctx.c());
        auto inv = modinv(denom, n, meter);
        if (!inv) throw std::logic_error("qft_core_fast: c not invertible despite side conditions");
        xs = ring_scale(w, *inv);
    }

    if (is_one(xs)) return probable_prime(Reason::passed_all_steps);
    if (is_minus_one(xs)) return probable_prime(Reason::passed_all_steps, 0);

    // Probe x^{2^j s} from the cached rung at 2^{j-1} s':
    //   n = 1 mod 4:  x^{2^j s} = sigma(u) u        (u = x^{2^{j-1} s'})
    //   n = 3 mod 4:  x^{2^j s} = sigma(u) u^{-1} = sigma(u)^2 N(u)^{-1},
    // with N(u) = (-c)^{2^{j-1} s'} read off the rung's C coordinate.
    auto probe = [&](unsigned long j) -> ProbeClass {
        const AbcTriple& rung = rungs[j - 1];
        RingElement u = x_power_from_triple(rung);
        RingElement su = frobenius(u);
        RingElement v{&ctx, 0, 0};
        if (one_mod_four) {
            v = ring_mul(su, u);
        } else {
            v = ring_mul(su, su);
            Int nrm = (j == 1) ? ctx.neg(rung.C) : rung.C;
            auto inv = modinv(nrm, n, meter);
            if (!inv) throw std::logic_error("qft_core_fast: norm not invertible");
            v = ring_scale(v, *inv);
        }
        return classify(v);
    };

    // Once the squaring orbit reaches +-1 it stays at 1, so the classes over
    // j are (other)^a then optionally -1 then 1s; binary search finds the -1
    // iff one exists, matching the linear scan's decision.
    unsigned long lo = 1, hi = subject.r - 2;
    while (lo <= hi) {
        unsigned long mid = lo + (hi - lo) / 2;
        switch (probe(mid)) {
            case ProbeClass::minus_one:
                return probable_prime(Reason::passed_all_steps, mid);
            case ProbeClass::one:
                if (mid == 1) return composite_ring(Reason::step5_failed, xs);
                hi = mid - 1;
                break;
            case ProbeClass::other:
                lo = mid + 1;
                break;
        }
    }
    return composite_ring(Reason::step5_failed, xs);
}

Verdict qft(const Int& n, const Int& b, const Int& c, std::uint32_t B, Meter* meter) {
    if (n <= 1 || is_even(n)) throw std::invalid_argument("qft: n must be odd and > 1");

    TrialDivision td = trial_divide(n, B);
    if (td.kind == TrialDivision::Kind::divisor_found) {
        return composite(Reason::trial_division, Int(td.divisor));
    }
    if (td.kind == TrialDivision::Kind::proven_prime) {
        return probable_prime(Reason::proven_prime_by_trial_division);
    }

    Int root = isqrt(n);
    if (root * root == n) return composite(Reason::perfect_square, root);

    auto params = make_params(n, b, c, meter);
    if (!params) {
        throw std::invalid_argument("qft: parameters fail the Jacobi side conditions");
    }
    return qft_core_fast(decompose(n), *params, meter);
}

ParamSearch select_params(const Int& n, std::uint32_t B, SplitMix64& rng, Meter* meter) {
    for (std::uint32_t attempt = 1; attempt <= B; ++attempt) {
        Int b = uniform_residue(rng, n);
        Int c = uniform_residue(rng, n);
        // gcd checks strictly before the Jacobi checks; a witness on the same
        // draw takes precedence.
        Int g1 = gcd(b * b + 4 * c, n, meter);
        if (g1 > 1 && g1 < n) return {ParamSearch::Kind::composite_by_gcd, std::nullopt, g1, attempt};
        Int g2 = gcd(b, n, meter);
        if (g2 > 1 && g2 < n) return {ParamSearch::Kind::composite_by_gcd, std::nullopt, g2, attempt};
        Int g3 = gcd(c, n, meter);
        if (g3 > 1 && g3 < n) return {ParamSearch::Kind::composite_by_gcd, std::nullopt, g3, attempt};
        if (auto params = make_params(n, b, c, meter)) {
            return {ParamSearch::Kind::found, std::move(params), std::nullopt, attempt};
        }
    }
    return {ParamSearch::Kind::exhausted, std::nullopt, std::nullopt, B};
}

Verdict rqft(const Int& n, std::uint32_t B, SplitMix64& rng, unsigned k, Meter* meter) {
    if (n <= 1 || is_even(n)) throw std::invalid_argument("rqft: n must be odd and > 1");
    if (k < 1) throw std::invalid_argument("rqft: need at least one iteration");

    TrialDivision td = trial_divide(n, B);
    if (td.kind == TrialDivision::Kind::divisor_found) {
        return composite(Reason::trial_division, Int(td.divisor));
    }
    if (td.kind == TrialDivision::Kind::proven_prime) {
        return probable_prime(Reason::proven_prime_by_trial_division);
    }

    Int root = isqrt(n);
    if (root * root == n) return composite(Reason::perfect_square, root);

    TestSubject subject = decompose(n);
    Verdict last = probable_prime(Reason::passed_all_steps);
    for (unsigned round = 0; round < k; ++round) {
        ParamSearch search = select_params(n, B, rng, meter);
        if (search.kind == ParamSearch::Kind::composite_by_gcd) {
            return composite(Reason::gcd_witness, *search.gcd_witness);
        }
        if (search.kind == ParamSearch::Kind::exhausted) {
            return probable_prime(Reason::param_search_exhausted);
        }
        last = qft_core_fast(subject, *search.params, meter);
        if (last.outcome == Outcome::composite) return last;
    }
    return last;
}

}  // namespace qfrob
