#include "qfrob/quad_ring.hpp"

#include <stdexcept>

namespace qfrob {

namespace {

void require_same_context(const RingElement& u, const RingElement& v) {
    if (u.ctx != v.ctx) throw std::logic_error("ring elements from different contexts");
}

void require_same_context(const AbcTriple& u, const AbcTriple& v) {
    if (u.ctx != v.ctx) throw std::logic_error("triples from different contexts");
}

}  // namespace

std::optional<QftParams> make_params(const Int& n, const Int& b, const Int& c, Meter* meter) {
    Int bm = b % n;
    if (bm < 0) bm += n;
    Int cm = c % n;
    if (cm < 0) cm += n;
    Int delta = (bm * bm + 4 * cm) % n;
    if (jacobi(delta, n, meter) != -1) return std::nullopt;
    if (jacobi(n - cm, n, meter) != 1) return std::nullopt;
    return QftParams{bm, cm, delta};
}

RingContext::RingContext(Int n, QftParams params, Meter* meter)
    : n_(std::move(n)),
      b_(std::move(params.b)),
      c_(std::move(params.c)),
      delta_(std::move(params.delta)),
      half_((n_ + 1) >> 1),
      meter_(meter) {}

Int RingContext::mul(const Int& x, const Int& y) const {
    count_mult(meter_);
    Int r = x * y;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
    return r;
}

Int RingContext::add(const Int& x, const Int& y) const {
    Int r = x + y;
    if (r >= n_) r -= n_;
    return r;
}

Int RingContext::sub(const Int& x, const Int& y) const {
    Int r = x - y;
    if (r < 0) r += n_;
    return r;
}

Int RingContext::neg(const Int& x) const {
    return x == 0 ? Int(0) : Int(n_ - x);
}

RingElement ring_one(const RingContext& ctx) { return {&ctx, 0, 1}; }

RingElement ring_x(const RingContext& ctx) { return {&ctx, 1, 0}; }

RingElement ring_scalar(const RingContext& ctx, Int value) {
    value %= ctx.n();
    if (value < 0) value += ctx.n();
    return {&ctx, 0, std::move(value)};
}

bool is_one(const RingElement& u) { return u.d == 0 && u.e == 1; }

bool is_minus_one(const RingElement& u) {
    return u.d == 0 && u.e == u.ctx->n() - 1;
}

RingElement ring_mul(const RingElement& u, const RingElement& v) {
    require_same_context(u, v);
    const RingContext& ctx = *u.ctx;
    // (d x + e)(f x + g) = (dg + ef + b df) x + (eg + c df)
    Int df = ctx.mul(u.d, v.d);
    Int eg = ctx.mul(u.e, v.e);
    Int bdf = ctx.mul(ctx.b(), df);
    Int cdf = ctx.mul(ctx.c(), df);
    Int cross = ctx.mul(ctx.add(u.d, u.e), ctx.add(v.d, v.e));
    Int xcoef = ctx.add(ctx.sub(ctx.sub(cross, df), eg), bdf);
    Int scal = ctx.add(eg, cdf);
    return {&ctx, std::move(xcoef), std::move(scal)};
}

RingElement frobenius(const RingElement& u) {
    const RingContext& ctx = *u.ctx;
    Int bd = ctx.mul(ctx.b(), u.d);
    return {&ctx, ctx.neg(u.d), ctx.add(u.e, bd)};
}

RingElement ring_scale(const RingElement& u, const Int& k) {
    const RingContext& ctx = *u.ctx;
    return {&ctx, ctx.mul(u.d, k), ctx.mul(u.e, k)};
}

RingElement ring_pow_naive(const RingElement& u, const Int& exponent) {
    if (exponent < 0) throw std::invalid_argument("ring_pow_naive: negative exponent");
    const RingContext& ctx = *u.ctx;
    if (exponent == 0) return ring_one(ctx);
    RingElement result = u;
    for (std::size_t i = bit_length(exponent) - 1; i-- > 0;) {
        result = ring_mul(result, result);
        if (test_bit(exponent, i)) result = ring_mul(result, u);
    }
    return result;
}

AbcTriple triple_identity(const RingContext& ctx) { return {&ctx, 0, 2 % ctx.n(), 0, 1 % ctx.n()}; }

AbcTriple triple_base(const RingContext& ctx) { return {&ctx, 1, ctx.b(), 1 % ctx.n(), ctx.c()}; }

AbcTriple triple_double(const AbcTriple& t) {
    const RingContext& ctx = *t.ctx;
    Int aa = ctx.mul(t.A, t.A);
    Int ab = ctx.mul(t.A, t.B);
    Int cc = ctx.mul(t.C, t.C);
    Int twoC = ctx.add(t.C, t.C);
    Int A2 = t.parity_odd() ? ctx.add(aa, twoC) : ctx.sub(aa, twoC);
    return {&ctx, 2 * t.j, std::move(A2), std::move(ab), std::move(cc)};
}

AbcTriple triple_add(const AbcTriple& t1, const AbcTriple& t2) {
    require_same_context(t1, t2);
    const RingContext& ctx = *t1.ctx;
    Int aa = ctx.mul(t1.A, t2.A);
    Int bb = ctx.mul(t1.B, t2.B);
    Int dbb = ctx.mul(ctx.delta(), bb);
    Int A = ctx.mul(ctx.half(), ctx.add(aa, dbb));
    Int ab = ctx.mul(t1.A, t2.B);
    Int ba = ctx.mul(t2.A, t1.B);
    Int B = ctx.mul(ctx.half(), ctx.add(ab, ba));
    Int C = ctx.mul(t1.C, t2.C);
    return {&ctx, t1.j + t2.j, std::move(A), std::move(B), std::move(C)};
}

RingElement x_power_from_triple(const AbcTriple& t) {
    const RingContext& ctx = *t.ctx;
    Int bB = ctx.mul(ctx.b(), t.B);
    Int e = ctx.mul(ctx.half(), ctx.sub(t.A, bB));
    return {&ctx, t.B, std::move(e)};
}

namespace {

// Window width for a sliding-window chain over an exponent of `bits` bits.
unsigned window_width(std::size_t bits) {
    if (bits <= 8) return 1;
    if (bits <= 24) return 2;
    if (bits <= 70) return 3;
    if (bits <= 197) return 4;
    if (bits <= 539) return 5;
    if (bits <= 1434) return 6;
    return 7;
}

AbcTriple double_step(const AbcTriple& t, std::vector<AbcTriple>* cache) {
    AbcTriple r = triple_double(t);
    if (cache) cache->push_back(r);
    return r;
}

}  // namespace

AbcTriple triple_power(const RingContext& ctx, const Int& j,
                       std::vector<AbcTriple>* doubling_cache) {
    if (j < 0) throw std::invalid_argument("triple_power: negative index");
    if (j == 0) return triple_identity(ctx);
    if (j == 1) return triple_base(ctx);

    const std::size_t bits = bit_length(j);
    const unsigned w = window_width(bits);

    // Precompute T_1, T_3, ..., T_{2^w - 1}.
    std::vector<AbcTriple> odd_triples;
    odd_triples.reserve(std::size_t{1} << (w - 1));
    odd_triples.push_back(triple_base(ctx));
    if (w > 1) {
        AbcTriple two = triple_double(odd_triples[0]);
        for (std::size_t i = 1; i < (std::size_t{1} << (w - 1)); ++i) {
            odd_triples.push_back(triple_add(odd_triples[i - 1], two));
        }
    }

    std::optional<AbcTriple> acc;
    std::size_t i = bits;
    while (i-- > 0) {
        if (!test_bit(j, i)) {
            acc = double_step(*acc, doubling_cache);
            continue;
        }
        // Greedy window [lo, i] ending on a set bit.
        std::size_t lo = i >= w - 1 ? i - (w - 1) : 0;
        while (!test_bit(j, lo)) ++lo;
        unsigned long val = 0;
        for (std::size_t k = i + 1; k-- > lo;) val = (val << 1) | (test_bit(j, k) ? 1u : 0u);
        if (!acc) {
            acc = odd_triples[val >> 1];
        } else {
            for (std::size_t k = 0; k < i - lo + 1; ++k) acc = double_step(*acc, doubling_cache);
            acc = triple_add(*acc, odd_triples[val >> 1]);
        }
        i = lo;  // loop decrement moves past the window
    }
    return *acc;
}

}  // namespace qfrob
