#pragma once

#include <optional>
#include <vector>

#include "qfrob/bigint.hpp"
#include "qfrob/core_arith.hpp"
#include "qfrob/meter.hpp"

namespace qfrob {

/// Parameters (b, c) of the quotient ring Z[x]/(n, x^2 - b x - c), plus the
/// discriminant delta = b^2 + 4c mod n.  A well-formed test run requires
/// jacobi(delta, n) = -1 and jacobi(-c, n) = 1.
struct QftParams {
    Int b;
    Int c;
    Int delta;
};

/// Normalizes (b, c) mod n and validates the two Jacobi side conditions.
/// Returns nullopt when the conditions fail.
std::optional<QftParams> make_params(const Int& n, const Int& b, const Int& c,
                                     Meter* meter = nullptr);

/// Shared context of one test run: the modulus, the ring parameters, the
/// precomputed constants the chain arithmetic needs, and the meter hook.
class RingContext {
public:
    RingContext(Int n, QftParams params, Meter* meter = nullptr);

    const Int& n() const { return n_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& delta() const { return delta_; }
    const Int& half() const { return half_; }
    Meter* meter() const { return meter_; }

    /// One full multiplication mod n; bumps the meter.
    Int mul(const Int& x, const Int& y) const;

    // Modular additions; priced at o(1) and not metered.
    Int add(const Int& x, const Int& y) const;
    Int sub(const Int& x, const Int& y) const;
    Int neg(const Int& x) const;

private:
    Int n_;
    Int b_;
    Int c_;
    Int delta_;
    Int half_;
    Meter* meter_;
};

/// Element d*x + e of the quotient ring, coordinates canonical in [0, n).
struct RingElement {
    const RingContext* ctx;
    Int d;
    Int e;

    bool is_scalar() const { return d == 0; }
    bool operator==(const RingElement& o) const { return d == o.d && e == o.e; }
};

RingElement ring_one(const RingContext& ctx);
RingElement ring_x(const RingContext& ctx);
RingElement ring_scalar(const RingContext& ctx, Int value);

bool is_one(const RingElement& u);
bool is_minus_one(const RingElement& u);

/// Product in the quotient ring via the 5-product schedule
/// df, eg, b(df), c(df), (d+e)(f+g); meters exactly 5 multiplications.
RingElement ring_mul(const RingElement& u, const RingElement& v);

/// The map x -> b - x: (d, e) -> (-d, e + b d); meters exactly 1 multiplication.
RingElement frobenius(const RingElement& u);

/// Scales both coordinates by a scalar; meters exactly 2 multiplications.
RingElement ring_scale(const RingElement& u, const Int& k);

/// Square-and-multiply powering using ring_mul only; the reference route for
/// every fast-path check.
RingElement ring_pow_naive(const RingElement& u, const Int& exponent);

/// The chain triple at index j:
///   A_j = x^j + (b-x)^j,  B_j = (x^j - (b-x)^j)/(2x - b),  C_j = c^j,
/// all scalars mod n.  The index is carried so doubling knows the parity of j.
struct AbcTriple {
    const RingContext* ctx;
    Int j;
    Int A;
    Int B;
    Int C;

    bool parity_odd() const { return is_odd(j); }
};

AbcTriple triple_identity(const RingContext& ctx);  // j = 0: (2, 0, 1)
AbcTriple triple_base(const RingContext& ctx);      // j = 1: (b, 1, c)

/// Index 2j from index j; meters exactly 3 multiplications (the
/// 2(-1)^j C_j term is additions only).
AbcTriple triple_double(const AbcTriple& t);

/// Index j+k from indices j and k; meters exactly 8 multiplications.
AbcTriple triple_add(const AbcTriple& t1, const AbcTriple& t2);

/// x^j recovered as B_j x + 2^-1 (A_j - b B_j); meters exactly 2 multiplications.
RingElement x_power_from_triple(const AbcTriple& t);

/// Computes the triple at index j (j >= 0) with a left-to-right sliding-window
/// chain: one doubling per bit plus one chain addition per window.  When
/// `doubling_cache` is given, every doubling result is appended in order.
AbcTriple triple_power(const RingContext& ctx, const Int& j,
                       std::vector<AbcTriple>* doubling_cache = nullptr);

}  // namespace qfrob
