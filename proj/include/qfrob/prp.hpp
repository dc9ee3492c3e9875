#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qfrob/bigint.hpp"
#include "qfrob/core_arith.hpp"
#include "qfrob/meter.hpp"
#include "qfrob/quad_ring.hpp"
#include "qfrob/rng.hpp"

namespace qfrob {

enum class Outcome { composite, probable_prime };

enum class Reason {
    trial_division,
    perfect_square,
    gcd_witness,
    step3_nonscalar,
    step4_failed,
    step5_failed,
    sprp_failed,
    passed_all_steps,
    param_search_exhausted,
    proven_prime_by_trial_division,
};

const char* to_string(Reason r);

/// Result of one probable-prime test.  Composite verdicts carry a
/// re-checkable witness: a divisor or gcd in `witness`, the integer square
/// root for perfect squares, or the offending ring value (d, e) for the
/// core steps.  step5_j records which index satisfied Step 5 on a pass.
struct Verdict {
    Outcome outcome;
    Reason reason;
    std::optional<Int> witness;
    std::optional<std::pair<Int, Int>> ring_value;
    std::optional<unsigned long> step5_j;

    bool is_probable_prime() const { return outcome == Outcome::probable_prime; }
};

/// Strong probable prime test to base a (1 <= a <= n-1), n odd > 2.
/// Multiplications by the base are performed as modular doublings when
/// a == 2, so they cost no metered multiplication.
Verdict sprp(const Int& n, const Int& a, Meter* meter = nullptr);

/// The five-step test with parameters (b, c) and trial-division bound B.
/// Steps 1 and 2 need no parameters and run first; the Jacobi side
/// conditions are then re-validated (throws std::invalid_argument on
/// violation) before the core steps.
Verdict qft(const Int& n, const Int& b, const Int& c, std::uint32_t B,
            Meter* meter = nullptr);

/// Steps 3-5 by direct square-and-multiply powering and a linear scan over
/// the Step 5 indices.  Reference semantics for the fast schedule.
Verdict qft_core_naive(const TestSubject& subject, const QftParams& params,
                       Meter* meter = nullptr);

/// Steps 3-5 on the chain-triple schedule: ladder to index t, one doubling
/// plus one chain addition to s', doublings to (n -+ 1)/2 caching every rung,
/// Frobenius shortcut for x^s, and a binary search over the Step 5 indices.
/// Verdict-identical to the naive route.
Verdict qft_core_fast(const TestSubject& subject, const QftParams& params,
                      Meter* meter = nullptr);

struct ParamSearch {
    enum class Kind { found, composite_by_gcd, exhausted };
    Kind kind;
    std::optional<QftParams> params;
    std::optional<Int> gcd_witness;
    std::uint32_t draws = 0;  // pairs consumed
};

/// Draws (b, c) uniformly from [1, n-1]^2 up to B times.  Per draw the gcd
/// checks run strictly before the Jacobi checks; a gcd equal to n rejects
/// the draw without a verdict.
ParamSearch select_params(const Int& n, std::uint32_t B, SplitMix64& rng,
                          Meter* meter = nullptr);

/// The randomized test: Steps 1-2 once, then k rounds of parameter search
/// plus Steps 3-5.  Exhausting the B-draw budget declares a probable prime.
Verdict rqft(const Int& n, std::uint32_t B, SplitMix64& rng, unsigned k = 1,
             Meter* meter = nullptr);

}  // namespace qfrob
