#pragma once

#include <cstdint>
#include <utility>

#include "qfrob/bigint.hpp"

namespace qfrob {

/// Passive operation counter for one probable-prime test run.
///
/// Counts full multiplications mod n (products and squarings of residues,
/// multiplications by the ring constants included).  gcd, Jacobi symbol and
/// inversion calls are tallied separately; they are priced at O(1)
/// multiplications and excluded from the selfridge numerator.
/// Pass a null Meter* anywhere to disable accounting.
class Meter {
public:
    void on_mult(std::uint64_t k = 1) { mults_ += k; }
    void on_gcd() { ++gcds_; }
    void on_jacobi() { ++jacobis_; }
    void on_inversion() { ++inversions_; }

    std::uint64_t mults() const { return mults_; }
    std::uint64_t gcd_calls() const { return gcds_; }
    std::uint64_t jacobi_calls() const { return jacobis_; }
    std::uint64_t inversion_calls() const { return inversions_; }
    std::uint64_t aux_ops() const { return gcds_ + jacobis_ + inversions_; }

    void reset() { *this = Meter{}; }

private:
    std::uint64_t mults_ = 0;
    std::uint64_t gcds_ = 0;
    std::uint64_t jacobis_ = 0;
    std::uint64_t inversions_ = 0;
};

inline void count_mult(Meter* m, std::uint64_t k = 1) {
    if (m) m->on_mult(k);
}

struct MeterReport {
    std::uint64_t mults = 0;
    std::uint64_t gcd_calls = 0;
    std::uint64_t jacobi_calls = 0;
    std::uint64_t inversion_calls = 0;
    double log2n = 0.0;
    double selfridges = 0.0;  // mults / log2n

    std::uint64_t aux_ops() const { return gcd_calls + jacobi_calls + inversion_calls; }
};

inline MeterReport make_report(const Meter& m, const Int& n) {
    MeterReport r;
    r.mults = m.mults();
    r.gcd_calls = m.gcd_calls();
    r.jacobi_calls = m.jacobi_calls();
    r.inversion_calls = m.inversion_calls();
    r.log2n = log2_approx(n);
    r.selfridges = r.log2n > 0 ? static_cast<double>(r.mults) / r.log2n : 0.0;
    return r;
}

/// Runs one test closure with a fresh meter; counters start at zero.
template <class F>
auto metered_run(F&& test, const Int& n)
    -> std::pair<decltype(test(std::declval<Meter&>())), MeterReport> {
    Meter meter;
    auto verdict = test(meter);
    return {std::move(verdict), make_report(meter, n)};
}

}  // namespace qfrob
