// Compares the OpenMP census kernels against the serial mpz reference:
// same counts required, wall time reported for both.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "qfrob/audit.hpp"

using namespace qfrob;

namespace {

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint32_t n = argc > 1 ? static_cast<std::uint32_t>(std::strtoul(argv[1], nullptr, 10)) : 703;
    std::uint32_t b_eff = argc > 2 ? static_cast<std::uint32_t>(std::strtoul(argv[2], nullptr, 10)) : 2;

    std::printf("census kernels on n=%u (threads=%d)\n", n, omp_get_max_threads());

    std::uint64_t m_par = 0, m_ref = 0;
    double t_par = timed([&] { m_par = audit::census_m(n); });
    double t_ref = timed([&] { m_ref = audit::ref::census_m(n); });
    std::printf("m_census      parallel %8.3fs  serial-ref %8.3fs  count %llu/%llu  %s\n", t_par,
                t_ref, static_cast<unsigned long long>(m_par),
                static_cast<unsigned long long>(m_ref), m_par == m_ref ? "match" : "MISMATCH");
    bool ok = m_par == m_ref;

    audit::PassCensus p_par{}, p_ref{};
    t_par = timed([&] { p_par = audit::census_pass(n, b_eff, true); });
    t_ref = timed([&] { p_ref = audit::ref::census_pass(n, b_eff, true); });
    bool pass_match = p_par.m_n == p_ref.m_n && p_par.eligible == p_ref.eligible &&
                      p_par.gcd_recorded == p_ref.gcd_recorded && p_par.passes == p_ref.passes &&
                      p_par.core_mismatches == 0 && p_ref.core_mismatches == 0;
    std::printf("pass_census   parallel %8.3fs  serial-ref %8.3fs  passes %llu/%llu  %s\n", t_par,
                t_ref, static_cast<unsigned long long>(p_par.passes),
                static_cast<unsigned long long>(p_ref.passes), pass_match ? "match" : "MISMATCH");
    ok = ok && pass_match;

    return ok ? 0 : 1;
}
