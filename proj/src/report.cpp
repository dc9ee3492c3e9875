#include "qfrob/report.hpp"

#include <cmath>

namespace qfrob {

double round6(double x) { return std::round(x * 1e6) / 1e6; }

std::string witness_string(const Verdict& v) {
    if (v.witness) return v.witness->get_str();
    if (v.ring_value) {
        return v.ring_value->first.get_str() + "x+" + v.ring_value->second.get_str();
    }
    return {};
}

Json verdict_record(const std::string& command, const Int& n, const Verdict& v,
                    const MeterReport& m, std::uint64_t seed, std::uint32_t B, unsigned k) {
    Json j;
    j["command"] = command;
    j["n"] = n.get_str();
    j["verdict"] = v.outcome == Outcome::probable_prime ? "probable_prime" : "composite";
    j["reason"] = to_string(v.reason);
    std::string w = witness_string(v);
    if (w.empty()) {
        j["witness"] = nullptr;
    } else {
        j["witness"] = w;
    }
    j["mults"] = m.mults;
    j["aux_ops"] = m.aux_ops();
    j["selfridges"] = round6(m.selfridges);
    j["seed"] = seed;
    j["B"] = B;
    j["k"] = k;
    return j;
}

Json pair_census_record(const audit::PairCensus& census, const audit::PairExpectation& expect) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "pair_census_prime";
    j["n"] = census.n;
    j["eps1"] = census.eps1;
    j["eps2"] = census.eps2;
    j["count"] = census.count;
    j[expect.exact ? "expected" : "bound"] = expect.value;
    j["ok"] = expect.exact ? census.count == expect.value : census.count <= expect.value;
    return j;
}

Json composite_pair_census_record(const audit::PairCensus& census, std::uint64_t bound) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "pair_census_composite";
    j["n"] = census.n;
    j["eps1"] = census.eps1;
    j["eps2"] = census.eps2;
    j["count"] = census.count;
    j["bound"] = bound;
    j["ok"] = census.count <= bound;
    return j;
}

Json m_census_record(std::uint32_t n, std::uint64_t m_n) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "m_census";
    j["n"] = n;
    j["m"] = m_n;
    // M(n) > n^2/4, i.e. 4 M(n) > n^2 in integers.
    j["ok"] = 4 * m_n > static_cast<std::uint64_t>(n) * n;
    return j;
}

Json pass_census_record(const audit::PassCensus& census) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "pass_census";
    j["n"] = census.n;
    j["B"] = census.b_eff;
    j["skip_steps12"] = census.skip_steps12;
    j["m"] = census.m_n;
    j["eligible"] = census.eligible;
    j["gcd_recorded"] = census.gcd_recorded;
    j["passes"] = census.passes;
    j["core_mismatches"] = census.core_mismatches;
    j["alpha"] = round6(census.alpha);
    j["ok"] = census.core_mismatches == 0;
    return j;
}

Json root_swap_record(const Int& n, std::uint32_t p, std::uint64_t count) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "root_swap_census";
    j["n"] = n.get_str();
    j["p"] = p;
    j["count"] = count;
    j["bound"] = (p - 1) / 2;
    j["ok"] = count <= (p - 1) / 2;
    return j;
}

Json diagnostic_record(const audit::FactoredDiagnostic& diag, std::uint32_t B) {
    Json j;
    j["command"] = "audit";
    j["kind"] = "factored_diagnostic";
    j["n"] = diag.n.get_str();
    Json primes = Json::array();
    for (const auto& p : diag.primes) primes.push_back(p.get_str());
    j["primes"] = primes;
    j["k"] = diag.k;
    j["J"] = diag.big_j;
    j["G"] = diag.g.get_str();
    j["ratio"] = round6(diag.ratio);
    j["exceeds_one"] = diag.exceeds_one;
    j["hypothesis_B"] = B;
    j["hypothesis"] = diag.hypothesis(B);
    j["ok"] = diag.exceeds_one;
    return j;
}

}  // namespace qfrob
