#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qfrob/audit.hpp"
#include "qfrob/bigint.hpp"
#include "qfrob/meter.hpp"
#include "qfrob/prp.hpp"

namespace qfrob {

using Json = nlohmann::ordered_json;

/// Selfridge counts are rounded to six decimals before serialization so the
/// emitted bytes are reproducible.
double round6(double x);

std::string witness_string(const Verdict& v);

/// One line of the `test` command's output:
/// {command, n, verdict, reason, witness, mults, aux_ops, selfridges, seed, B, k}.
Json verdict_record(const std::string& command, const Int& n, const Verdict& v,
                    const MeterReport& m, std::uint64_t seed, std::uint32_t B, unsigned k);

Json pair_census_record(const audit::PairCensus& census, const audit::PairExpectation& expect);
Json composite_pair_census_record(const audit::PairCensus& census, std::uint64_t bound);
Json m_census_record(std::uint32_t n, std::uint64_t m_n);
Json pass_census_record(const audit::PassCensus& census);
Json root_swap_record(const Int& n, std::uint32_t p, std::uint64_t count);
Json diagnostic_record(const audit::FactoredDiagnostic& diag, std::uint32_t B);

}  // namespace qfrob
