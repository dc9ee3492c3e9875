// qfrob: quadratic Frobenius probable-prime testing, auditing and benching.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qfrob/audit.hpp"
#include "qfrob/bigint.hpp"
#include "qfrob/core_arith.hpp"
#include "qfrob/meter.hpp"
#include "qfrob/prp.hpp"
#include "qfrob/report.hpp"
#include "qfrob/rng.hpp"

namespace {

using namespace qfrob;

constexpr std::uint32_t kDefaultB = 50000;

void emit(const Json& j, bool text) {
    if (!text) {
        std::cout << j.dump() << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::cout << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump())
                  << " ";
    }
    std::cout << "\n";
}

int run_test(const std::string& n_text, std::uint32_t B, std::uint64_t seed, unsigned k,
             bool text) {
    Int n;
    try {
        n = parse_int(n_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (n < 2) {
        std::cerr << "error: n must be at least 2\n";
        return 2;
    }

    Verdict v{Outcome::probable_prime, Reason::proven_prime_by_trial_division,
              std::nullopt, std::nullopt, std::nullopt};
    MeterReport report = make_report(Meter{}, n);
    if (n == 2) {
        // trivial: 2 is prime
    } else if (is_even(n)) {
        v = Verdict{Outcome::composite, Reason::trial_division, Int(2), std::nullopt,
                    std::nullopt};
    } else {
        SplitMix64 rng(seed);
        auto [verdict, r] =
            metered_run([&](Meter& meter) { return rqft(n, B, rng, k, &meter); }, n);
        v = verdict;
        report = r;
    }
    emit(verdict_record("test", n, v, report, seed, B, k), text);
    return v.is_probable_prime() ? 0 : 1;
}

// Factor by trial division; good enough for audit-scale n.
std::vector<Int> factor_by_trial_division(const Int& n) {
    std::vector<Int> primes;
    Int rest = n;
    for (std::uint32_t p : sieve_primes(1000000)) {
        if (Int(p) * p > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            primes.emplace_back(p);
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
        }
    }
    if (rest > 1) primes.push_back(rest);
    return primes;
}

struct AuditOptions {
    std::string n_text;
    std::uint32_t B = kDefaultB;
    bool skip_steps12 = false;
    std::uint32_t prop22 = 0;
    bool pairs = false;
    std::uint32_t root_swaps = 0;
    bool diag = false;
    std::string factors;
    std::uint32_t cap = 2100;
    bool text = false;
};

int run_audit(const AuditOptions& opt) {
    bool all_ok = true;
    auto record = [&](const Json& j) {
        all_ok = all_ok && j.value("ok", true);
        emit(j, opt.text);
    };

    try {
        if (opt.prop22 != 0) {
            for (int eps1 : {1, -1}) {
                for (int eps2 : {1, -1}) {
                    auto census = audit::census_pairs(opt.prop22, eps1, eps2,
                                                      std::max(opt.cap, std::uint32_t{101}));
                    record(pair_census_record(
                        census, audit::pair_expectation_prime(opt.prop22, eps1, eps2)));
                }
            }
            return all_ok ? 0 : 1;
        }

        if (opt.n_text.empty()) {
            std::cerr << "error: audit needs a modulus\n";
            return 2;
        }
        Int big_n = parse_int(opt.n_text);
        if (big_n <= 1 || big_n > 0xFFFFFFFFL) {
            std::cerr << "error: audit modulus out of range\n";
            return 2;
        }
        auto n = static_cast<std::uint32_t>(big_n.get_ui());

        if (opt.pairs) {
            for (int eps1 : {1, -1}) {
                for (int eps2 : {1, -1}) {
                    auto census = audit::census_pairs_composite(n, eps1, eps2, opt.cap);
                    record(composite_pair_census_record(
                        census, audit::pair_bound_composite(n, eps1, eps2)));
                }
            }
        } else if (opt.root_swaps != 0) {
            std::uint64_t count = audit::census_root_swaps(big_n, opt.root_swaps, opt.cap);
            record(root_swap_record(big_n, opt.root_swaps, count));
        } else if (opt.diag) {
            std::vector<Int> primes;
            if (!opt.factors.empty()) {
                std::stringstream ss(opt.factors);
                std::string item;
                while (std::getline(ss, item, ',')) primes.push_back(parse_int(item));
            } else {
                primes = factor_by_trial_division(big_n);
            }
            record(diagnostic_record(audit::diagnostic(big_n, primes), opt.B));
        } else {
            record(m_census_record(n, audit::census_m(n, opt.cap)));
            auto census = audit::census_pass(n, opt.B, opt.skip_steps12, opt.cap);
            record(pass_census_record(census));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}

double sprp_budget(double log2n) { return log2n + 2 * std::log2(log2n) + 20; }
double qft_budget(double log2n) { return 3 * log2n + 10 * std::log2(log2n) + 80; }

int run_bench(unsigned bits, unsigned samples, std::uint64_t seed, std::uint32_t B, bool text) {
    SplitMix64 rng(seed);
    for (unsigned i = 0; i < samples; ++i) {
        Int n = random_odd_bits(rng, bits);
        double log2n = log2_approx(n);

        auto emit_row = [&](const char* test, const Verdict& v, const MeterReport& m,
                            double budget) {
            Json j;
            j["command"] = "bench";
            j["test"] = test;
            j["bits"] = bits;
            j["sample"] = i;
            j["n"] = n.get_str();
            j["verdict"] = v.outcome == Outcome::probable_prime ? "probable_prime" : "composite";
            j["reason"] = to_string(v.reason);
            j["mults"] = m.mults;
            j["aux_ops"] = m.aux_ops();
            j["selfridges"] = round6(m.selfridges);
            j["budget_mults"] = round6(budget);
            j["within_budget"] = static_cast<double>(m.mults) <= budget;
            emit(j, text);
        };

        auto [sprp_verdict, sprp_report] =
            metered_run([&](Meter& meter) { return sprp(n, Int(2), &meter); }, n);
        emit_row("sprp", sprp_verdict, sprp_report, sprp_budget(log2n));

        ParamSearch search = select_params(n, B, rng);
        if (search.kind != ParamSearch::Kind::found) {
            Verdict v = search.kind == ParamSearch::Kind::composite_by_gcd
                            ? Verdict{Outcome::composite, Reason::gcd_witness,
                                      search.gcd_witness, std::nullopt, std::nullopt}
                            : Verdict{Outcome::probable_prime, Reason::param_search_exhausted,
                                      std::nullopt, std::nullopt, std::nullopt};
            MeterReport empty = make_report(Meter{}, n);
            emit_row("qft_naive", v, empty, qft_budget(log2n));
            emit_row("qft_fast", v, empty, qft_budget(log2n));
            continue;
        }
        TestSubject subject = decompose(n);
        auto [nv, nr] = metered_run(
            [&](Meter& meter) { return qft_core_naive(subject, *search.params, &meter); }, n);
        emit_row("qft_naive", nv, nr, qft_budget(log2n));
        auto [fv, fr] = metered_run(
            [&](Meter& meter) { return qft_core_fast(subject, *search.params, &meter); }, n);
        emit_row("qft_fast", fv, fr, qft_budget(log2n));
    }
    return 0;
}

bool composite_by_library(const Int& n) {
    TrialDivision td = trial_divide(n, kDefaultB);
    if (td.kind == TrialDivision::Kind::divisor_found) return true;
    if (td.kind == TrialDivision::Kind::proven_prime) return false;
    for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!sprp(n, Int(a)).is_probable_prime()) return true;
    }
    return false;
}

int run_search(const std::string& lo_text, const std::string& hi_text, unsigned samples,
               std::uint64_t seed, bool text) {
    Int lo, hi;
    try {
        lo = parse_int(lo_text);
        hi = parse_int(hi_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (lo < 3) lo = 3;
    if (is_even(lo)) ++lo;
    if (hi > (Int(1) << 48)) {
        std::cerr << "error: search range too large\n";
        return 2;
    }

    struct Survivor {
        std::uint64_t n;
        std::vector<std::pair<Int, Int>> passing;
    };
    std::vector<Survivor> survivors;

    std::vector<std::uint64_t> odds;
    for (Int n = lo; n <= hi; n += 2) odds.push_back(n.get_ui());

#pragma omp parallel
    {
        std::vector<Survivor> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (long long idx = 0; idx < static_cast<long long>(odds.size()); ++idx) {
            std::uint64_t nu = odds[static_cast<std::size_t>(idx)];
            Int n(static_cast<unsigned long>(nu));
            if (!composite_by_library(n)) continue;
            if (is_perfect_square(n)) continue;  // no pair meets the side conditions
            // Per-n stream, so the draw sequence is independent of scheduling.
            SplitMix64 rng(seed ^ (nu * 0x9E3779B97F4A7C15ull));
            TestSubject subject = decompose(n);
            Survivor s{nu, {}};
            unsigned drawn = 0, draw_cap = 200 * samples;
            for (unsigned got = 0; got < samples && drawn < draw_cap; ++drawn) {
                Int b = uniform_residue(rng, n);
                Int c = uniform_residue(rng, n);
                auto params = make_params(n, b, c);
                if (!params) continue;
                ++got;
                if (qft_core_fast(subject, *params).is_probable_prime()) {
                    s.passing.emplace_back(params->b, params->c);
                }
            }
            if (!s.passing.empty()) local.push_back(std::move(s));
        }
#pragma omp critical
        survivors.insert(survivors.end(), local.begin(), local.end());
    }

    std::sort(survivors.begin(), survivors.end(),
              [](const Survivor& a, const Survivor& b) { return a.n < b.n; });
    for (const Survivor& s : survivors) {
        Json j;
        j["command"] = "search";
        j["n"] = s.n;
        j["samples"] = samples;
        Json pairs = Json::array();
        for (const auto& [b, c] : s.passing) {
            pairs.push_back(Json::array({b.get_str(), c.get_str()}));
        }
        j["passing"] = pairs;
        emit(j, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic Frobenius probable-prime tester"};
    app.require_subcommand(1);
    argv = app.ensure_utf8(argv);

    std::string n_text, output = "json";
    std::uint32_t B = kDefaultB;
    std::uint64_t seed = 0;
    unsigned k = 1;

    auto* test = app.add_subcommand("test", "probable-prime test for one number");
    test->add_option("n", n_text, "number to test (decimal or 0x hex)")->required();
    test->add_option("--B", B, "trial-division bound");
    test->add_option("--seed", seed, "rng seed");
    test->add_option("-k,--iterations", k, "parameter-search rounds")->check(CLI::Range(1u, 1000u));
    test->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

    AuditOptions audit_opt;
    auto* audit_cmd = app.add_subcommand("audit", "exhaustive pair-count audits");
    audit_cmd->add_option("n", audit_opt.n_text, "modulus to audit");
    audit_cmd->add_option("--B", audit_opt.B, "trial-division bound for the pass sweep");
    audit_cmd->add_flag("--skip-steps12", audit_opt.skip_steps12,
                        "run the core directly, without trial division and the square test");
    audit_cmd->add_option("--prop22", audit_opt.prop22, "exact pair census for an odd prime");
    audit_cmd->add_flag("--pairs", audit_opt.pairs, "pair censuses against the squarefree bounds");
    audit_cmd->add_option("--root-swaps", audit_opt.root_swaps,
                          "count root-swapping pairs mod this prime divisor of n");
    audit_cmd->add_flag("--diag", audit_opt.diag, "factored diagnostic for n");
    audit_cmd->add_option("--factors", audit_opt.factors, "comma-separated prime factors of n");
    audit_cmd->add_option("--cap", audit_opt.cap, "enumeration cap");

    unsigned bench_bits = 256, bench_samples = 10;
    auto* bench = app.add_subcommand("bench", "selfridge accounting on random inputs");
    bench->add_option("--bits", bench_bits, "bit size of the sampled n")->check(CLI::Range(8u, 8192u));
    bench->add_option("--samples", bench_samples, "number of sampled n");
    bench->add_option("--seed", seed, "rng seed");
    bench->add_option("--B", B, "trial-division bound");
    bench->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

    std::string lo_text, hi_text;
    unsigned search_samples = 10;
    auto* search = app.add_subcommand("search", "scan a range for core-passing composites");
    search->add_option("lo", lo_text, "range start")->required();
    search->add_option("hi", hi_text, "range end (inclusive)")->required();
    search->add_option("--samples", search_samples, "parameter pairs sampled per composite");
    search->add_option("--seed", seed, "rng seed");
    search->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

    audit_cmd->add_option("--output", output, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bool text = output == "text";
    try {
        if (test->parsed()) return run_test(n_text, B, seed, k, text);
        if (audit_cmd->parsed()) {
            audit_opt.text = text;
            return run_audit(audit_opt);
        }
        if (bench->parsed()) return run_bench(bench_bits, bench_samples, seed, B, text);
        if (search->parsed()) return run_search(lo_text, hi_text, search_samples, seed, text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
