// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bigraphic/campaign.hpp"
#include "bigraphic/io.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace bigraphic;
using io::Json;

namespace
{

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail)
{
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string ms(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f ms", value);
    return buf;
}

// Checks 7 and 8 accumulate over both the grid and the fuzz instances.
struct Degeneracy
{
    std::uint64_t sufficient_holds = 0;
    std::uint64_t exact_applicable = 0;
    std::uint64_t violations = 0;

    void check(const IntervalPair& ip)
    {
        if (check_sufficient(ip).holds()) {
            ++sufficient_holds;
            violations += !(ip.left.lows() == ip.left.highs() && ip.right.lows() == ip.right.highs());
        }
        if (bigraphic::exact_applicable(ip)) {
            ++exact_applicable;
            const auto exact = check_exact(ip);
            const bool lows_bigraphic = is_bigraphic({ip.left.lows(), ip.right.lows()}).holds();
            violations += !exact.degenerate_forced || exact.holds() != lows_bigraphic;
        }
    }
};

struct Witnesses
{
    std::uint64_t required = 0;
    std::uint64_t none_found = 0;
    std::uint64_t invalid = 0;
    std::uint64_t from_construction = 0;

    void check(const IntervalPair& ip, const std::optional<Witness>& w)
    {
        ++required;
        if (!w) {
            ++none_found;
            return;
        }
        invalid += !is_valid_pair(ip, w->pair) || oracle::realizable(w->pair);
        from_construction += w->construction_tag != "brute-force";
    }

    std::string summary() const
    {
        char buf[160];
        const double frac = required ? 100.0 * static_cast<double>(from_construction) / static_cast<double>(required) : 0.0;
        std::snprintf(buf, sizeof buf, "%llu witnesses, none_found=%llu, invalid=%llu, constructed=%llu (%.2f%%), brute-force=%llu",
                      static_cast<unsigned long long>(required), static_cast<unsigned long long>(none_found),
                      static_cast<unsigned long long>(invalid), static_cast<unsigned long long>(from_construction), frac,
                      static_cast<unsigned long long>(required - none_found - from_construction));
        return buf;
    }
};

Degeneracy degeneracy;
Witnesses witnesses;

void first_counterexample()
{
    const auto ip = oracle::make({{2, 3}, {1, 2}}, {{1, 2}, {0, 1}});
    const auto start = Clock::now();
    const auto verdict = brute_forcibly(ip, 1000);
    const auto sufficient = check_sufficient(ip);
    const double t = elapsed_ms(start);

    const std::vector<Violation> expected{{Family::sufficient_left, 1, 3, 1}, {Family::sufficient_left, 2, 5, 1}};
    const bool ok = verdict.kind == ForciblyKind::forcibly && verdict.pairs_examined == 1 && !verdict.witness &&
                    sufficient.violations == expected && t < 1.0;
    report(1, "first counterexample", ok,
           std::string(kind_name(verdict.kind)) + ", pairs_examined=" + std::to_string(verdict.pairs_examined) +
               ", (2) fails at k=1 (3>1) and k=2 (5>1), " + ms(t));
}

void second_counterexample()
{
    const auto ip = oracle::make({{1, 3}, {2, 3}}, {{1, 2}, {0, 2}});
    const auto start = Clock::now();
    const auto necessary = check_necessary(ip);
    const auto left = prefix_terms(ip.left.highs(), ip.right.lows(), std::abs(ip.left.sum_hi() - ip.right.sum_lo()));
    const auto right = prefix_terms(ip.right.highs(), ip.left.lows(), std::abs(ip.right.sum_hi() - ip.left.sum_lo()));
    const auto verdict = brute_forcibly(ip, 1000);
    const double t = elapsed_ms(start);

    bool ok = necessary.holds() && left == std::vector<PrefixTerm>{{1, 3, 6}, {2, 6, 6}} &&
              right == std::vector<PrefixTerm>{{1, 2, 3}, {2, 4, 4}} && verdict.kind == ForciblyKind::not_forcibly &&
              verdict.witness && verdict.witness->pair == DegreePair{{1, 3}, {2, 2}} &&
              verdict.witness->failing_r == 2 && t < 1.0;
    if (ok) {
        const auto gr = is_bigraphic(verdict.witness->pair);
        ok = gr.violations == std::vector<Violation>{{Family::gale_ryser, 2, 4, 3}} &&
             !oracle::realizable(verdict.witness->pair);
    }
    report(2, "second counterexample", ok,
           "necessary holds (3<=6, 6<=6; 2<=3, 4<=4), " + std::string(kind_name(verdict.kind)) +
               " with P=(1,3) Q=(2,2) failing r=2 (4>3), " + ms(t));
}

void gale_ryser_oracle()
{
    const auto start = Clock::now();
    const auto truth = oracle::realizable_degrees(3, 3); // 512 matrices
    std::uint64_t pairs = 0, disagreements = 0;
    std::vector<Degree> p(3), q(3);
    for (int code = 0; code < 4096; ++code) {
        int c = code;
        for (auto& v : p) { v = c % 4; c /= 4; }
        for (auto& v : q) { v = c % 4; c /= 4; }
        ++pairs;
        disagreements += is_bigraphic({p, q}).holds() != (truth.count({p, q}) > 0);
    }
    const double t = elapsed_ms(start);
    report(3, "Gale-Ryser equivalence", disagreements == 0 && pairs == 4096 && t < 10'000,
           std::to_string(pairs) + " pairs, " + std::to_string(disagreements) + " disagreements, " + ms(t));
}

void realization_consistency()
{
    std::mt19937_64 rng(20240917);
    const auto start = Clock::now();
    std::uint64_t bigraphic_count = 0, discrepancies = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        DegreePair pair;
        switch (trial % 3) {
        case 0: pair = oracle::random_graph_degrees(rng, m, n); break;
        case 1: {
            // equal totals, arbitrary shape
            pair.p = oracle::random_degrees(rng, m, 6);
            pair.q.assign(n, 0);
            Degree rest = total(pair.p);
            for (int guard = 0; rest > 0 && guard < 1000; ++guard) {
                auto& slot = pair.q[rng() % n];
                if (slot < 6) { ++slot; --rest; }
            }
            break;
        }
        default:
            pair.p = oracle::random_degrees(rng, m, 6);
            pair.q = oracle::random_degrees(rng, n, 6);
        }
        const bool holds = is_bigraphic(pair).holds();
        bigraphic_count += holds;
        try {
            const auto g = realize(pair);
            discrepancies += !holds || g.row_sums() != pair.p || g.column_sums() != pair.q;
        } catch (const NotBigraphicError&) {
            discrepancies += holds;
        }
    }
    const double t = elapsed_ms(start);
    report(4, "realization consistency", discrepancies == 0 && t < 5000,
           "1000 pairs (" + std::to_string(bigraphic_count) + " bigraphic), " + std::to_string(discrepancies) +
               " discrepancies, " + ms(t));
}

void exhaustive_grid()
{
    const auto sequences = oracle::all_sequences(2, 3, /*multisets=*/false);
    const auto start = Clock::now();
    std::uint64_t instances = 0, findings = 0, vacuous = 0, vacuous_necessity_failures = 0, partial = 0;
    std::vector<std::pair<IntervalPair, std::optional<Witness>>> needs_witness;
    for (const auto& left : sequences)
        for (const auto& right : sequences) {
            const IntervalPair ip{left, right};
            const auto rec = validate(ip, 10'000'000);
            ++instances;
            for (const auto& f : rec.findings)
                findings += f.tag == "existence" || f.tag == "sufficient" || f.tag == "necessary" || f.tag == "exact";
            vacuous += rec.vacuous();
            vacuous_necessity_failures += rec.vacuous_necessity_failure;
            if (rec.predictions.necessary == Verdict::fails && rec.valid_pairs > 0)
                needs_witness.emplace_back(ip, rec.necessity_witness);
            partial += rec.partial;
        }
    const double t = elapsed_ms(start);

    // ground truth cross-check against the matrix oracle, outside the timed region
    std::uint64_t truth_mismatch = 0;
    for (const auto& left : sequences)
        for (const auto& right : sequences) {
            const IntervalPair ip{left, right};
            const auto kind = brute_forcibly(ip, 10'000'000).kind;
            const auto expected = oracle::forcibly(ip);
            truth_mismatch += (expected == oracle::Kind::forcibly) != (kind == ForciblyKind::forcibly) ||
                              (expected == oracle::Kind::vacuous) != (kind == ForciblyKind::vacuously_forcibly);
            degeneracy.check(ip);
        }
    for (const auto& [ip, w] : needs_witness) witnesses.check(ip, w);

    report(5, "exhaustive grid", instances == 12100 && findings == 0 && partial == 0 && truth_mismatch == 0 && t < 120'000,
           std::to_string(instances) + " instances, " + std::to_string(findings) + " findings, " +
               std::to_string(vacuous) + " vacuous (" + std::to_string(vacuous_necessity_failures) +
               " failing the necessary check), oracle mismatches " + std::to_string(truth_mismatch) + ", " + ms(t));
}

std::string run_cli(const std::vector<std::string>& args, int& code)
{
    std::istringstream in;
    std::ostringstream out, err;
    code = cli::run(args, in, out, err);
    return out.str();
}

void fuzz()
{
    const std::vector<std::string> base{"fuzz",    "--seed",   "1",       "--count", "10000",
                                        "--m-max", "4",        "--n-max", "4",       "--deg-max",
                                        "5",       "--budget", "100000"};
    auto with_workers = [&](const char* workers, int& code, double& t) {
        auto args = base;
        args.insert(args.end(), {"--workers", workers});
        const auto start = Clock::now();
        auto out = run_cli(args, code);
        t = elapsed_ms(start);
        return out;
    };
    int code1 = 0, code8 = 0;
    double t1 = 0, t8 = 0;
    const auto single = with_workers("1", code1, t1);
    const auto parallel = with_workers("8", code8, t8);

    const auto doc = Json::parse(single);
    const auto& digest = doc["digest"];
    std::uint64_t findings = 0;
    for (const auto& tag : {"existence", "sufficient", "necessary", "exact"})
        findings += digest["findings"][tag].get<std::uint64_t>();

    for (const auto& rec : doc["records"]) {
        Json wrapped = Json::object();
        wrapped["intervals"] = rec["instance"];
        const auto ip = io::parse_instance(wrapped.dump()).intervals();
        degeneracy.check(ip);
        if (rec["partial"].get<bool>())
            continue;
        if (rec["predictions"]["necessary"] == "Fails" && rec["ground_truth"]["valid_pairs"].get<std::uint64_t>() > 0) {
            std::optional<Witness> w;
            if (!rec["necessity_witness"].is_null())
                w = io::witness_from_json(rec["necessity_witness"]);
            witnesses.check(ip, w);
        }
    }

    const bool identical = single == parallel && !single.empty();
    report(6, "fuzz campaign",
           code1 == 0 && code8 == 0 && findings == 0 && identical && digest["instances"] == 10000 && t1 < 120'000 &&
               t8 < 120'000,
           "10000 instances, " + std::to_string(findings) + " findings, partial=" + digest["partial"].dump() +
               ", vacuous=" + digest["vacuously_forcibly"].dump() + ", output " +
               (identical ? "byte-identical" : "DIFFERS") + " for 1 and 8 workers, " + ms(t1) + " / " + ms(t8));
}

void degeneracy_report()
{
    report(7, "degeneracy", degeneracy.violations == 0 && degeneracy.sufficient_holds > 0 && degeneracy.exact_applicable > 0,
           std::to_string(degeneracy.sufficient_holds) + " sufficient holds, " +
               std::to_string(degeneracy.exact_applicable) + " exact applicable, " +
               std::to_string(degeneracy.violations) + " violations");
}

void witness_report()
{
    report(8, "necessity witness", witnesses.required > 0 && witnesses.none_found == 0 && witnesses.invalid == 0,
           witnesses.summary());
}

void chain_property()
{
    std::mt19937_64 rng(77);
    const auto start = Clock::now();
    std::uint64_t triples = 0, violations = 0, skipped = 0;
    while (triples < 1000) {
        // intervals around a realizable pair: a = P, d = Q, b >= a, c <= d
        const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        const auto base = oracle::random_graph_degrees(rng, m, n);
        std::vector<Interval> left(m), right(n);
        for (std::size_t i = 0; i < m; ++i) left[i] = {base.p[i], base.p[i] + static_cast<Degree>(rng() % 3)};
        for (std::size_t j = 0; j < n; ++j)
            right[j] = {base.q[j] - static_cast<Degree>(rng() % static_cast<std::uint64_t>(base.q[j] + 1)), base.q[j]};
        std::shuffle(left.begin(), left.end(), rng);
        std::shuffle(right.begin(), right.end(), rng);
        const IntervalPair ip{IntervalSequence(left), IntervalSequence(right)};

        const auto report = check_sufficient(ip);
        if (std::ranges::any_of(report.violations, [](const Violation& v) { return v.family == Family::sufficient_right; })) {
            ++skipped;
            continue;
        }
        const auto pairs = oracle::valid_pairs(ip);
        if (pairs.empty()) {
            ++skipped;
            continue;
        }
        const auto& pair = pairs[rng() % pairs.size()];
        const Degree r = 1 + static_cast<Degree>(rng() % n);
        auto q = pair.q;
        std::ranges::sort(q, std::greater<>{});
        Degree lhs = 0;
        for (Degree k = 0; k < r; ++k) lhs += q[static_cast<std::size_t>(k)];
        violations += lhs > oracle::conjugate_prefix(pair.p, r);
        ++triples;
    }
    const double t = elapsed_ms(start);
    report(9, "chain property", violations == 0 && t < 5000,
           std::to_string(triples) + " triples, " + std::to_string(violations) + " violations, " +
               std::to_string(skipped) + " candidates skipped, " + ms(t));
}

} // namespace

int main()
{
    first_counterexample();
    second_counterexample();
    gale_ryser_oracle();
    realization_consistency();
    exhaustive_grid();
    fuzz();
    degeneracy_report();
    witness_report();
    chain_property();
    return failures == 0 ? 0 : 1;
}
