#ifndef BIGRAPHIC_ORACLE_HPP
#define BIGRAPHIC_ORACLE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"
#include "enumeration.hpp"
#include "gale_ryser.hpp"
#include "interval_criteria.hpp"

namespace bigraphic
{

enum class ForciblyKind { forcibly, vacuously_forcibly, not_forcibly };

inline constexpr std::string_view kind_name(ForciblyKind k) noexcept
{
    switch (k) {
    case ForciblyKind::forcibly: return "Forcibly";
    case ForciblyKind::vacuously_forcibly: return "VacuouslyForcibly";
    case ForciblyKind::not_forcibly: return "NotForcibly";
    }
    return "?";
}

/// Ground truth for "every valid pair is bigraphic".
///
/// pairs_examined counts valid pairs looked at before the answer was known:
/// all of them for (vacuously) forcibly instances, up to and including the
/// witness otherwise. The witness is present iff kind is not_forcibly.
struct ForciblyVerdict
{
    ForciblyKind kind = ForciblyKind::vacuously_forcibly;
    std::optional<Witness> witness;
    std::uint64_t pairs_examined = 0;

    friend bool operator==(const ForciblyVerdict&, const ForciblyVerdict&) = default;
};

/// Decides the forcibly property by enumeration. The witness is the
/// lexicographically first non-bigraphic valid pair.
inline ForciblyVerdict brute_forcibly(const IntervalPair& ip, std::uint64_t budget)
{
    ForciblyVerdict verdict;
    for_each_pair(ip, budget, [&](const DegreePair& pair) {
        ++verdict.pairs_examined;
        if (bigraphic(pair.p, pair.q))
            return true;
        verdict.witness = make_witness(ip, pair, "brute-force");
        return false;
    });
    if (verdict.witness)
        verdict.kind = ForciblyKind::not_forcibly;
    else if (verdict.pairs_examined > 0)
        verdict.kind = ForciblyKind::forcibly;
    else
        verdict.kind = ForciblyKind::vacuously_forcibly;
    return verdict;
}

// ---------------------------------------------------------------------------
// Cross-validation of the interval criteria against enumeration

/// A tested implication that failed on an instance.
///
/// Tags: "existence" (existence check disagrees with enumeration),
/// "sufficient" (sufficient check holds on a non-forcibly instance),
/// "necessary" (forcibly, non-vacuous instance fails the necessary check),
/// "exact" (exact check disagrees with enumeration), "sufficient-degeneracy",
/// "exact-degeneracy", and "necessary-witness" (no witness found although the
/// necessary check fails on a non-vacuous instance).
struct Finding
{
    std::string tag;
    std::string detail;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct Predictions
{
    Verdict existence = Verdict::holds;
    Verdict sufficient = Verdict::holds;
    Verdict necessary = Verdict::holds;
    std::optional<Verdict> exact; // empty when the sum hypotheses fail
    bool exact_degenerate_forced = false;

    friend bool operator==(const Predictions&, const Predictions&) = default;
};

struct ValidationRecord
{
    IntervalPair instance;
    bool partial = false; // enumeration budget ran out; nothing judged
    Predictions predictions;
    ForciblyVerdict ground_truth;
    bool bigraphic_pair_exists = false;
    std::uint64_t valid_pairs = 0;
    // Set when the necessary check fails on a non-vacuous instance.
    std::optional<Witness> necessity_witness;
    // Necessary check fails on an instance with no valid pair. Counted, not a finding.
    bool vacuous_necessity_failure = false;
    std::vector<Finding> findings;

    bool vacuous() const noexcept { return !partial && valid_pairs == 0; }
    bool witness_from_construction() const noexcept
    {
        return necessity_witness && necessity_witness->construction_tag != "brute-force";
    }
};

/// Runs every criterion on `ip`, enumerates the valid pairs once, and records
/// each implication that the enumeration contradicts.
inline ValidationRecord validate(const IntervalPair& ip, std::uint64_t budget)
{
    ValidationRecord rec;
    rec.instance = ip;

    const auto existence = check_existence(ip);
    const auto sufficient = check_sufficient(ip);
    const auto necessary = check_necessary(ip);
    std::optional<CheckReport> exact;
    if (exact_applicable(ip))
        exact = check_exact(ip);

    rec.predictions.existence = existence.verdict;
    rec.predictions.sufficient = sufficient.verdict;
    rec.predictions.necessary = necessary.verdict;
    if (exact) {
        rec.predictions.exact = exact->verdict;
        rec.predictions.exact_degenerate_forced = exact->degenerate_forced;
    }

    auto& truth = rec.ground_truth;
    try {
        for_each_pair(ip, budget, [&](const DegreePair& pair) {
            ++rec.valid_pairs;
            if (bigraphic(pair.p, pair.q)) {
                rec.bigraphic_pair_exists = true;
            } else if (!truth.witness) {
                truth.witness = make_witness(ip, pair, "brute-force");
                truth.pairs_examined = rec.valid_pairs;
            }
            return true;
        });
    } catch (const BudgetExceeded&) {
        rec.partial = true;
        rec.valid_pairs = 0;
        rec.bigraphic_pair_exists = false;
        truth = {};
        return rec;
    }

    if (truth.witness) {
        truth.kind = ForciblyKind::not_forcibly;
    } else {
        truth.pairs_examined = rec.valid_pairs;
        truth.kind = rec.valid_pairs > 0 ? ForciblyKind::forcibly : ForciblyKind::vacuously_forcibly;
    }
    const bool forcibly_or_vacuous = truth.kind != ForciblyKind::not_forcibly;

    auto find = [&](std::string tag, std::string detail) {
        rec.findings.push_back({std::move(tag), std::move(detail)});
    };

    if (existence.holds() != rec.bigraphic_pair_exists)
        find("existence", existence.holds() ? "criterion holds but no valid pair is bigraphic"
                                            : "criterion fails but a valid pair is bigraphic");
    if (sufficient.holds() && !forcibly_or_vacuous)
        find("sufficient", "criterion holds but a valid pair is not bigraphic");
    if (!necessary.holds()) {
        if (truth.kind == ForciblyKind::forcibly)
            find("necessary", "forcibly bigraphic but the necessary criterion fails");
        else if (truth.kind == ForciblyKind::vacuously_forcibly)
            rec.vacuous_necessity_failure = true;
    }
    if (exact && exact->holds() != forcibly_or_vacuous)
        find("exact", exact->holds() ? "criterion holds but a valid pair is not bigraphic"
                                     : "criterion fails but every valid pair is bigraphic");

    if (sufficient.holds() && !(ip.left.degenerate() && ip.right.degenerate()))
        find("sufficient-degeneracy", "sufficient criterion holds on non-degenerate intervals");
    if (exact) {
        if (!exact->degenerate_forced)
            find("exact-degeneracy", "sum hypotheses hold on non-degenerate intervals");
        else if (exact->holds() != is_bigraphic({ip.left.lows(), ip.right.lows()}).holds())
            find("exact-degeneracy", "exact criterion disagrees with the point pair (a; c)");
    }

    if (!necessary.holds() && rec.valid_pairs > 0) {
        rec.necessity_witness = necessity_witness(ip, budget);
        if (!rec.necessity_witness)
            find("necessary-witness", "no valid non-bigraphic pair found");
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Seeded instance generation

enum class GenMode { unconstrained, exact_sum_hypotheses };

struct GenParams
{
    std::size_t m_max = 4;
    std::size_t n_max = 4;
    Degree deg_max = 5;
    GenMode mode = GenMode::unconstrained;
};

namespace detail
{

// Unbiased draw from [lo, hi]. std::uniform_int_distribution is
// implementation-defined, so draws are made from raw engine output instead.
inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi)
{
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max())
        return rng();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % range;
}

// Moves the two totals together: first raises entries of the smaller side
// (left to right, up to cap), then lowers entries of the larger side.
inline void balance(std::vector<Degree>& p, std::vector<Degree>& q, Degree cap)
{
    Degree diff = total(p) - total(q);
    auto& small = diff > 0 ? q : p;
    auto& large = diff > 0 ? p : q;
    diff = diff > 0 ? diff : -diff;
    for (auto& v : small) {
        const Degree step = std::min(diff, cap - v);
        v += step;
        diff -= step;
    }
    for (auto& v : large) {
        const Degree step = std::min(diff, v);
        v -= step;
        diff -= step;
    }
}

} // namespace detail

/// Deterministic function of (seed, params). Draws m and n uniformly, then each
/// interval uniformly among {(lo, hi) : 0 <= lo <= hi <= deg_max}.
///
/// In exact_sum_hypotheses mode every interval is a single point and the two
/// totals are balanced, which is the only way those hypotheses can hold.
inline IntervalPair gen_instance(std::uint64_t seed, const GenParams& params)
{
    if (params.m_max < 1 || params.n_max < 1 || params.deg_max < 1)
        throw std::invalid_argument("m_max, n_max and deg_max must be at least 1");
    if (params.m_max > max_sequence_length || params.n_max > max_sequence_length ||
        params.deg_max > max_degree_value)
        throw std::invalid_argument("generator parameters exceed the input caps");

    std::mt19937_64 rng(seed);
    const auto deg = static_cast<std::uint64_t>(params.deg_max);
    const auto m = static_cast<std::size_t>(detail::uniform(rng, 1, params.m_max));
    const auto n = static_cast<std::size_t>(detail::uniform(rng, 1, params.n_max));

    if (params.mode == GenMode::exact_sum_hypotheses) {
        std::vector<Degree> p(m), q(n);
        for (auto& v : p) v = static_cast<Degree>(detail::uniform(rng, 0, deg));
        for (auto& v : q) v = static_cast<Degree>(detail::uniform(rng, 0, deg));
        detail::balance(p, q, params.deg_max);
        auto points = [](const std::vector<Degree>& seq) {
            std::vector<Interval> out;
            for (Degree v : seq) out.push_back({v, v});
            return IntervalSequence(std::move(out));
        };
        return {points(p), points(q)};
    }

    auto draw = [&](std::size_t len) {
        std::vector<Interval> out(len);
        for (auto& it : out) {
            Degree lo, hi;
            do {
                lo = static_cast<Degree>(detail::uniform(rng, 0, deg));
                hi = static_cast<Degree>(detail::uniform(rng, 0, deg));
            } while (lo > hi);
            it = {lo, hi};
        }
        return IntervalSequence(std::move(out));
    };
    auto left = draw(m);
    auto right = draw(n);
    return {std::move(left), std::move(right)};
}

} // namespace bigraphic

#endif // BIGRAPHIC_ORACLE_HPP
