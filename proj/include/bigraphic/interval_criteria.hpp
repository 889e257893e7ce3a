#ifndef BIGRAPHIC_INTERVAL_CRITERIA_HPP
#define BIGRAPHIC_INTERVAL_CRITERIA_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "enumeration.hpp"
#include "gale_ryser.hpp"

namespace bigraphic
{

/// Existence of a realization with degrees inside the intervals.
///
/// With a and c sorted descending:
///   sum_{i<=t} c'_i <= sum_j min(b_j, t)  for t in [1, n]   ("T1.2-first")
///   sum_{i<=s} a'_i <= sum_j min(d_j, s)  for s in [1, m]   ("T1.2-second")
inline CheckReport check_existence(const IntervalPair& ip)
{
    CheckReport report;
    const auto a = ip.left.lows(), b = ip.left.highs();
    const auto c = ip.right.lows(), d = ip.right.highs();
    auto perm_c = detail::dominance(report, Family::existence_first, c, b);
    auto perm_a = detail::dominance(report, Family::existence_second, a, d);
    report.sort_permutations.push_back({"c", std::move(perm_c)});
    report.sort_permutations.push_back({"a", std::move(perm_a)});
    return report;
}

/// Sufficient condition for every valid pair to be bigraphic.
///
/// With b and d sorted descending:
///   sum_{i<=k} b'_i <= sum_j min(c_j, k)  for k in [1, m]   ("(2)")
///   sum_{i<=l} d'_i <= sum_j min(a_j, l)  for l in [1, n]   ("(3)")
///
/// Note that (2) at k=m and (3) at l=n give sum b <= sum c <= sum d <= sum a,
/// so a passing instance always has a == b and c == d.
inline CheckReport check_sufficient(const IntervalPair& ip)
{
    CheckReport report;
    const auto a = ip.left.lows(), b = ip.left.highs();
    const auto c = ip.right.lows(), d = ip.right.highs();
    auto perm_b = detail::dominance(report, Family::sufficient_left, b, c);
    auto perm_d = detail::dominance(report, Family::sufficient_right, d, a);
    report.sort_permutations.push_back({"b", std::move(perm_b)});
    report.sort_permutations.push_back({"d", std::move(perm_d)});
    return report;
}

/// Necessary condition: the sufficient inequalities relaxed by the total
/// imbalance between the opposing bounds.
///   sum_{i<=k} b'_i <= sum_j min(c_j, k) + |sum b - sum c|   ("(4)")
///   sum_{i<=l} d'_i <= sum_j min(a_j, l) + |sum d - sum a|   ("(5)")
inline CheckReport check_necessary(const IntervalPair& ip)
{
    CheckReport report;
    const auto a = ip.left.lows(), b = ip.left.highs();
    const auto c = ip.right.lows(), d = ip.right.highs();
    const Degree slack_left = std::abs(total(b) - total(c));
    const Degree slack_right = std::abs(total(d) - total(a));
    auto perm_b = detail::dominance(report, Family::necessary_left, b, c, slack_left);
    auto perm_d = detail::dominance(report, Family::necessary_right, d, a, slack_right);
    report.sort_permutations.push_back({"b", std::move(perm_b)});
    report.sort_permutations.push_back({"d", std::move(perm_d)});
    return report;
}

class NotApplicableError : public std::runtime_error
{
public:
    NotApplicableError(Degree sum_d, Degree sum_a, Degree sum_c, Degree sum_b)
        : std::runtime_error("exact criterion needs sum d == sum a and sum c == sum b (got " +
                             std::to_string(sum_d) + " vs " + std::to_string(sum_a) + ", " +
                             std::to_string(sum_c) + " vs " + std::to_string(sum_b) + ")"),
          sum_d(sum_d), sum_a(sum_a), sum_c(sum_c), sum_b(sum_b)
    {}

    Degree sum_d, sum_a, sum_c, sum_b;
};

inline bool exact_applicable(const IntervalPair& ip) noexcept
{
    return ip.right.sum_hi() == ip.left.sum_lo() && ip.right.sum_lo() == ip.left.sum_hi();
}

/// Exact characterization, valid when sum d == sum a and sum c == sum b.
/// Same inequality families as check_sufficient. Throws NotApplicableError
/// when the sum hypotheses fail.
inline CheckReport check_exact(const IntervalPair& ip)
{
    if (!exact_applicable(ip))
        throw NotApplicableError(ip.right.sum_hi(), ip.left.sum_lo(), ip.right.sum_lo(),
                                 ip.left.sum_hi());
    auto report = check_sufficient(ip);
    report.degenerate_forced = ip.left.degenerate() && ip.right.degenerate();
    return report;
}

// ---------------------------------------------------------------------------
// Witnesses

/// A valid pair that is not bigraphic.
struct Witness
{
    DegreePair pair;
    std::size_t failing_r = 0;      // first r where (1) fails, sorted-Q coordinates
    std::string construction_tag;   // "1.1", "1.2", "1.3-Qj", "2.2", "2.3", "2.4", "brute-force"

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Builds a witness from `pair` if it is valid for `ip` and not bigraphic.
inline std::optional<Witness> make_witness(const IntervalPair& ip, const DegreePair& pair,
                                           std::string tag)
{
    if (!is_valid_pair(ip, pair))
        return std::nullopt;
    const auto report = is_bigraphic(pair);
    if (report.holds())
        return std::nullopt;
    for (const auto& v : report.violations)
        if (v.family == Family::gale_ryser)
            return Witness{pair, v.index, std::move(tag)};
    return std::nullopt; // unreachable for equal sums
}

/// Throws std::logic_error unless `w` is valid for `ip` and not bigraphic.
inline void revalidate(const IntervalPair& ip, const Witness& w)
{
    if (!is_valid_pair(ip, w.pair))
        throw std::logic_error("witness lies outside its intervals or has unequal sums");
    const auto report = is_bigraphic(w.pair);
    if (report.holds())
        throw std::logic_error("witness pair is bigraphic");
    const bool index_matches = std::ranges::any_of(report.violations, [&](const Violation& v) {
        return v.family == Family::gale_ryser && v.index == w.failing_r;
    });
    if (!index_matches)
        throw std::logic_error("witness failing index does not fail");
}

namespace detail
{

struct Candidate
{
    DegreePair pair;
    std::string tag;
};

// Candidate pairs aimed at a failure of (5) at prefix `failing_l`. Works with a
// sorted descending (the X lower bounds) and d sorted descending (the Y upper
// bounds); the deficiency t = sum d - sum a is absorbed by raising P or by
// lowering Q. Candidates are returned in input coordinates and may be improper.
inline std::vector<Candidate> right_side_candidates(const IntervalPair& ip, std::size_t failing_l)
{
    const std::size_t m = ip.m();
    const std::size_t n = ip.n();
    const auto sorted_a = sort_desc_with_perm(ip.left.lows());
    const auto sorted_d = sort_desc_with_perm(ip.right.highs());
    const auto& a = sorted_a.first;
    const auto& d = sorted_d.first;
    const Degree t = total(d) - total(a);
    std::vector<Candidate> out;
    if (t < 0)
        return out; // no valid pair can exist

    const auto sm = static_cast<Degree>(m);
    const auto sn = static_cast<Degree>(n);
    const auto r = static_cast<Degree>(failing_l);
    const bool early = r < sm;

    auto emit = [&](const std::vector<Degree>& p_sorted, const std::vector<Degree>& q_sorted,
                    std::string tag) {
        DegreePair pair{std::vector<Degree>(m), std::vector<Degree>(n)};
        for (std::size_t i = 0; i < m; ++i)
            pair.p[sorted_a.second[i]] = p_sorted[i];
        for (std::size_t j = 0; j < n; ++j)
            pair.q[sorted_d.second[j]] = q_sorted[j];
        out.push_back({std::move(pair), std::move(tag)});
    };

    // Raise the t largest lower bounds by one, keep Q at the upper bounds.
    if (t <= sm) {
        auto p = a;
        for (Degree i = 0; i < t; ++i)
            ++p[static_cast<std::size_t>(i)];
        emit(p, d, "1.1");
    }

    // Raise every lower bound by one and lower the last t - m upper bounds by one.
    if (t >= sm && t - sm <= sn) {
        auto p = a;
        for (auto& v : p) ++v;
        auto q = d;
        bool nonnegative = true;
        for (std::size_t j = n - static_cast<std::size_t>(t - sm); j < n; ++j)
            nonnegative = (--q[j] >= 0) && nonnegative;
        if (nonnegative)
            emit(p, q, early ? "1.2" : (t <= sm + sn - r ? "2.2" : "2.3"));
    }

    // Keep P at the lower bounds and strip the deficiency from Q in rounds,
    // each round lowering a trailing block of the still-positive entries.
    if (t >= 1) {
        auto q = d;
        Degree remaining = t;
        while (remaining > 0) {
            std::size_t last = n;
            while (last > 0 && q[last - 1] == 0)
                --last;
            if (last == 0)
                break;
            const auto width = static_cast<std::size_t>(std::min<Degree>(remaining, static_cast<Degree>(last)));
            for (std::size_t j = last - width; j < last; ++j)
                --q[j];
            remaining -= static_cast<Degree>(width);
        }
        if (remaining == 0)
            emit(a, q, early ? "1.3-Qj" : "2.4");
    }
    return out;
}

inline std::optional<std::size_t> first_index(const CheckReport& report, Family family)
{
    for (const auto& v : report.violations)
        if (v.family == family)
            return v.index;
    return std::nullopt;
}

} // namespace detail

/// Searches for a valid non-bigraphic pair of an instance failing the
/// necessary condition.
///
/// Tries the constructive candidates first: for a failure of (5), candidates
/// built from (a, d); for a failure of (4), the same constructions with the
/// two sides exchanged. Improper candidates are skipped. If none is a witness,
/// falls back to lexicographic enumeration under `budget` (tag "brute-force").
///
/// Throws std::invalid_argument when the necessary condition holds and
/// BudgetExceeded when the fallback runs out of budget. Returns nullopt when
/// every valid pair is bigraphic (including when there is no valid pair).
inline std::optional<Witness> necessity_witness(const IntervalPair& ip, std::uint64_t budget)
{
    const auto report = check_necessary(ip);
    if (report.holds())
        throw std::invalid_argument("necessary condition holds; no witness is implied");

    std::optional<Witness> found;
    if (auto l = detail::first_index(report, Family::necessary_right)) {
        for (auto& cand : detail::right_side_candidates(ip, *l))
            if ((found = make_witness(ip, cand.pair, cand.tag)))
                break;
    }
    if (!found) {
        if (auto k = detail::first_index(report, Family::necessary_left)) {
            const auto mirrored = ip.swapped();
            for (auto& cand : detail::right_side_candidates(mirrored, *k))
                if ((found = make_witness(ip, cand.pair.swapped(), cand.tag)))
                    break;
        }
    }
    if (!found) {
        for_each_pair(ip, budget, [&](const DegreePair& pair) {
            found = make_witness(ip, pair, "brute-force");
            return !found;
        });
    }
    if (found)
        revalidate(ip, *found);
    return found;
}

} // namespace bigraphic

#endif // BIGRAPHIC_INTERVAL_CRITERIA_HPP
