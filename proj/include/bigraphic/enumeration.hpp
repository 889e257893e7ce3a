#ifndef BIGRAPHIC_ENUMERATION_HPP
#define BIGRAPHIC_ENUMERATION_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace bigraphic
{

class BudgetExceeded : public std::runtime_error
{
public:
    BudgetExceeded(std::uint64_t budget, std::uint64_t partial_count)
        : std::runtime_error("enumeration budget of " + std::to_string(budget) +
                             " search states exceeded after " + std::to_string(partial_count) +
                             " pairs"),
          budget_(budget), partial_count_(partial_count)
    {}

    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t partial_count() const noexcept { return partial_count_; }

private:
    std::uint64_t budget_;
    std::uint64_t partial_count_;
};

struct EnumerationStats
{
    std::uint64_t states = 0;
    std::uint64_t pairs = 0;
    bool stopped = false;
};

/// Visits every valid pair of `ip` (a_i <= p_i <= b_i, c_j <= q_j <= d_j,
/// sum P == sum Q) exactly once, in lexicographic order of P then Q, both in
/// input coordinates.
///
/// Each digit assignment tried counts as one search state; more than `budget`
/// states throws BudgetExceeded. Digit ranges are narrowed with suffix sums so
/// every explored prefix extends to at least one valid pair.
///
/// `visit(const DegreePair&)` returns false to stop early.
template <class Visitor>
EnumerationStats for_each_pair(const IntervalPair& ip, std::uint64_t budget, Visitor&& visit)
{
    if (budget == 0)
        throw std::invalid_argument("enumeration budget must be positive");

    const std::size_t m = ip.m();
    const std::size_t n = ip.n();

    // suffix sums: rest_lo[i] = sum_{k>=i} lo_k
    auto suffix = [](const IntervalSequence& seq, auto member) {
        std::vector<Degree> out(seq.size() + 1, 0);
        for (std::size_t i = seq.size(); i-- > 0;)
            out[i] = out[i + 1] + seq[i].*member;
        return out;
    };
    const auto rest_a = suffix(ip.left, &Interval::lo);
    const auto rest_b = suffix(ip.left, &Interval::hi);
    const auto rest_c = suffix(ip.right, &Interval::lo);
    const auto rest_d = suffix(ip.right, &Interval::hi);

    const Degree lowest = std::max(rest_a[0], rest_c[0]);
    const Degree highest = std::min(rest_b[0], rest_d[0]);

    EnumerationStats stats;
    if (lowest > highest)
        return stats;

    DegreePair pair{std::vector<Degree>(m, 0), std::vector<Degree>(n, 0)};

    auto tick = [&] {
        if (++stats.states > budget)
            throw BudgetExceeded(budget, stats.pairs);
    };

    // Returns false once the visitor asked to stop.
    auto fill_q = [&](auto&& self, std::size_t j, Degree used, Degree target) -> bool {
        if (j == n) {
            ++stats.pairs;
            if (!visit(static_cast<const DegreePair&>(pair))) {
                stats.stopped = true;
                return false;
            }
            return true;
        }
        const Degree remaining = target - used;
        const Degree lo = std::max(ip.right[j].lo, remaining - rest_d[j + 1]);
        const Degree hi = std::min(ip.right[j].hi, remaining - rest_c[j + 1]);
        for (Degree v = lo; v <= hi; ++v) {
            tick();
            pair.q[j] = v;
            if (!self(self, j + 1, used + v, target))
                return false;
        }
        return true;
    };

    auto fill_p = [&](auto&& self, std::size_t i, Degree used) -> bool {
        if (i == m)
            return fill_q(fill_q, 0, 0, used);
        const Degree lo = std::max(ip.left[i].lo, lowest - used - rest_b[i + 1]);
        const Degree hi = std::min(ip.left[i].hi, highest - used - rest_a[i + 1]);
        for (Degree v = lo; v <= hi; ++v) {
            tick();
            pair.p[i] = v;
            if (!self(self, i + 1, used + v))
                return false;
        }
        return true;
    };

    fill_p(fill_p, 0, 0);
    return stats;
}

/// Materialized form of for_each_pair.
inline std::vector<DegreePair> enumerate_pairs(const IntervalPair& ip, std::uint64_t budget)
{
    std::vector<DegreePair> out;
    for_each_pair(ip, budget, [&](const DegreePair& pair) {
        out.push_back(pair);
        return true;
    });
    return out;
}

} // namespace bigraphic

#endif // BIGRAPHIC_ENUMERATION_HPP
