#ifndef BIGRAPHIC_GALE_RYSER_HPP
#define BIGRAPHIC_GALE_RYSER_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"

namespace bigraphic
{

/// A simple bipartite graph stored as an m x n 0/1 biadjacency matrix.
/// Entry (i, j) is set iff x_i and y_j are adjacent.
class BipartiteRealization
{
public:
    BipartiteRealization() = default;
    BipartiteRealization(std::size_t m, std::size_t n) : m_(m), n_(n), cells_(m * n, 0) {}

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }

    bool at(std::size_t i, std::size_t j) const noexcept { return cells_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v = true) noexcept { cells_[i * n_ + j] = v ? 1 : 0; }

    std::vector<Degree> row_sums() const
    {
        std::vector<Degree> out(m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                out[i] += at(i, j);
        return out;
    }

    std::vector<Degree> column_sums() const
    {
        std::vector<Degree> out(n_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                out[j] += at(i, j);
        return out;
    }

    DegreePair degrees() const { return {row_sums(), column_sums()}; }

    /// Edges (i, j) in row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (at(i, j))
                    out.emplace_back(i, j);
        return out;
    }

    friend bool operator==(const BipartiteRealization&, const BipartiteRealization&) = default;

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> cells_;
};

class NotBigraphicError : public std::runtime_error
{
public:
    explicit NotBigraphicError(CheckReport report)
        : std::runtime_error("degree pair is not bigraphic"), report_(std::move(report))
    {}

    const CheckReport& report() const noexcept { return report_; }

private:
    CheckReport report_;
};

/// Gale-Ryser test. Holds iff sum(P) == sum(Q) and, with Q sorted descending,
/// sum_{i<=r} Q'_i <= sum_j min(P_j, r) for every r in [1, n].
///
/// All failing r are reported in sorted-Q coordinates; the permutation is
/// attached under the label "Q".
inline CheckReport is_bigraphic(const DegreePair& pair)
{
    CheckReport report;
    const Degree sp = total(pair.p);
    const Degree sq = total(pair.q);
    if (sp != sq)
        report.add({Family::sum_equality, 0, std::max(sp, sq), std::min(sp, sq)});
    auto perm = detail::dominance(report, Family::gale_ryser, pair.q, pair.p);
    report.sort_permutations.push_back({"Q", std::move(perm)});
    return report;
}

/// Verdict-only Gale-Ryser test for the enumeration hot path. Same answer as
/// is_bigraphic(pair).holds() without building a report.
inline bool bigraphic(std::span<const Degree> p, std::span<const Degree> q)
{
    if (total(p) != total(q))
        return false;
    std::vector<Degree> sorted(q.begin(), q.end());
    std::ranges::sort(sorted, std::greater<>{});
    Degree prefix = 0;
    for (std::size_t r = 1; r <= sorted.size(); ++r) {
        prefix += sorted[r - 1];
        if (prefix > sum_min(p, static_cast<Degree>(r)))
            return false;
    }
    return true;
}

/// Constructs a realization by the column greedy: Y-vertices are taken in
/// descending demand (ties by lower index), and each is joined to the X-vertices
/// with the largest residual capacity (ties by lower index).
///
/// Throws NotBigraphicError carrying the is_bigraphic report when no
/// realization exists.
inline BipartiteRealization realize(const DegreePair& pair)
{
    auto report = is_bigraphic(pair);
    if (!report.holds())
        throw NotBigraphicError(std::move(report));

    const std::size_t m = pair.p.size();
    const std::size_t n = pair.q.size();
    BipartiteRealization graph(m, n);

    std::vector<Degree> residual = pair.p;
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), std::size_t{0});

    for (std::size_t col : report.sort_permutations.front().perm) {
        const auto demand = static_cast<std::size_t>(pair.q[col]);
        if (demand == 0)
            break;
        std::ranges::sort(rows, [&](std::size_t x, std::size_t y) {
            return residual[x] != residual[y] ? residual[x] > residual[y] : x < y;
        });
        for (std::size_t k = 0; k < demand; ++k) {
            const std::size_t row = rows[k];
            if (residual[row] == 0)
                throw std::logic_error("greedy realization stalled on a bigraphic pair");
            --residual[row];
            graph.set(row, col);
        }
    }
    if (std::ranges::any_of(residual, [](Degree r) { return r != 0; }))
        throw std::logic_error("greedy realization left residual degree on a bigraphic pair");
    return graph;
}

} // namespace bigraphic

#endif // BIGRAPHIC_GALE_RYSER_HPP
