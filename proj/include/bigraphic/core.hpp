#ifndef BIGRAPHIC_CORE_HPP
#define BIGRAPHIC_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bigraphic
{

using Degree = std::int64_t;

// Input caps. With these, every sum we form stays far below 2^63.
inline constexpr Degree max_degree_value = 1'000'000'000;
inline constexpr std::size_t max_sequence_length = 1'000'000;

class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct Interval
{
    Degree lo = 0;
    Degree hi = 0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Per-vertex degree ranges for one side of the bipartition.
///
/// Construction validates: nonempty, lo <= hi, 0 <= values <= max_degree_value,
/// length <= max_sequence_length. A constructed sequence is always valid.
class IntervalSequence
{
public:
    IntervalSequence() = default;

    explicit IntervalSequence(std::vector<Interval> items) : items_(std::move(items))
    {
        if (items_.empty())
            throw InputError("interval sequence must not be empty");
        if (items_.size() > max_sequence_length)
            throw InputError("interval sequence longer than " + std::to_string(max_sequence_length));
        for (std::size_t i = 0; i < items_.size(); ++i) {
            const auto [lo, hi] = items_[i];
            if (lo < 0 || hi < 0)
                throw InputError("interval " + std::to_string(i) + " has a negative bound");
            if (hi > max_degree_value)
                throw InputError("interval " + std::to_string(i) + " exceeds the degree cap");
            if (lo > hi)
                throw InputError("interval " + std::to_string(i) + " has lo > hi");
        }
    }

    IntervalSequence(std::initializer_list<Interval> items)
        : IntervalSequence(std::vector<Interval>(items))
    {}

    std::size_t size() const noexcept { return items_.size(); }
    const Interval& operator[](std::size_t i) const noexcept { return items_[i]; }
    std::span<const Interval> items() const noexcept { return items_; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    std::vector<Degree> lows() const
    {
        std::vector<Degree> out(items_.size());
        std::ranges::transform(items_, out.begin(), &Interval::lo);
        return out;
    }

    std::vector<Degree> highs() const
    {
        std::vector<Degree> out(items_.size());
        std::ranges::transform(items_, out.begin(), &Interval::hi);
        return out;
    }

    Degree sum_lo() const noexcept
    {
        Degree s = 0;
        for (const auto& it : items_) s += it.lo;
        return s;
    }

    Degree sum_hi() const noexcept
    {
        Degree s = 0;
        for (const auto& it : items_) s += it.hi;
        return s;
    }

    bool degenerate() const noexcept
    {
        return std::ranges::all_of(items_, [](const Interval& it) { return it.lo == it.hi; });
    }

    friend bool operator==(const IntervalSequence&, const IntervalSequence&) = default;

private:
    std::vector<Interval> items_;
};

/// The interval pair (L1; L2): L1 bounds the X side (a_i, b_i), L2 the Y side
/// (c_j, d_j). Kept in caller order.
struct IntervalPair
{
    IntervalSequence left;
    IntervalSequence right;

    std::size_t m() const noexcept { return left.size(); }
    std::size_t n() const noexcept { return right.size(); }

    IntervalPair swapped() const { return {right, left}; }

    friend bool operator==(const IntervalPair&, const IntervalPair&) = default;
};

/// A concrete degree pair (P; Q).
struct DegreePair
{
    std::vector<Degree> p;
    std::vector<Degree> q;

    DegreePair swapped() const { return {q, p}; }

    friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

inline void validate_degrees(std::span<const Degree> seq, std::string_view name)
{
    if (seq.size() > max_sequence_length)
        throw InputError(std::string(name) + " longer than " + std::to_string(max_sequence_length));
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0)
            throw InputError(std::string(name) + "[" + std::to_string(i) + "] is negative");
        if (seq[i] > max_degree_value)
            throw InputError(std::string(name) + "[" + std::to_string(i) + "] exceeds the degree cap");
    }
}

inline void validate(const DegreePair& pair)
{
    validate_degrees(pair.p, "P");
    validate_degrees(pair.q, "Q");
}

/// True when every p_i lies in L1's intervals, every q_j in L2's, and the sums match.
inline bool is_valid_pair(const IntervalPair& ip, const DegreePair& pair) noexcept
{
    if (pair.p.size() != ip.m() || pair.q.size() != ip.n())
        return false;
    Degree sp = 0, sq = 0;
    for (std::size_t i = 0; i < ip.m(); ++i) {
        if (pair.p[i] < ip.left[i].lo || pair.p[i] > ip.left[i].hi)
            return false;
        sp += pair.p[i];
    }
    for (std::size_t j = 0; j < ip.n(); ++j) {
        if (pair.q[j] < ip.right[j].lo || pair.q[j] > ip.right[j].hi)
            return false;
        sq += pair.q[j];
    }
    return sp == sq;
}

inline Degree total(std::span<const Degree> seq) noexcept
{
    return std::accumulate(seq.begin(), seq.end(), Degree{0});
}

// ---------------------------------------------------------------------------
// Check reports

enum class Verdict { holds, fails };

/// Which inequality family a violation belongs to.
enum class Family {
    gale_ryser,        // (1)
    sufficient_left,   // (2)
    sufficient_right,  // (3)
    necessary_left,    // (4)
    necessary_right,   // (5)
    existence_first,   // prefixes of sorted c against b
    existence_second,  // prefixes of sorted a against d
    sum_equality,
};

inline constexpr std::string_view family_tag(Family f) noexcept
{
    switch (f) {
    case Family::gale_ryser: return "(1)";
    case Family::sufficient_left: return "(2)";
    case Family::sufficient_right: return "(3)";
    case Family::necessary_left: return "(4)";
    case Family::necessary_right: return "(5)";
    case Family::existence_first: return "T1.2-first";
    case Family::existence_second: return "T1.2-second";
    case Family::sum_equality: return "sum-equality";
    }
    return "?";
}

/// Name of the prefix-length variable each family ranges over.
inline constexpr std::string_view family_index_name(Family f) noexcept
{
    switch (f) {
    case Family::gale_ryser: return "r";
    case Family::sufficient_left:
    case Family::necessary_left: return "k";
    case Family::sufficient_right:
    case Family::necessary_right: return "l";
    case Family::existence_first: return "t";
    case Family::existence_second: return "s";
    case Family::sum_equality: return "index";
    }
    return "index";
}

inline Family family_from_tag(std::string_view tag)
{
    for (auto f : {Family::gale_ryser, Family::sufficient_left, Family::sufficient_right,
                   Family::necessary_left, Family::necessary_right, Family::existence_first,
                   Family::existence_second, Family::sum_equality}) {
        if (family_tag(f) == tag)
            return f;
    }
    throw InputError("unknown inequality family '" + std::string(tag) + "'");
}

/// One failing inequality: lhs > rhs at prefix length `index` (1-based).
///
/// For sum-equality, index is 0, lhs is the larger total and rhs the smaller.
struct Violation
{
    Family family;
    std::size_t index;
    Degree lhs;
    Degree rhs;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// A permutation applied internally before checking. perm[k] is the input
/// position that landed at sorted position k.
struct SortPermutation
{
    std::string label;
    std::vector<std::size_t> perm;

    friend bool operator==(const SortPermutation&, const SortPermutation&) = default;
};

struct CheckReport
{
    Verdict verdict = Verdict::holds;
    std::vector<Violation> violations;
    std::vector<SortPermutation> sort_permutations;
    // Only meaningful for the exact check: every interval on both sides is a single point.
    bool degenerate_forced = false;

    bool holds() const noexcept { return verdict == Verdict::holds; }

    void add(Violation v)
    {
        violations.push_back(v);
        verdict = Verdict::fails;
    }

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

// ---------------------------------------------------------------------------
// Sorting and conjugate sums

/// Stable descending sort; perm[k] is the original index of sorted[k].
inline std::pair<std::vector<Degree>, std::vector<std::size_t>>
sort_desc_with_perm(std::span<const Degree> seq)
{
    std::vector<std::size_t> perm(seq.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::ranges::stable_sort(perm, [&](std::size_t x, std::size_t y) { return seq[x] > seq[y]; });
    std::vector<Degree> sorted(seq.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        sorted[k] = seq[perm[k]];
    return {std::move(sorted), std::move(perm)};
}

/// sum_i min(seq_i, r). Order independent.
inline Degree sum_min(std::span<const Degree> seq, Degree r) noexcept
{
    Degree s = 0;
    for (Degree v : seq) s += std::min(v, r);
    return s;
}

/// Prefix sums of the descending-sorted sequence: element k-1 is the sum of the k largest.
inline std::vector<Degree> prefix_sums_desc(std::span<const Degree> seq)
{
    auto sorted = sort_desc_with_perm(seq).first;
    std::vector<Degree> out(sorted.size());
    std::partial_sum(sorted.begin(), sorted.end(), out.begin());
    return out;
}

/// sum_min(seq, r) for every r in [0, r_max], via the conjugate partition:
/// sum_min(seq, r) = sum_{j=1..r} #{i : seq_i >= j}. Linear in |seq| + r_max.
class ConjugateSums
{
public:
    ConjugateSums(std::span<const Degree> seq, std::size_t r_max) : table_(r_max + 1, 0)
    {
        // counts[v] = #{i : min(seq_i, r_max) == v}
        std::vector<Degree> counts(r_max + 1, 0);
        for (Degree v : seq)
            ++counts[static_cast<std::size_t>(std::min<Degree>(v, static_cast<Degree>(r_max)))];
        Degree at_least = 0;
        std::vector<Degree> conj(r_max + 1, 0);
        for (std::size_t j = r_max; j >= 1; --j) {
            at_least += counts[j];
            conj[j] = at_least;
        }
        for (std::size_t r = 1; r <= r_max; ++r)
            table_[r] = table_[r - 1] + conj[r];
    }

    Degree operator()(std::size_t r) const noexcept { return table_[r]; }
    std::size_t r_max() const noexcept { return table_.size() - 1; }

private:
    std::vector<Degree> table_;
};

/// One prefix inequality: sum of the `index` largest entries (lhs) against
/// the conjugate min-sum plus slack (rhs).
struct PrefixTerm
{
    std::size_t index;
    Degree lhs;
    Degree rhs;

    bool holds() const noexcept { return lhs <= rhs; }
    friend bool operator==(const PrefixTerm&, const PrefixTerm&) = default;
};

/// Every term of sum_{i<=k} sorted_desc(lhs_seq)_i <= sum_min(rhs_seq, k) + slack
/// for k in [1, |lhs_seq|], passing or not.
inline std::vector<PrefixTerm> prefix_terms(std::span<const Degree> lhs_seq,
                                            std::span<const Degree> rhs_seq, Degree slack = 0)
{
    const auto sorted = sort_desc_with_perm(lhs_seq).first;
    ConjugateSums rhs(rhs_seq, sorted.size());
    std::vector<PrefixTerm> out;
    out.reserve(sorted.size());
    Degree prefix = 0;
    for (std::size_t k = 1; k <= sorted.size(); ++k) {
        prefix += sorted[k - 1];
        out.push_back({k, prefix, rhs(k) + slack});
    }
    return out;
}

namespace detail
{

// Records every failing prefix of prefix_terms under `family` and returns the
// permutation that sorted lhs_seq.
inline std::vector<std::size_t> dominance(CheckReport& report, Family family,
                                          std::span<const Degree> lhs_seq,
                                          std::span<const Degree> rhs_seq, Degree slack = 0)
{
    auto [sorted, perm] = sort_desc_with_perm(lhs_seq);
    ConjugateSums rhs(rhs_seq, sorted.size());
    Degree prefix = 0;
    for (std::size_t k = 1; k <= sorted.size(); ++k) {
        prefix += sorted[k - 1];
        const Degree bound = rhs(k) + slack;
        if (prefix > bound)
            report.add({family, k, prefix, bound});
    }
    return std::move(perm);
}

} // namespace detail

} // namespace bigraphic

#endif // BIGRAPHIC_CORE_HPP
