#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bigraphic/gale_ryser.hpp"
#include "oracles.hpp"

using namespace bigraphic;

TEST(IsBigraphic, NonRealizablePairFailsAtSecondPrefix)
{
    const auto report = is_bigraphic({{1, 3}, {2, 2}});
    EXPECT_FALSE(report.holds());
    ASSERT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.violations[0], (Violation{Family::gale_ryser, 2, 4, 3}));
}

TEST(IsBigraphic, Examples)
{
    EXPECT_TRUE(is_bigraphic({{0, 0}, {0, 0}}).holds());
    EXPECT_TRUE(is_bigraphic({{2, 2}, {2, 2}}).holds());

    const DegreePair pair{{2, 1}, {2, 1}};
    EXPECT_TRUE(oracle::realizable(pair));
    EXPECT_TRUE(is_bigraphic(pair).holds());
}

TEST(IsBigraphic, ReportsSumMismatch)
{
    const auto report = is_bigraphic({{2, 2}, {1, 1}});
    EXPECT_FALSE(report.holds());
    ASSERT_FALSE(report.violations.empty());
    EXPECT_EQ(report.violations[0], (Violation{Family::sum_equality, 0, 4, 2}));
    for (const auto& v : report.violations) EXPECT_GT(v.lhs, v.rhs);
}

TEST(IsBigraphic, ReportsEveryFailingPrefixInSortedCoordinates)
{
    // Q sorted = (3, 3, 0); P = (1, 1, 1, 1, 1, 1)
    const auto report = is_bigraphic({{1, 1, 1, 1, 1, 1}, {0, 3, 3}});
    ASSERT_EQ(report.sort_permutations.size(), 1u);
    EXPECT_EQ(report.sort_permutations[0].label, "Q");
    EXPECT_EQ(report.sort_permutations[0].perm, (std::vector<std::size_t>{1, 2, 0}));
    EXPECT_TRUE(report.holds());

    const auto tight = is_bigraphic({{2, 2, 2}, {3, 3, 0}});
    // r=1: 3 <= 3; r=2: 6 <= 6; r=3: 6 <= 6
    EXPECT_TRUE(tight.holds());

    const auto worse = is_bigraphic({{3, 2, 1}, {3, 3, 0}});
    // r=1: 3 <= 3; r=2: 6 > 5; r=3: 6 = 6
    ASSERT_EQ(worse.violations.size(), 1u);
    EXPECT_EQ(worse.violations[0], (Violation{Family::gale_ryser, 2, 6, 5}));
}

TEST(IsBigraphic, AgreesWithMatrixEnumeration)
{
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto realizable = oracle::realizable_degrees(m, n);
            for (const auto& p : oracle::box(IntervalSequence(std::vector<Interval>(m, {0, 3}))))
                for (const auto& q : oracle::box(IntervalSequence(std::vector<Interval>(n, {0, 3})))) {
                    const bool expected = realizable.count({p, q}) > 0;
                    ASSERT_EQ(is_bigraphic({p, q}).holds(), expected);
                    ASSERT_EQ(bigraphic::bigraphic(p, q), expected);
                }
        }
}

TEST(IsBigraphic, PermutationAndSideSymmetry)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        DegreePair pair = (trial % 2) ? oracle::random_graph_degrees(rng, 1 + rng() % 6, 1 + rng() % 6)
                                      : DegreePair{oracle::random_degrees(rng, 1 + rng() % 6, 6),
                                                   oracle::random_degrees(rng, 1 + rng() % 6, 6)};
        const bool verdict = is_bigraphic(pair).holds();
        EXPECT_EQ(is_bigraphic(pair.swapped()).holds(), verdict);
        auto shuffled = pair;
        std::shuffle(shuffled.p.begin(), shuffled.p.end(), rng);
        std::shuffle(shuffled.q.begin(), shuffled.q.end(), rng);
        EXPECT_EQ(is_bigraphic(shuffled).holds(), verdict);
    }
}

TEST(Realize, CompleteBipartite)
{
    const auto g = realize({{2, 2}, {2, 2}});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(g.at(i, j));
}

TEST(Realize, ThrowsWithReport)
{
    try {
        realize({{1, 3}, {2, 2}});
        FAIL() << "expected NotBigraphicError";
    } catch (const NotBigraphicError& e) {
        EXPECT_EQ(e.report(), is_bigraphic({{1, 3}, {2, 2}}));
        EXPECT_EQ(e.report().violations.at(0).index, 2u);
    }
}

TEST(Realize, DeterministicTieBreaking)
{
    const auto g = realize({{2, 1}, {2, 1}});
    using E = std::pair<std::size_t, std::size_t>;
    EXPECT_EQ(g.edges(), (std::vector<E>{{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_EQ(g.row_sums(), (std::vector<Degree>{2, 1}));
    EXPECT_EQ(g.column_sums(), (std::vector<Degree>{2, 1}));
}

TEST(Realize, SucceedsExactlyWhenBigraphic)
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 3000; ++trial) {
        DegreePair pair = (trial % 2) ? oracle::random_graph_degrees(rng, 1 + rng() % 7, 1 + rng() % 7)
                                      : DegreePair{oracle::random_degrees(rng, 1 + rng() % 5, 5),
                                                   oracle::random_degrees(rng, 1 + rng() % 5, 5)};
        const bool holds = is_bigraphic(pair).holds();
        try {
            const auto g = realize(pair);
            EXPECT_TRUE(holds);
            EXPECT_EQ(g.degrees(), pair);
        } catch (const NotBigraphicError&) {
            EXPECT_FALSE(holds);
        }
    }
}

TEST(Realize, EmptySides)
{
    const auto g = realize({{0, 0, 0}, {0}});
    EXPECT_EQ(g.m(), 3u);
    EXPECT_EQ(g.n(), 1u);
    EXPECT_TRUE(g.edges().empty());
}
