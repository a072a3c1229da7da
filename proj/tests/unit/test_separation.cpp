#include <gtest/gtest.h>

#include "domp/objective.hpp"
#include "domp/separation.hpp"
#include "../support.hpp"

namespace domp {
namespace {

using testing::random_base_point;
using testing::random_fractional_point;
using testing::tiny2;

Point zero_point(int n) {
    Point p;
    p.n = n;
    p.x.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    p.y.assign(n, 0.0);
    p.is_integral = true;
    return p;
}

/// x(0,1) at position 0 (rank 2), x(0,0) at position 1 (rank 0).
Point violating_tiny2() {
    Point p = zero_point(2);
    const VarLayout layout(2);
    p.x[layout.x(0, 1, 0)] = 1;
    p.x[layout.x(0, 0, 1)] = 1;
    return p;
}

Point encode_point(int n, const OrderedSolution& sol) {
    return Point::from_flat(n, encode_solution(VarLayout(n), sol));
}

TEST(LhsDirect, ZeroPoint) {
    Instance inst = generate_instance(4, 2, 1);
    RankStructure r(inst);
    Point p = zero_point(4);
    for (int k = 1; k < 4; ++k)
        for (int ell = 0; ell < 16; ++ell) EXPECT_EQ(lhs_direct(p, ell, k, r), 0.0);
    EXPECT_THROW(lhs_direct(p, 16, 1, r), IndexOutOfRange);
    EXPECT_THROW(lhs_direct(p, 0, 0, r), IndexOutOfRange);
}

TEST(LhsDirect, HandExample) {
    RankStructure r(tiny2());
    EXPECT_EQ(lhs_direct(violating_tiny2(), 0, 1, r), 2.0);
}

// Every ordered integral solution at n = 3 (any p, any assignment into the
// open set, clients sorted by rank) satisfies every strong order row.
TEST(LhsDirect, OrderedSolutionsSatisfyAllRows) {
    Instance inst = generate_instance(3, 1, 6);
    RankStructure r(inst);
    int checked = 0;
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<int> open;
        for (int j = 0; j < 3; ++j)
            if (mask >> j & 1u) open.push_back(j);
        const int m = static_cast<int>(open.size());
        for (int code = 0; code < m * m * m; ++code) {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0, c = code; i < 3; ++i, c /= m) pairs.push_back({i, open[c % m]});
            std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
                return r.rank(a.first, a.second) < r.rank(b.first, b.second);
            });
            Point p = zero_point(3);
            const VarLayout layout(3);
            for (int k = 0; k < 3; ++k) p.x[layout.x(pairs[k].first, pairs[k].second, k)] = 1;
            for (int j : open) p.y[j] = 1;
            for (int k = 1; k < 3; ++k)
                for (int ell = 0; ell < 9; ++ell) EXPECT_LE(lhs_direct(p, ell, k, r), 1.0);
            EXPECT_TRUE(check_ordered_feasibility(p, r));
            EXPECT_TRUE(separate_soc(p, r).cuts.empty());
            ++checked;
        }
    }
    EXPECT_EQ(checked, 3 * 1 + 3 * 8 + 27);
}

TEST(Separate, HandExample) {
    RankStructure r(tiny2());
    SeparationResult res = separate_soc(violating_tiny2(), r, 1.0);
    ASSERT_FALSE(res.cuts.empty());
    EXPECT_EQ(res.cuts.front(), (SocCut{0, 1}));
    EXPECT_EQ(res.lhs_values.front(), 2.0);
    EXPECT_EQ(res.stats.checks, 4);
}

TEST(Separate, ZeroPointHasNoCuts) {
    Instance inst = generate_instance(5, 2, 1);
    RankStructure r(inst);
    EXPECT_TRUE(separate_soc(zero_point(5), r).cuts.empty());
    EXPECT_TRUE(separate_soc_naive(zero_point(5), r).cuts.empty());
}

TEST(Separate, RejectsThresholdOutsideRange) {
    RankStructure r(tiny2());
    EXPECT_THROW(separate_soc(zero_point(2), r, 0.99), ThresholdOutOfRange);
    EXPECT_THROW(separate_soc(zero_point(2), r, 2.0), ThresholdOutOfRange);
    EXPECT_THROW(separate_soc_naive(zero_point(2), r, 2.5), ThresholdOutOfRange);
    EXPECT_NO_THROW(separate_soc(zero_point(2), r, 1.999));
}

void expect_same(const SeparationResult& a, const SeparationResult& b) {
    ASSERT_EQ(a.cuts, b.cuts);
    ASSERT_EQ(a.lhs_values.size(), b.lhs_values.size());
    for (std::size_t t = 0; t < a.lhs_values.size(); ++t)
        EXPECT_NEAR(a.lhs_values[t], b.lhs_values[t], 1e-9);
    EXPECT_EQ(a.stats.checks, b.stats.checks);
}

TEST(Separate, MatchesNaiveOnRandomPoints) {
    std::mt19937_64 rng(42);
    for (int n : {2, 3, 4, 6}) {
        Instance inst = generate_instance(n, std::max(1, n / 2), 100 + n);
        RankStructure r(inst);
        for (int t = 0; t < 60; ++t) {
            Point frac = random_fractional_point(n, inst.p(), rng);
            Point integ = random_base_point(n, inst.p(), rng);
            for (const Point* p : {&frac, &integ}) {
                SeparationResult fast = separate_soc(*p, r);
                SeparationResult slow = separate_soc_naive(*p, r);
                expect_same(fast, slow);
                EXPECT_EQ(fast.stats.checks, static_cast<std::int64_t>(n - 1) * n * n);
                for (std::size_t c = 0; c < fast.cuts.size(); ++c)
                    EXPECT_GT(fast.lhs_values[c], 1.0 + kViolationTolerance);
            }
        }
    }
}

TEST(Separate, CutsAscendInPositionThenRank) {
    std::mt19937_64 rng(3);
    Instance inst = generate_instance(5, 2, 3);
    RankStructure r(inst);
    for (int t = 0; t < 20; ++t) {
        auto cuts = separate_soc(random_fractional_point(5, 2, rng), r).cuts;
        EXPECT_TRUE(std::is_sorted(cuts.begin(), cuts.end(), [](SocCut a, SocCut b) {
            return a.k != b.k ? a.k < b.k : a.ell < b.ell;
        }));
    }
}

TEST(Separate, TelescopingTraceIsExact) {
    std::mt19937_64 rng(8);
    Instance inst = generate_instance(6, 2, 8);
    RankStructure r(inst);
    for (int t = 0; t < 10; ++t) {
        SeparationOptions opt;
        opt.trace_telescoping = true;
        SeparationResult res = separate_soc(random_fractional_point(6, 2, rng), r, 1.0, opt);
        EXPECT_LT(res.stats.max_telescoping_error, 1e-9);
        EXPECT_EQ(res.stats.checks, 5 * 36);
        EXPECT_EQ(res.stats.lhs_updates, 5 * 36 - 1);
    }
}

bool scan_order(SocCut a, SocCut b) { return a.k != b.k ? a.k < b.k : a.ell < b.ell; }

TEST(Separate, ThresholdMonotone) {
    std::mt19937_64 rng(5);
    Instance inst = generate_instance(5, 2, 5);
    RankStructure r(inst);
    const std::vector<double> bs{1.0, 1.1, 1.3, 1.9};
    for (int t = 0; t < 40; ++t) {
        Point p = t % 2 ? random_fractional_point(5, 2, rng) : random_base_point(5, 2, rng);
        std::vector<std::vector<SocCut>> found;
        for (double b : bs) found.push_back(separate_soc(p, r, b).cuts);
        for (std::size_t a = 1; a < bs.size(); ++a)
            EXPECT_TRUE(std::includes(found[a - 1].begin(), found[a - 1].end(), found[a].begin(),
                                      found[a].end(), scan_order));
    }
}

TEST(Separate, IntegralPointsIgnoreThreshold) {
    std::mt19937_64 rng(13);
    Instance inst = generate_instance(5, 2, 13);
    RankStructure r(inst);
    for (int t = 0; t < 100; ++t) {
        Point p = random_base_point(5, 2, rng);
        const bool clean = separate_soc(p, r, 1.0).cuts.empty();
        EXPECT_EQ(clean, check_ordered_feasibility(p, r));
        for (double b : {1.1, 1.3, 1.9})
            if (separate_soc(p, r, b).cuts.empty()) EXPECT_TRUE(clean);
    }
}

TEST(Ordered, PositionRanks) {
    Instance inst = generate_instance(3, 2, 1);
    RankStructure r(inst);
    OrderedSolution sol = evaluate(inst, OpenSet{{0, 2}});
    Point p = encode_point(3, sol);
    auto ranks = position_ranks(p, r);
    EXPECT_TRUE(std::is_sorted(ranks.begin(), ranks.end()));
    EXPECT_TRUE(check_ordered_feasibility(p, r));
}

TEST(Ordered, ViolatingPoint) {
    RankStructure r(tiny2());
    Point p = violating_tiny2();
    EXPECT_EQ(position_ranks(p, r), (std::vector<int>{2, 0}));
    EXPECT_FALSE(check_ordered_feasibility(p, r));
    EXPECT_GE(separate_soc(p, r).cuts.size(), 1u);
}

TEST(Ordered, RejectsFractional) {
    std::mt19937_64 rng(1);
    Instance inst = generate_instance(4, 2, 1);
    RankStructure r(inst);
    EXPECT_THROW(check_ordered_feasibility(random_fractional_point(4, 2, rng), r), NotIntegral);
}

TEST(Ordered, AllOpenSelfServiceZero) {
    Instance base = generate_instance(6, 6, 2, true);
    std::vector<double> lambda{1, 2, 3, 4, 5, 6};
    Instance inst = base.with_lambda(lambda);
    OrderedSolution sol = evaluate(inst, OpenSet{{0, 1, 2, 3, 4, 5}});
    EXPECT_EQ(sol.value, 0.0);
    EXPECT_TRUE(check_ordered_feasibility(encode_point(6, sol), RankStructure(inst)));
}

TEST(PointIo, FromFlatAndRounding) {
    std::vector<double> flat(VarLayout(2).num_vars(), 0.0);
    flat[0] = 1.0 - 1e-8;
    Point p = Point::from_flat(2, flat);
    EXPECT_TRUE(p.is_integral);
    flat[1] = 0.4;
    p = Point::from_flat(2, flat);
    EXPECT_FALSE(p.is_integral);
    Point q = p.rounded();
    EXPECT_TRUE(q.is_integral);
    EXPECT_EQ(q.x[0], 1.0);
    EXPECT_EQ(q.x[1], 0.0);
    EXPECT_THROW(Point::from_flat(2, std::vector<double>(3)), std::invalid_argument);
}

}  // namespace
}  // namespace domp
