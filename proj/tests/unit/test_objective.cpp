#include <gtest/gtest.h>

#include "../oracle.hpp"
#include "domp/objective.hpp"
#include "../support.hpp"

namespace domp {
namespace {

using testing::small3;

TEST(Evaluate, HandExample) {
    OrderedSolution s = evaluate(small3(), OpenSet{{1}});
    EXPECT_EQ(s.value, 7.0);
    EXPECT_EQ(s.assign, (std::vector<int>{1, 1, 1}));
    ASSERT_EQ(s.positions.size(), 3u);
    EXPECT_EQ(s.positions[0], (std::pair<int, int>{1, 1}));
    EXPECT_EQ(s.positions[1], (std::pair<int, int>{2, 1}));
    EXPECT_EQ(s.positions[2], (std::pair<int, int>{0, 1}));
}

TEST(Evaluate, CenterWeights) {
    EXPECT_EQ(evaluate(small3({0, 0, 1}), OpenSet{{1}}).value, 4.0);
}

TEST(Evaluate, ZeroWeights) {
    Instance inst = generate_instance(6, 2, 3).with_lambda(std::vector<double>(6, 0.0));
    EXPECT_EQ(evaluate(inst, OpenSet{{0, 5}}).value, 0.0);
}

TEST(Evaluate, RejectsBadSets) {
    EXPECT_THROW(evaluate(small3(), OpenSet{{}}), InvalidOpenSet);
    EXPECT_THROW(evaluate(small3(), OpenSet{{0, 1}}), InvalidOpenSet);
    EXPECT_THROW(evaluate(small3(), OpenSet{{3}}), InvalidOpenSet);
    EXPECT_THROW(evaluate(small3({1, 1, 1}, 2), OpenSet{{1, 1}}), InvalidOpenSet);
}

TEST(Evaluate, AssignmentTiesGoToLowestSite) {
    Instance inst("tie", 3, 2, {5, 5, 1, 2, 2, 9, 1, 1, 1}, {1, 2, 3});
    OrderedSolution s = evaluate(inst, OpenSet{{0, 1}});
    EXPECT_EQ(s.assign, (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(s.value, 1 * 1 + 2 * 2 + 3 * 5.0);
}

TEST(Evaluate, ValueIgnoresTieBreaks) {
    // Alternative closest-site choices with equal costs keep the value.
    Instance inst("tie", 3, 2, {4, 4, 9, 7, 7, 9, 4, 4, 9}, {3, 1, 2});
    OrderedSolution s = evaluate(inst, OpenSet{{0, 1}});
    std::vector<int> other{1, 1, 0};
    EXPECT_EQ(assignment_value(inst, other), s.value);
}

TEST(BruteForce, HandExample) {
    BruteForceResult r = brute_force(small3());
    EXPECT_EQ(r.value, 7.0);
    EXPECT_EQ(r.best, OpenSet{{1}});
    EXPECT_EQ(r.subsets, 3u);
}

TEST(BruteForce, AllSitesOpen) {
    Instance inst = generate_instance(6, 6, 4);
    std::vector<double> m(6);
    for (int i = 0; i < 6; ++i) {
        m[i] = inst.cost(i, 0);
        for (int j = 1; j < 6; ++j) m[i] = std::min(m[i], inst.cost(i, j));
    }
    std::sort(m.begin(), m.end());
    double v = 0.0;
    for (int k = 0; k < 6; ++k) v += inst.lambda(k) * m[k];
    EXPECT_NEAR(brute_force(inst).value, v, 1e-9);
}

TEST(BruteForce, SingleClient) {
    Instance inst("one", 1, 1, {7}, {2.5});
    EXPECT_EQ(brute_force(inst).value, 17.5);
}

TEST(BruteForce, MatchesIndependentEnumeration) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = generate_instance(7, 1 + static_cast<int>(seed % 5), seed);
        EXPECT_NEAR(brute_force(inst).value, oracle::ordered_median_enum(inst), 1e-9);
    }
}

TEST(BruteForce, WitnessIsLexicographicallySmallest) {
    // Every set has the same value when all costs are equal.
    Instance inst("flat", 5, 2, std::vector<double>(25, 3.0), {1, 1, 1, 1, 1});
    EXPECT_EQ(brute_force(inst).best, (OpenSet{{0, 1}}));
}

TEST(BruteForce, SpecialWeights) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance base = generate_instance(8, 3, seed);
        Instance median = base.with_lambda(std::vector<double>(8, 1.0));
        std::vector<double> center(8, 0.0);
        center.back() = 1.0;
        EXPECT_EQ(brute_force(median).value, oracle::p_median_enum(median));
        EXPECT_EQ(brute_force(base.with_lambda(center)).value, oracle::p_center_enum(base));
    }
}

TEST(BruteForce, ScalingCosts) {
    Instance inst = generate_instance(7, 3, 9);
    std::vector<double> scaled(inst.costs().begin(), inst.costs().end());
    for (double& c : scaled) c *= 4.0;
    Instance big("big", 7, 3, scaled, std::vector<double>(inst.lambdas().begin(), inst.lambdas().end()));
    BruteForceResult a = brute_force(inst), b = brute_force(big);
    EXPECT_NEAR(b.value, 4.0 * a.value, 1e-9 * b.value);
    EXPECT_EQ(a.best, b.best);
}

TEST(BruteForce, GuardAndBinomial) {
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(5, 0), 1u);
    EXPECT_EQ(binomial(200, 100), UINT64_MAX);
    EXPECT_THROW(brute_force(generate_instance(30, 15, 1)), TooLarge);
    EXPECT_THROW(brute_force(generate_instance(8, 4, 1), 10), TooLarge);
}

}  // namespace
}  // namespace domp
