#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "../oracle.hpp"
#include "domp/branch_and_bound.hpp"
#include "domp/models.hpp"
#include "../support.hpp"

namespace domp {
namespace {

using testing::small3;
using testing::tiny2;

TEST(Layout, DecodeIsInverse) {
    const VarLayout layout(4);
    std::set<int> seen;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const int f = layout.x(i, j, k);
                VarIndex v = layout.decode(f);
                EXPECT_EQ(v.kind, VarKind::X);
                EXPECT_EQ(std::tie(v.i, v.j, v.k, v.flat), std::tie(i, j, k, f));
                seen.insert(f);
            }
    for (int j = 0; j < 4; ++j) {
        VarIndex v = layout.decode(layout.y(j));
        EXPECT_EQ(v.kind, VarKind::Y);
        EXPECT_EQ(v.j, j);
        seen.insert(layout.y(j));
    }
    EXPECT_EQ(seen.size(), 68u);
    EXPECT_EQ(*seen.rbegin(), 67);
    EXPECT_THROW(layout.decode(68), IndexOutOfRange);
}

TEST(Base, CountsAtNTwo) {
    Instance inst = tiny2();
    MilpModel m = build_base(inst, RankStructure(inst));
    EXPECT_EQ(m.num_vars(), 10);
    EXPECT_EQ(m.num_rows(), 9);
    EXPECT_EQ(m.base_rows, 9);
}

TEST(Base, CountsAtNTwenty) {
    Instance inst = generate_instance(20, 5, 1);
    RankStructure r(inst);
    EXPECT_EQ(build_base(inst, r).num_rows(), 441);
    EXPECT_EQ(build_relax_model(inst, r).num_rows(), 441);
    EXPECT_EQ(build_woc_model(inst, r).num_rows(), 460);
    MilpModel soc = build_soc_model(inst, r);
    EXPECT_EQ(soc.num_rows(), 8041);
    EXPECT_EQ(soc.order_rows, 19 * 400);
}

TEST(Base, ObjectiveAndBinaries) {
    Instance inst = small3({1, 2, 3});
    MilpModel m = build_base(inst, RankStructure(inst));
    const VarLayout layout(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                EXPECT_EQ(m.objective[layout.x(i, j, k)], inst.lambda(k) * inst.cost(i, j));
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m.objective[layout.y(j)], 0.0);
    for (int v = 0; v < m.num_vars(); ++v) {
        EXPECT_TRUE(m.integer[v]);
        EXPECT_EQ(m.lower[v], 0.0);
        EXPECT_EQ(m.upper[v], 1.0);
    }
}

// Every 0/1 point of the n = 2, p = 1 base model, compared with the
// combinatorial description: one open site, both clients on it, the two
// clients in distinct positions.
TEST(Base, IntegralPointsAreAssignments) {
    Instance inst = tiny2(1);
    MilpModel m = build_base(inst, RankStructure(inst));
    const VarLayout layout(2);
    int feasible = 0;
    for (unsigned mask = 0; mask < (1u << 10); ++mask) {
        std::vector<double> x(10);
        for (int v = 0; v < 10; ++v) x[v] = mask >> v & 1u;
        bool ok = true;
        for (const SparseRow& row : m.rows) ok = ok && row.violation(x) <= 0;

        bool described = false;
        for (int site = 0; site < 2 && !described; ++site)
            for (int first = 0; first < 2 && !described; ++first) {
                std::vector<double> want(10, 0.0);
                want[layout.y(site)] = 1;
                want[layout.x(first, site, 0)] = 1;
                want[layout.x(1 - first, site, 1)] = 1;
                described = want == x;
            }
        EXPECT_EQ(ok, described) << "mask " << mask;
        feasible += ok;
    }
    EXPECT_EQ(feasible, 4);
}

TEST(Soc, RowsAreSetPacking) {
    Instance inst = generate_instance(4, 2, 3);
    RankStructure r(inst);
    MilpModel m = build_soc_model(inst, r);
    EXPECT_EQ(m.order_rows, 3 * 16);
    // Unit coefficients everywhere; the only -1 is y_j in its linking row.
    const VarLayout layout(4);
    auto unit = [&](const SparseRow& row) {
        for (std::size_t t = 0; t < row.index.size(); ++t) {
            const bool is_y = row.index[t] >= layout.num_x();
            EXPECT_EQ(row.value[t], is_y && row.index.size() == 5 ? -1.0 : 1.0);
        }
    };
    for (const SparseRow& row : m.rows) unit(row);
    for (const SparseRow& row : build_relax_model(inst, r).rows) unit(row);
    for (int t = m.base_rows; t < m.num_rows(); ++t) {
        EXPECT_EQ(m.rows[t].sense, Sense::LessEqual);
        EXPECT_EQ(m.rows[t].rhs, 1.0);
        EXPECT_EQ(m.rows[t].index.size(), 17u);
    }
}

TEST(Soc, AtMostFourRowsAtNTwo) {
    Instance inst = tiny2();
    MilpModel m = build_soc_model(inst, RankStructure(inst));
    EXPECT_LE(m.order_rows, 4);
    EXPECT_EQ(enumerate_soc_cuts(2).size(), 4u);
}

TEST(Cut, Boundaries) {
    Instance inst = generate_instance(3, 1, 2);
    RankStructure r(inst);
    const VarLayout layout(3);
    SparseRow first = materialize_cut({0, 1}, r);
    std::set<int> want;
    want.insert(layout.x_pair(r.pair_at(0), 1));
    for (int pair = 0; pair < 9; ++pair) want.insert(layout.x_pair(pair, 0));
    EXPECT_EQ(std::set<int>(first.index.begin(), first.index.end()), want);

    SparseRow last = materialize_cut({8, 1}, r);
    want.clear();
    want.insert(layout.x_pair(r.pair_at(8), 0));
    for (int pair = 0; pair < 9; ++pair) want.insert(layout.x_pair(pair, 1));
    EXPECT_EQ(std::set<int>(last.index.begin(), last.index.end()), want);

    for (int k = 1; k < 3; ++k)
        for (int ell = 0; ell < 9; ++ell) {
            SparseRow row = materialize_cut({ell, k}, r);
            EXPECT_EQ(row.index.size(), 10u);
            EXPECT_EQ(row.rhs, 1.0);
            EXPECT_EQ(row.sense, Sense::LessEqual);
        }
    EXPECT_THROW(materialize_cut({9, 1}, r), IndexOutOfRange);
    EXPECT_THROW(materialize_cut({0, 0}, r), IndexOutOfRange);
    EXPECT_THROW(materialize_cut({0, 3}, r), IndexOutOfRange);
    EXPECT_THROW(materialize_cut({-1, 1}, r), IndexOutOfRange);
}

TEST(Woc, CoefficientsUpToNSquared) {
    Instance inst = generate_instance(5, 2, 8);
    MilpModel m = build_woc_model(inst, RankStructure(inst));
    EXPECT_EQ(m.order_rows, 4);
    double biggest = 0;
    for (int t = m.base_rows; t < m.num_rows(); ++t) {
        EXPECT_EQ(m.rows[t].rhs, 25.0);
        for (double v : m.rows[t].value) {
            EXPECT_EQ(v, std::floor(v));
            EXPECT_GE(v, 1.0);
            biggest = std::max(biggest, v);
        }
    }
    EXPECT_EQ(biggest, 25.0);
}

TEST(Woc, EqualsSumOfStrongRows) {
    Instance inst = generate_instance(3, 1, 5);
    RankStructure r(inst);
    for (int k = 1; k < 3; ++k) {
        std::vector<double> sum(VarLayout(3).num_vars(), 0.0);
        double rhs = 0.0;
        for (int ell = 0; ell < 9; ++ell) {
            SparseRow row = materialize_cut({ell, k}, r);
            for (std::size_t t = 0; t < row.index.size(); ++t) sum[row.index[t]] += row.value[t];
            rhs += row.rhs;
        }
        SparseRow w = woc_row(k, r);
        std::vector<double> dense(sum.size(), 0.0);
        for (std::size_t t = 0; t < w.index.size(); ++t) dense[w.index[t]] += w.value[t];
        EXPECT_EQ(dense, sum);
        EXPECT_EQ(w.rhs, rhs);
    }
}

TEST(Woc, PairwiseValidityAtNThree) {
    Instance inst = generate_instance(3, 2, 4);
    RankStructure r(inst);
    const VarLayout layout(3);
    for (int k = 1; k < 3; ++k) {
        SparseRow row = woc_row(k, r);
        for (int s = 0; s < 9; ++s)
            for (int t = 0; t < 9; ++t) {
                std::vector<double> x(layout.num_vars(), 0.0);
                x[layout.x_pair(r.pair_at(t), k - 1)] = 1;
                x[layout.x_pair(r.pair_at(s), k)] = 1;
                EXPECT_EQ(row.activity(x) <= row.rhs, t < s) << "s=" << s << " t=" << t;
            }
    }
}

TEST(Woc, HandExampleAtNTwo) {
    // Client 0 from site 1 (rank 2) first, client 0 from site 0 (rank 0) second.
    Instance inst = tiny2();
    RankStructure r(inst);
    const VarLayout layout(2);
    std::vector<double> x(layout.num_vars(), 0.0);
    x[layout.x(0, 1, 0)] = 1;
    x[layout.x(0, 0, 1)] = 1;
    SparseRow row = woc_row(1, r);
    EXPECT_EQ(row.activity(x), 7.0);
    EXPECT_GT(row.activity(x), row.rhs);
}

TEST(Relax, WithoutOrderRowsItIsPMedian) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int n = 5 + static_cast<int>(seed % 4);
        Instance inst = generate_instance(n, 2, seed).with_lambda(std::vector<double>(n, 1.0));
        MilpModel m = build_relax_model(inst, RankStructure(inst));
        SolveReport rep = branch_and_bound(m, Hooks{}, std::nullopt, BnbConfig{});
        ASSERT_EQ(rep.status, SolveStatus::Optimal);
        EXPECT_NEAR(rep.upper_bound, oracle::p_median_enum(inst), 1e-6);
    }
}

TEST(Model, AddRowChecksIndices) {
    MilpModel m;
    m.add_var(1, 0, 1, true);
    EXPECT_THROW(m.add_row(SparseRow{{1}, {1.0}, Sense::LessEqual, 1}), IndexOutOfRange);
    EXPECT_THROW(m.add_row(SparseRow{{-1}, {1.0}, Sense::LessEqual, 1}), IndexOutOfRange);
    m.add_row(SparseRow{{0}, {1.0}, Sense::LessEqual, 1});
    EXPECT_EQ(m.num_rows(), 1);
}

TEST(Model, LpExport) {
    Instance inst = tiny2();
    std::ostringstream out;
    write_lp(build_woc_model(inst, RankStructure(inst)), out);
    const std::string lp = out.str();
    for (const char* part : {"Minimize", "Subject To", "Bounds", "Binaries", "End", "x_0_1_1", "y_1"})
        EXPECT_NE(lp.find(part), std::string::npos) << part;
}

}  // namespace
}  // namespace domp
