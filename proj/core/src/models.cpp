#include "domp/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "domp/text.hpp"

namespace domp {

double SparseRow::activity(std::span<const double> x) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < index.size(); ++t) sum += value[t] * x[index[t]];
    return sum;
}

double SparseRow::violation(std::span<const double> x) const {
    double a = activity(x);
    switch (sense) {
        case Sense::LessEqual: return a - rhs;
        case Sense::GreaterEqual: return rhs - a;
        case Sense::Equal: return std::abs(a - rhs);
    }
    return 0.0;
}

VarIndex VarLayout::decode(int flat) const {
    if (flat < 0 || flat >= num_vars())
        throw IndexOutOfRange("flat variable id out of range: " + std::to_string(flat));
    if (flat >= num_x()) return {VarKind::Y, -1, flat - num_x(), -1, flat};
    int k = flat / (n_ * n_);
    int pair = flat % (n_ * n_);
    return {VarKind::X, pair / n_, pair % n_, k, flat};
}

std::string to_string(Formulation f) {
    switch (f) {
        case Formulation::Soc: return "DOMP_SOC";
        case Formulation::Woc: return "DOMP_WOC";
        case Formulation::Relax: return "DOMP_relax";
        case Formulation::Custom: return "custom";
    }
    return "?";
}

int MilpModel::add_var(double cost, double lo, double up, bool is_integer, int priority) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(up);
    integer.push_back(is_integer);
    branch_priority.push_back(priority);
    return num_vars() - 1;
}

void MilpModel::add_row(SparseRow row) {
    if (row.index.size() != row.value.size())
        throw std::invalid_argument("row index/value length mismatch");
    for (int idx : row.index)
        if (idx < 0 || idx >= num_vars())
            throw IndexOutOfRange("row references unknown variable " + std::to_string(idx));
    rows.push_back(std::move(row));
}

double MilpModel::objective_value(std::span<const double> x) const {
    double v = 0.0;
    for (int j = 0; j < num_vars(); ++j) v += objective[j] * x[j];
    return v;
}

MilpModel build_base(const Instance& instance, const RankStructure& ranks) {
    const int n = instance.n();
    if (ranks.n() != n) throw std::invalid_argument("rank structure does not match instance");
    const VarLayout layout(n);

    MilpModel model;
    model.n = n;
    model.objective.reserve(layout.num_vars());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                model.add_var(instance.lambda(k) * instance.cost(i, j), 0.0, 1.0, true, 0);
    for (int j = 0; j < n; ++j) model.add_var(0.0, 0.0, 1.0, true, 1);

    // (2) each client takes exactly one (site, position)
    for (int i = 0; i < n; ++i) {
        SparseRow row{{}, {}, Sense::Equal, 1.0};
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                row.index.push_back(layout.x(i, j, k));
                row.value.push_back(1.0);
            }
        std::sort(row.index.begin(), row.index.end());
        model.add_row(std::move(row));
    }
    // (3) each position holds exactly one allocation
    for (int k = 0; k < n; ++k) {
        SparseRow row{{}, {}, Sense::Equal, 1.0};
        for (int pair = 0; pair < n * n; ++pair) {
            row.index.push_back(layout.x_pair(pair, k));
            row.value.push_back(1.0);
        }
        model.add_row(std::move(row));
    }
    // (4) allocation only to open sites
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SparseRow row{{}, {}, Sense::LessEqual, 0.0};
            for (int k = 0; k < n; ++k) {
                row.index.push_back(layout.x(i, j, k));
                row.value.push_back(1.0);
            }
            row.index.push_back(layout.y(j));
            row.value.push_back(-1.0);
            model.add_row(std::move(row));
        }
    // (5) exactly p open sites
    {
        SparseRow row{{}, {}, Sense::Equal, static_cast<double>(instance.p())};
        for (int j = 0; j < n; ++j) {
            row.index.push_back(layout.y(j));
            row.value.push_back(1.0);
        }
        model.add_row(std::move(row));
    }
    model.base_rows = model.num_rows();
    return model;
}

SparseRow materialize_cut(const SocCut& cut, const RankStructure& ranks) {
    const int n = ranks.n();
    const int pairs = n * n;
    if (cut.ell < 0 || cut.ell >= pairs || cut.k < 1 || cut.k >= n)
        throw IndexOutOfRange("SOC index out of range: ell=" + std::to_string(cut.ell) +
                              " k=" + std::to_string(cut.k));
    const VarLayout layout(n);
    SparseRow row{{}, {}, Sense::LessEqual, 1.0};
    row.index.reserve(pairs + 1);
    // Position k-1 block precedes the position k block in flat order.
    for (int r = cut.ell; r < pairs; ++r) row.index.push_back(layout.x_pair(ranks.pair_at(r), cut.k - 1));
    for (int r = 0; r <= cut.ell; ++r) row.index.push_back(layout.x_pair(ranks.pair_at(r), cut.k));
    std::sort(row.index.begin(), row.index.end());
    row.value.assign(row.index.size(), 1.0);
    return row;
}

std::vector<SocCut> enumerate_soc_cuts(int n) {
    std::vector<SocCut> cuts;
    cuts.reserve(static_cast<std::size_t>(n - 1) * n * n);
    for (int k = 1; k < n; ++k)
        for (int ell = 0; ell < n * n; ++ell) cuts.push_back({ell, k});
    return cuts;
}

MilpModel build_soc_model(const Instance& instance, const RankStructure& ranks) {
    MilpModel model = build_base(instance, ranks);
    model.formulation = Formulation::Soc;
    const int n = instance.n();
    // Rows (ell, k) and (ell + 1, k) always differ: the pair of rank ell + 1
    // enters the position-k sum. The check below only guards that claim.
    int previous = -1;
    model.rows.reserve(model.rows.size() + static_cast<std::size_t>(n - 1) * n * n);
    for (const SocCut& cut : enumerate_soc_cuts(n)) {
        SparseRow row = materialize_cut(cut, ranks);
        if (previous >= 0 && model.rows[previous].index == row.index) continue;
        model.add_row(std::move(row));
        previous = model.num_rows() - 1;
        ++model.order_rows;
    }
    return model;
}

SparseRow woc_row(int k, const RankStructure& ranks) {
    const int n = ranks.n();
    const int pairs = n * n;
    if (k < 1 || k >= n) throw IndexOutOfRange("WOC position out of range");
    const VarLayout layout(n);
    // Summing the SOC rows (ell, k) over all ell: a pair of rank r lies in the
    // position-k part of every row with ell >= r (pairs - r of them) and in
    // the position-(k-1) part of every row with ell <= r (r + 1 of them).
    SparseRow row{{}, {}, Sense::LessEqual, static_cast<double>(pairs)};
    row.index.reserve(2 * pairs);
    for (int pair = 0; pair < pairs; ++pair) {
        row.index.push_back(layout.x_pair(pair, k - 1));
        row.value.push_back(ranks.rank_of_pair(pair) + 1.0);
    }
    for (int pair = 0; pair < pairs; ++pair) {
        row.index.push_back(layout.x_pair(pair, k));
        row.value.push_back(static_cast<double>(pairs - ranks.rank_of_pair(pair)));
    }
    return row;
}

MilpModel build_woc_model(const Instance& instance, const RankStructure& ranks) {
    MilpModel model = build_base(instance, ranks);
    model.formulation = Formulation::Woc;
    for (int k = 1; k < instance.n(); ++k) {
        model.add_row(woc_row(k, ranks));
        ++model.order_rows;
    }
    return model;
}

MilpModel build_relax_model(const Instance& instance, const RankStructure& ranks) {
    MilpModel model = build_base(instance, ranks);
    model.formulation = Formulation::Relax;
    return model;
}

std::vector<double> encode_solution(const VarLayout& layout, const OrderedSolution& sol) {
    std::vector<double> x(layout.num_vars(), 0.0);
    for (std::size_t k = 0; k < sol.positions.size(); ++k) {
        auto [client, site] = sol.positions[k];
        x[layout.x(client, site, static_cast<int>(k))] = 1.0;
    }
    for (int s : sol.open.sites) x[layout.y(s)] = 1.0;
    return x;
}

namespace {

std::string var_name(const MilpModel& model, int flat) {
    if (model.n > 0 && flat < VarLayout(model.n).num_vars()) {
        VarIndex v = VarLayout(model.n).decode(flat);
        if (v.kind == VarKind::Y) return "y_" + std::to_string(v.j);
        return "x_" + std::to_string(v.i) + "_" + std::to_string(v.j) + "_" + std::to_string(v.k);
    }
    return "v" + std::to_string(flat);
}

void write_terms(std::ostream& out, const MilpModel& model, std::span<const int> idx,
                 std::span<const double> val) {
    int on_line = 0;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (val[t] == 0.0) continue;
        out << (val[t] < 0 ? " - " : " + ") << format_double(std::abs(val[t])) << ' '
            << var_name(model, idx[t]);
        if (++on_line == 8) {
            out << "\n   ";
            on_line = 0;
        }
    }
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
    out << "\\ " << to_string(model.formulation) << "\nMinimize\n obj:";
    std::vector<int> all(model.num_vars());
    std::iota(all.begin(), all.end(), 0);
    write_terms(out, model, all, model.objective);
    out << "\nSubject To\n";
    for (int r = 0; r < model.num_rows(); ++r) {
        const SparseRow& row = model.rows[r];
        out << " c" << r << ':';
        write_terms(out, model, row.index, row.value);
        out << (row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::Equal ? " = " : " >= ")
            << format_double(row.rhs) << '\n';
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_vars(); ++j)
        out << ' ' << format_double(model.lower[j]) << " <= " << var_name(model, j)
            << " <= " << format_double(model.upper[j]) << '\n';
    out << "Binaries\n";
    for (int j = 0; j < model.num_vars(); ++j)
        if (model.integer[j]) out << ' ' << var_name(model, j) << '\n';
    out << "End\n";
}

}  // namespace domp
