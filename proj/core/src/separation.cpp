#include "domp/separation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace domp {

Point Point::from_flat(int n, std::span<const double> flat, double tol) {
    const VarLayout layout(n);
    if (flat.size() < static_cast<std::size_t>(layout.num_vars()))
        throw std::invalid_argument("flat vector too short for n = " + std::to_string(n));
    Point p;
    p.n = n;
    p.x.assign(flat.begin(), flat.begin() + layout.num_x());
    p.y.assign(flat.begin() + layout.num_x(), flat.begin() + layout.num_vars());
    auto near_binary = [tol](double v) { return std::abs(v - std::round(v)) <= tol; };
    p.is_integral = std::all_of(p.x.begin(), p.x.end(), near_binary) &&
                    std::all_of(p.y.begin(), p.y.end(), near_binary);
    return p;
}

Point Point::rounded() const {
    Point p = *this;
    auto snap = [](double v) { return v >= 0.5 ? 1.0 : 0.0; };
    std::transform(p.x.begin(), p.x.end(), p.x.begin(), snap);
    std::transform(p.y.begin(), p.y.end(), p.y.begin(), snap);
    p.is_integral = true;
    return p;
}

namespace {

void check_threshold(double b) {
    if (!(b >= 1.0 && b < 2.0))
        throw ThresholdOutOfRange("threshold b must lie in [1, 2), got " + std::to_string(b));
}

void check_point(const Point& point, const RankStructure& ranks) {
    if (point.n != ranks.n() ||
        point.x.size() != static_cast<std::size_t>(point.n) * point.n * point.n)
        throw std::invalid_argument("point does not match the rank structure");
}

}  // namespace

double lhs_direct(const Point& point, int ell, int k, const RankStructure& ranks) {
    const int pairs = ranks.num_pairs();
    if (ell < 0 || ell >= pairs || k < 1 || k >= ranks.n())
        throw IndexOutOfRange("SOC index out of range: ell=" + std::to_string(ell) +
                              " k=" + std::to_string(k));
    double lhs = 0.0;
    for (int r = 0; r <= ell; ++r) lhs += point.x_at(ranks.pair_at(r), k);
    for (int r = ell; r < pairs; ++r) lhs += point.x_at(ranks.pair_at(r), k - 1);
    return lhs;
}

SeparationResult separate_soc(const Point& point, const RankStructure& ranks, double b,
                              const SeparationOptions& options) {
    check_threshold(b);
    check_point(point, ranks);
    SeparationResult result;
    const int n = ranks.n();
    if (n < 2) return result;
    const int pairs = ranks.num_pairs();
    const double cutoff = b + kViolationTolerance;
    auto x = [&](int rank, int position) { return point.x_at(ranks.pair_at(rank), position); };

    auto visit = [&](double lhs, int ell, int k) {
        ++result.stats.checks;
        if (options.trace_telescoping) {
            double err = std::abs(lhs - lhs_direct(point, ell, k, ranks));
            result.stats.max_telescoping_error = std::max(result.stats.max_telescoping_error, err);
        }
        if (lhs > cutoff) {
            result.cuts.push_back({ell, k});
            result.lhs_values.push_back(lhs);
        }
    };

    // Row (0, 1): every position-0 variable plus the cheapest pair at position 1.
    double lhs = 0.0;
    for (int r = 0; r < pairs; ++r) lhs += x(r, 0);
    lhs += x(0, 1);
    visit(lhs, 0, 1);

    for (int k = 1; k < n; ++k) {
        if (k > 1) {
            // From (pairs - 1, k - 1) to (0, k): the position-(k-1) sum becomes
            // the full lower block, so drop the last pair of position k-2 and
            // pick up the first pair of position k.
            lhs += x(0, k) - x(pairs - 1, k - 2);
            ++result.stats.lhs_updates;
            visit(lhs, 0, k);
        }
        for (int ell = 1; ell < pairs; ++ell) {
            lhs += x(ell, k) - x(ell - 1, k - 1);
            ++result.stats.lhs_updates;
            visit(lhs, ell, k);
        }
    }
    return result;
}

SeparationResult separate_soc_naive(const Point& point, const RankStructure& ranks, double b) {
    check_threshold(b);
    check_point(point, ranks);
    SeparationResult result;
    const double cutoff = b + kViolationTolerance;
    for (int k = 1; k < ranks.n(); ++k)
        for (int ell = 0; ell < ranks.num_pairs(); ++ell) {
            double lhs = lhs_direct(point, ell, k, ranks);
            ++result.stats.checks;
            if (lhs > cutoff) {
                result.cuts.push_back({ell, k});
                result.lhs_values.push_back(lhs);
            }
        }
    return result;
}

std::vector<int> position_ranks(const Point& point, const RankStructure& ranks) {
    check_point(point, ranks);
    if (!point.is_integral) throw NotIntegral("ordered feasibility needs an integral point");
    const int n = ranks.n();
    std::vector<int> result(n, -1);
    for (int k = 0; k < n; ++k)
        for (int pair = 0; pair < ranks.num_pairs(); ++pair) {
            if (point.x_at(pair, k) < 0.5) continue;
            if (result[k] >= 0)
                throw std::invalid_argument("position " + std::to_string(k) + " holds two allocations");
            result[k] = ranks.rank_of_pair(pair);
        }
    for (int k = 0; k < n; ++k)
        if (result[k] < 0) throw std::invalid_argument("position " + std::to_string(k) + " is empty");
    return result;
}

bool check_ordered_feasibility(const Point& point, const RankStructure& ranks) {
    auto r = position_ranks(point, ranks);
    return std::is_sorted(r.begin(), r.end());
}

}  // namespace domp
