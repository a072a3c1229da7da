#include "domp/objective.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace domp {

bool OpenSet::contains(int site) const {
    return std::binary_search(sites.begin(), sites.end(), site);
}

double ordered_value(std::span<const double> lambda,
                     std::span<const double> sorted_costs) {
    double value = 0.0;
    for (std::size_t k = 0; k < sorted_costs.size(); ++k)
        value += lambda[k] * sorted_costs[k];
    return value;
}

namespace {

void check_sites(const Instance& instance, const OpenSet& open) {
    if (open.sites.empty()) throw InvalidOpenSet("open set is empty");
    for (std::size_t t = 0; t < open.sites.size(); ++t) {
        int s = open.sites[t];
        if (s < 0 || s >= instance.n())
            throw InvalidOpenSet("site index out of range: " + std::to_string(s));
        if (t > 0 && open.sites[t - 1] >= s)
            throw InvalidOpenSet("open set must be sorted and duplicate-free");
    }
}

}  // namespace

OrderedSolution evaluate_any(const Instance& instance, const OpenSet& open) {
    check_sites(instance, open);
    const int n = instance.n();
    OrderedSolution sol;
    sol.open = open;
    sol.assign.resize(n);
    std::vector<double> assigned(n);
    for (int i = 0; i < n; ++i) {
        int best = open.sites.front();
        for (int s : open.sites)
            if (instance.cost(i, s) < instance.cost(i, best)) best = s;
        sol.assign[i] = best;
        assigned[i] = instance.cost(i, best);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return assigned[a] < assigned[b]; });
    std::vector<double> sorted(n);
    sol.positions.reserve(n);
    for (int k = 0; k < n; ++k) {
        sol.positions.emplace_back(order[k], sol.assign[order[k]]);
        sorted[k] = assigned[order[k]];
    }
    sol.value = ordered_value(instance.lambdas(), sorted);
    return sol;
}

OrderedSolution evaluate(const Instance& instance, const OpenSet& open) {
    if (static_cast<int>(open.sites.size()) != instance.p())
        throw InvalidOpenSet("open set must contain exactly p = " +
                             std::to_string(instance.p()) + " sites");
    return evaluate_any(instance, open);
}

double assignment_value(const Instance& instance, std::span<const int> assign) {
    std::vector<double> costs(assign.size());
    for (std::size_t i = 0; i < assign.size(); ++i)
        costs[i] = instance.cost(static_cast<int>(i), assign[i]);
    std::sort(costs.begin(), costs.end());
    return ordered_value(instance.lambdas(), costs);
}

std::uint64_t binomial(int n, int p) {
    if (p < 0 || p > n) return 0;
    p = std::min(p, n - p);
    std::uint64_t acc = 1;
    for (int t = 1; t <= p; ++t) {
        const auto factor = static_cast<std::uint64_t>(n - p + t);
        if (acc > std::numeric_limits<std::uint64_t>::max() / factor)
            return std::numeric_limits<std::uint64_t>::max();
        acc = acc * factor / static_cast<std::uint64_t>(t);
    }
    return static_cast<std::uint64_t>(acc);
}

BruteForceResult brute_force(const Instance& instance, std::uint64_t subset_limit) {
    const int n = instance.n();
    const int p = instance.p();
    const std::uint64_t count = binomial(n, p);
    if (count > subset_limit)
        throw TooLarge("C(" + std::to_string(n) + "," + std::to_string(p) + ") = " +
                       std::to_string(count) + " subsets exceeds the limit of " +
                       std::to_string(subset_limit));

    BruteForceResult result;
    result.value = std::numeric_limits<double>::infinity();
    std::vector<int> subset(p);
    std::iota(subset.begin(), subset.end(), 0);
    std::vector<double> assigned(n);
    while (true) {
        for (int i = 0; i < n; ++i) {
            double best = instance.cost(i, subset[0]);
            for (int t = 1; t < p; ++t) best = std::min(best, instance.cost(i, subset[t]));
            assigned[i] = best;
        }
        std::sort(assigned.begin(), assigned.end());
        double v = ordered_value(instance.lambdas(), assigned);
        ++result.subsets;
        // Strict comparison keeps the lexicographically first optimum.
        if (v < result.value) {
            result.value = v;
            result.best.sites = subset;
        }
        int t = p - 1;
        while (t >= 0 && subset[t] == n - p + t) --t;
        if (t < 0) break;
        ++subset[t];
        for (int u = t + 1; u < p; ++u) subset[u] = subset[u - 1] + 1;
    }
    return result;
}

}  // namespace domp
