#include <algorithm>
#include <limits>
#include <random>

#include "domp/methods.hpp"

namespace domp {

OpenSet greedy_open_set(const Instance& instance, double alpha, std::uint64_t seed) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in [0, 1]");
    const int n = instance.n();
    std::mt19937_64 rng(seed);
    OpenSet open;
    std::vector<bool> used(n, false);
    std::vector<std::pair<double, int>> scored;
    while (static_cast<int>(open.sites.size()) < instance.p()) {
        scored.clear();
        for (int s = 0; s < n; ++s) {
            if (used[s]) continue;
            OpenSet trial = open;
            trial.sites.insert(std::upper_bound(trial.sites.begin(), trial.sites.end(), s), s);
            scored.emplace_back(evaluate_any(instance, trial).value, s);
        }
        std::sort(scored.begin(), scored.end());
        const double lo = scored.front().first;
        const double hi = scored.back().first;
        const double limit = lo + alpha * (hi - lo);
        std::size_t width = 0;
        while (width < scored.size() && scored[width].first <= limit) ++width;
        std::size_t pick = 0;
        if (width > 1) pick = std::uniform_int_distribution<std::size_t>(0, width - 1)(rng);
        const int site = scored[pick].second;
        used[site] = true;
        open.sites.insert(std::upper_bound(open.sites.begin(), open.sites.end(), site), site);
    }
    return open;
}

OrderedSolution swap_local_search(const Instance& instance, OpenSet start) {
    OrderedSolution best = evaluate(instance, start);
    const int n = instance.n();
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t t = 0; t < best.open.sites.size() && !improved; ++t) {
            for (int s = 0; s < n && !improved; ++s) {
                if (best.open.contains(s)) continue;
                OpenSet trial = best.open;
                trial.sites.erase(trial.sites.begin() + static_cast<std::ptrdiff_t>(t));
                trial.sites.insert(std::upper_bound(trial.sites.begin(), trial.sites.end(), s), s);
                OrderedSolution candidate = evaluate(instance, trial);
                if (candidate.value < best.value) {
                    best = std::move(candidate);
                    improved = true;
                }
            }
        }
    }
    return best;
}

OrderedSolution warm_start_heuristic(const Instance& instance, int iterations, double alpha,
                                     std::uint64_t seed) {
    if (iterations < 0) throw InvalidParams("iterations must be nonnegative");
    OrderedSolution best = evaluate(instance, greedy_open_set(instance, 0.0, seed));
    std::mt19937_64 seeds(seed);
    for (int it = 0; it < iterations; ++it) {
        OpenSet start = greedy_open_set(instance, alpha, seeds());
        OrderedSolution candidate = swap_local_search(instance, std::move(start));
        if (candidate.value < best.value) best = std::move(candidate);
    }
    return best;
}

}  // namespace domp
