#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "domp/instance.hpp"

namespace domp {

class InvalidOpenSet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Brute force refused: more subsets than the configured limit.
class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sorted, duplicate-free list of open sites.
struct OpenSet {
    std::vector<int> sites;

    bool contains(int site) const;
    bool operator==(const OpenSet&) const = default;
};

/// A complete DOMP solution: open sites, client assignment and the sorted
/// allocation sequence. positions[k] = (client, site) whose cost occupies
/// sorted slot k.
struct OrderedSolution {
    OpenSet open;
    std::vector<int> assign;
    std::vector<std::pair<int, int>> positions;
    double value = 0.0;
};

/// Sum_k lambda_k * sorted_costs[k], accumulated in k order. Every objective
/// value in this library goes through this function so that equal sorted
/// vectors give bit-identical values.
double ordered_value(std::span<const double> lambda,
                     std::span<const double> sorted_costs);

/// Assigns each client to its cheapest open site (ties: lowest site) and
/// sorts clients by assigned cost (ties: lowest client). Requires |J| = p.
OrderedSolution evaluate(const Instance& instance, const OpenSet& open);

/// Same as evaluate but accepts any nonempty site set; used by heuristics
/// that grow partial solutions.
OrderedSolution evaluate_any(const Instance& instance, const OpenSet& open);

/// Ordered objective of an arbitrary (possibly non-closest) assignment.
double assignment_value(const Instance& instance, std::span<const int> assign);

struct BruteForceResult {
    double value = 0.0;
    OpenSet best;
    std::uint64_t subsets = 0;
};

inline constexpr std::uint64_t kDefaultSubsetLimit = 10'000'000;

/// Number of p-subsets of n, saturating at UINT64_MAX.
std::uint64_t binomial(int n, int p);

/// Exact optimum by enumerating all p-subsets in lexicographic order. The
/// reported witness is the lexicographically smallest optimal set.
BruteForceResult brute_force(const Instance& instance,
                             std::uint64_t subset_limit = kDefaultSubsetLimit);

}  // namespace domp
