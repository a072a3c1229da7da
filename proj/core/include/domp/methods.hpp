#pragma once

#include <cstdint>
#include <stdexcept>

#include "domp/branch_and_bound.hpp"
#include "domp/instance.hpp"
#include "domp/objective.hpp"

namespace domp {

/// The complete SOC formulation has Theta(n^3) rows; refused above the guard.
class SizeGuard : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FullFormulation { Soc, Woc };

struct MethodConfig {
    BnbConfig bnb;
    bool use_warm_start = true;
    int heuristic_iterations = 50;
    double heuristic_alpha = 0.3;
    std::uint64_t heuristic_seed = 1;
    /// Largest n accepted by solve_full.
    int size_guard = 40;
    /// Close nodes whose open set is decided by the y bounds with the value
    /// of closest assignment, branching on free y before any x.
    bool complete_fixed_sites = true;
};

/// Branch-and-bound on the complete formulation, no separation hooks.
SolveReport solve_full(const Instance& instance, FullFormulation formulation,
                       const MethodConfig& config = {});

/// Cut-and-branch: weak order formulation, strong order constraints separated
/// on fractional root points only. Integral candidates are feasible by the
/// weak order rows; that is asserted (std::logic_error) rather than separated.
SolveReport solve_branch_and_cut(const Instance& instance, Strategy strategy,
                                 const MethodConfig& config = {});

/// Row generation: the order-free relaxation, strong order constraints added
/// on fractional root points (threshold 1) and on every integral candidate
/// (threshold b). Throws ThresholdOutOfRange unless 1 <= b < 2.
SolveReport solve_row_generation(const Instance& instance, Strategy strategy, double b,
                                 const MethodConfig& config = {});

/// Greedy randomized construction (restricted candidate list of sites by
/// objective after adding the site, width alpha) followed by first-improving
/// swap local search, repeated `iterations` times. The deterministic greedy
/// solution (alpha = 0, no local search) is always a candidate, so
/// iterations = 0 returns it.
OrderedSolution warm_start_heuristic(const Instance& instance, int iterations, double alpha,
                                     std::uint64_t seed);

/// Greedy construction only; alpha = 0 makes it deterministic.
OpenSet greedy_open_set(const Instance& instance, double alpha, std::uint64_t seed);

/// First-improving swap local search from a starting set.
OrderedSolution swap_local_search(const Instance& instance, OpenSet start);

struct Certificate {
    bool feasible = false;
    bool ordered = false;
    double max_soc_lhs = 0.0;
};

/// Checks the report's incumbent point against the base rows and every strong
/// order constraint (direct sums), plus the ordered feasibility check.
Certificate certify_incumbent(const Instance& instance, const SolveReport& report);

}  // namespace domp
