#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domp/models.hpp"
#include "domp/objective.hpp"
#include "domp/simplex.hpp"

namespace domp {

enum class Strategy { Pool, Callback };

const char* to_string(Strategy s);

struct BnbConfig {
    double time_limit = 3600.0;  ///< seconds
    std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
    double integrality_tolerance = 1e-6;
    double relative_gap = 1e-6;
    int root_cut_rounds = 50;
    int cuts_per_round = 500;
    Strategy strategy = Strategy::Callback;
    /// Threshold for integral candidates, in [1, 2).
    double b = 1.0;
    /// After each node, drop hook rows whose logical variable is basic from
    /// the LP. Separation re-adds them if an integral candidate needs them.
    bool purge_slack_rows = true;

    /// Throws std::invalid_argument if a limit is not positive or b is out
    /// of range.
    void validate() const;
};

/// Separation callbacks. Each receives the current LP point (flat, one value
/// per model variable) and returns rows to append to the model; an empty
/// result means "nothing violated". Either may be empty (no-op).
struct Hooks {
    using Separator = std::function<std::vector<SparseRow>(std::span<const double>)>;

    /// Called at the root node on fractional LP solutions, once per cut round.
    Separator on_root_fractional;
    /// Called at every node whose LP solution is integral, with the point
    /// rounded to exact 0/1. Rows returned reject the candidate; they are
    /// added globally and the node is re-solved.
    Separator on_integer_candidate;

    using Completion = std::function<std::optional<std::vector<double>>(
        std::span<const double> lower, std::span<const double> upper)>;
    /// Called with the variable bounds of every non-root node before its LP
    /// is solved. A returned point must be optimal over the node's
    /// subproblem; it is offered as incumbent and the node is closed. When
    /// set, nodes whose highest-priority class is integral but not fixed
    /// branch on the first free variable of that class.
    Completion complete_node;
};

enum class SolveStatus { Optimal, TimeLimit, NodeLimit, Infeasible };

const char* to_string(SolveStatus s);

struct BoundSample {
    std::int64_t node;
    double lower;
    double upper;
};

struct SolveReport {
    SolveStatus status = SolveStatus::Infeasible;
    double upper_bound = std::numeric_limits<double>::infinity();
    double lower_bound = -std::numeric_limits<double>::infinity();
    /// LP bound at the end of root processing (after all root cut rounds).
    double root_bound = -std::numeric_limits<double>::infinity();
    /// 100 (UB - root bound) / |UB| with the final UB.
    double gap_root_pct = std::numeric_limits<double>::infinity();
    double gap_pct = std::numeric_limits<double>::infinity();
    std::int64_t nodes = 0;
    std::int64_t cuts = 0;
    int original_constraints = 0;
    double time_s = 0.0;
    std::int64_t lp_iterations = 0;
    int root_rounds = 0;

    /// Flat values of the incumbent (empty if none was found).
    std::vector<double> incumbent_point;
    /// Decoded incumbent; filled by the DOMP solution methods.
    std::optional<OrderedSolution> incumbent;
    /// (LB, UB) after every processed node.
    std::vector<BoundSample> trace;
};

/// Relative gap in percent, 100 (UB - LB) / max(|UB|, 1e-10), clamped at 0.
double gap_percent(double upper, double lower);

/// LP-based branch-and-bound with best-bound node selection. Branches on the
/// most fractional variable of the highest branch priority (ties: lowest id).
/// Root: alternate LP solves and on_root_fractional until no rows come back
/// or root_cut_rounds is reached. Rows from hooks are global.
///
/// The warm start, when given, must be a DOMP solution (model.n > 0) and
/// installs the initial upper bound.
SolveReport branch_and_bound(const MilpModel& model, const Hooks& hooks,
                             const std::optional<OrderedSolution>& warm_start,
                             const BnbConfig& config);

/// Same engine with the warm start given as a flat point (empty: none), for
/// models that are not DOMP formulations.
SolveReport branch_and_bound_point(const MilpModel& model, const Hooks& hooks,
                                   std::span<const double> warm_start,
                                   const BnbConfig& config);

}  // namespace domp
