#include "domp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace domp {

const char* to_string(Strategy s) {
    return s == Strategy::Pool ? "pool" : "callback";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::TimeLimit: return "TimeLimit";
        case SolveStatus::NodeLimit: return "NodeLimit";
        case SolveStatus::Infeasible: return "Infeasible";
    }
    return "?";
}

void BnbConfig::validate() const {
    if (!(time_limit > 0)) throw std::invalid_argument("time limit must be positive");
    if (node_limit <= 0) throw std::invalid_argument("node limit must be positive");
    if (!(integrality_tolerance > 0)) throw std::invalid_argument("integrality tolerance must be positive");
    if (!(relative_gap >= 0)) throw std::invalid_argument("relative gap must be nonnegative");
    if (root_cut_rounds < 0) throw std::invalid_argument("root cut rounds must be nonnegative");
    if (cuts_per_round <= 0) throw std::invalid_argument("cuts per round must be positive");
    if (!(b >= 1.0 && b < 2.0)) throw std::invalid_argument("threshold b must lie in [1, 2)");
}

double gap_percent(double upper, double lower) {
    if (!std::isfinite(upper)) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(lower)) return std::numeric_limits<double>::infinity();
    return std::max(0.0, 100.0 * (upper - lower) / std::max(std::abs(upper), 1e-10));
}

namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
    int var;
    double lo;
    double up;
};

struct Node {
    double bound;
    std::int64_t id;
    std::vector<BoundChange> changes;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;
    }
};

class Search {
public:
    Search(const MilpModel& model, const Hooks& hooks, const BnbConfig& config)
        : model_(model), hooks_(hooks), config_(config), start_(Clock::now()),
          deadline_(start_ + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(config.time_limit))),
          lp_(model) {
        lp_.options().deadline = deadline_;
        report_.original_constraints = model.num_rows();
        for (int j = 0; j < model.num_vars(); ++j)
            if (model.integer[j]) top_priority_ = std::max(top_priority_, model.branch_priority[j]);
    }

    void install_warm_start(std::span<const double> point) {
        if (point.empty()) return;
        if (static_cast<int>(point.size()) != model_.num_vars())
            throw std::invalid_argument("warm start has the wrong number of values");
        for (int j = 0; j < model_.num_vars(); ++j)
            if (point[j] < model_.lower[j] - 1e-9 || point[j] > model_.upper[j] + 1e-9)
                throw std::invalid_argument("warm start violates variable bounds");
        for (const SparseRow& row : model_.rows)
            if (row.violation(point) > 1e-6)
                throw std::invalid_argument("warm start violates a model row");
        report_.upper_bound = model_.objective_value(point);
        report_.incumbent_point.assign(point.begin(), point.end());
    }

    SolveReport run() {
        std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
        open.push(Node{-std::numeric_limits<double>::infinity(), next_id_++, {}});
        bool stopped = false;

        while (!open.empty()) {
            if (open.top().bound >= cutoff()) {
                // Best-bound order: every remaining node is dominated too.
                while (!open.empty()) open.pop();
                break;
            }
            if (report_.nodes >= config_.node_limit) {
                report_.status = SolveStatus::NodeLimit;
                stopped = true;
                break;
            }
            if (Clock::now() > deadline_) {
                report_.status = SolveStatus::TimeLimit;
                stopped = true;
                break;
            }
            Node node = open.top();
            open.pop();
            ++report_.nodes;
            apply(node.changes);
            const bool is_root = report_.nodes == 1;

            std::optional<std::vector<double>> lp_point;
            double lp_value = 0.0;
            if (!process(node, is_root, lp_point, lp_value)) {
                if (timed_out_) {
                    report_.status = SolveStatus::TimeLimit;
                    stopped = true;
                    open.push(std::move(node));
                    break;
                }
            } else if (lp_point) {
                branch(node, *lp_point, std::max(lp_value, node.bound), open);
            }
            if (config_.purge_slack_rows) lp_.purge_rows(model_.num_rows());
            double lower = open.empty() ? report_.upper_bound
                                        : std::min(open.top().bound, report_.upper_bound);
            if (is_root) {
                report_.root_bound = root_bound_;
            }
            record_bounds(lower);
        }

        if (!stopped) {
            report_.status = report_.incumbent_point.empty() ? SolveStatus::Infeasible
                                                             : SolveStatus::Optimal;
            if (report_.status == SolveStatus::Optimal) report_.lower_bound = report_.upper_bound;
        } else {
            double lower = open.empty() ? report_.upper_bound : open.top().bound;
            report_.lower_bound = std::max(report_.lower_bound, std::min(lower, report_.upper_bound));
        }
        finish();
        return std::move(report_);
    }

private:
    double cutoff() const {
        const double ub = report_.upper_bound;
        if (!std::isfinite(ub)) return std::numeric_limits<double>::infinity();
        const double slack = std::max(config_.relative_gap * std::max(std::abs(ub), 1e-10),
                                      1e-9 * std::max(1.0, std::abs(ub)));
        return ub - slack;
    }

    void apply(const std::vector<BoundChange>& changes) {
        for (int var : touched_) lp_.set_bounds(var, model_.lower[var], model_.upper[var]);
        touched_.clear();
        for (const BoundChange& c : changes) {
            lp_.set_bounds(c.var, c.lo, c.up);
            touched_.push_back(c.var);
        }
    }

    bool integral(const std::vector<double>& x) const {
        for (int j = 0; j < model_.num_vars(); ++j) {
            if (!model_.integer[j]) continue;
            if (std::abs(x[j] - std::round(x[j])) > config_.integrality_tolerance) return false;
        }
        return true;
    }

    void add_rows(const std::vector<SparseRow>& rows) {
        for (const SparseRow& row : rows) {
            for (int idx : row.index)
                if (idx < 0 || idx >= model_.num_vars())
                    throw IndexOutOfRange("hook returned a row with an unknown variable");
            lp_.add_row(row);
        }
        report_.cuts += static_cast<std::int64_t>(rows.size());
    }

    /// Solves the node LP, running the hooks. Returns false if the node was
    /// pruned or the solve hit the deadline; on true with a point, the node
    /// must be branched.
    bool process(const Node& node, bool is_root, std::optional<std::vector<double>>& lp_point,
                 double& lp_value) {
        if (!is_root && hooks_.complete_node && complete()) return false;
        int rounds = 0;
        while (true) {
            LpSolution sol = lp_.solve();
            report_.lp_iterations += sol.iterations;
            if (sol.status == LpStatus::IterLimit) {
                if (Clock::now() > deadline_) {
                    timed_out_ = true;
                    return false;
                }
                throw NumericalFailure("LP iteration limit reached");
            }
            if (sol.status == LpStatus::Infeasible) {
                if (is_root) root_bound_ = std::numeric_limits<double>::infinity();
                return false;
            }
            if (is_root) root_bound_ = sol.objective;
            if (std::max(sol.objective, node.bound) >= cutoff()) return false;

            if (integral(sol.x)) {
                std::vector<double> rounded = sol.x;
                for (int j = 0; j < model_.num_vars(); ++j)
                    if (model_.integer[j]) rounded[j] = std::round(rounded[j]);
                if (hooks_.on_integer_candidate) {
                    auto rows = hooks_.on_integer_candidate(rounded);
                    if (!rows.empty()) {
                        add_rows(rows);
                        continue;
                    }
                }
                const double value = model_.objective_value(rounded);
                if (value < report_.upper_bound) {
                    report_.upper_bound = value;
                    report_.incumbent_point = std::move(rounded);
                }
                return false;
            }

            if (is_root && rounds < config_.root_cut_rounds && hooks_.on_root_fractional) {
                auto rows = hooks_.on_root_fractional(sol.x);
                if (!rows.empty()) {
                    add_rows(rows);
                    ++rounds;
                    report_.root_rounds = rounds;
                    continue;
                }
            }
            lp_value = sol.objective;
            lp_point = std::move(sol.x);
            return true;
        }
    }

    /// True if the completion hook solved the node's subproblem.
    bool complete() {
        std::vector<double> lo(model_.num_vars()), up(model_.num_vars());
        for (int j = 0; j < model_.num_vars(); ++j) {
            lo[j] = lp_.lower(j);
            up[j] = lp_.upper(j);
        }
        std::optional<std::vector<double>> point = hooks_.complete_node(lo, up);
        if (!point) return false;
        if (static_cast<int>(point->size()) != model_.num_vars())
            throw std::logic_error("completion returned a point of the wrong size");
        const double value = model_.objective_value(*point);
        if (value < report_.upper_bound) {
            report_.upper_bound = value;
            report_.incumbent_point = std::move(*point);
        }
        return true;
    }

    /// First variable of the top priority class whose bounds still differ.
    int first_free_top() const {
        for (int j = 0; j < model_.num_vars(); ++j)
            if (model_.integer[j] && model_.branch_priority[j] == top_priority_ &&
                lp_.lower(j) < lp_.upper(j))
                return j;
        return -1;
    }

    void branch(const Node& node, const std::vector<double>& x, double bound,
                std::priority_queue<Node, std::vector<Node>, NodeOrder>& open) {
        int chosen = -1;
        int best_priority = std::numeric_limits<int>::min();
        double best_frac = 0.0;
        for (int j = 0; j < model_.num_vars(); ++j) {
            if (!model_.integer[j]) continue;
            const double frac = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
            if (frac <= config_.integrality_tolerance) continue;
            const int prio = model_.branch_priority[j];
            if (prio > best_priority || (prio == best_priority && frac > best_frac)) {
                chosen = j;
                best_priority = prio;
                best_frac = frac;
            }
        }
        if (chosen < 0) throw std::logic_error("branch called on an integral point");
        double v = x[chosen];
        double down_up = std::floor(v), up_lo = std::ceil(v);
        if (hooks_.complete_node && best_priority < top_priority_) {
            if (int free = first_free_top(); free >= 0) {
                chosen = free;
                v = std::round(x[free]);
                if (v < lp_.upper(free)) {
                    down_up = v;
                    up_lo = v + 1.0;
                } else {
                    down_up = v - 1.0;
                    up_lo = v;
                }
            }
        }
        Node down{bound, next_id_++, node.changes};
        down.changes.push_back({chosen, lp_.lower(chosen), down_up});
        Node up{bound, next_id_++, node.changes};
        up.changes.push_back({chosen, up_lo, lp_.upper(chosen)});
        open.push(std::move(down));
        open.push(std::move(up));
    }

    void record_bounds(double lower) {
        if (std::isfinite(lower) || !std::isfinite(report_.lower_bound))
            report_.lower_bound = std::max(report_.lower_bound, lower);
        report_.trace.push_back({report_.nodes, report_.lower_bound, report_.upper_bound});
    }

    void finish() {
        report_.lower_bound = std::min(report_.lower_bound, report_.upper_bound);
        report_.gap_pct = gap_percent(report_.upper_bound, report_.lower_bound);
        report_.gap_root_pct = gap_percent(report_.upper_bound,
                                           std::min(report_.root_bound, report_.upper_bound));
        report_.time_s = std::chrono::duration<double>(Clock::now() - start_).count();
    }

    const MilpModel& model_;
    const Hooks& hooks_;
    const BnbConfig& config_;
    Clock::time_point start_;
    Clock::time_point deadline_;
    DualSimplex lp_;
    SolveReport report_;
    std::vector<int> touched_;
    std::int64_t next_id_ = 0;
    double root_bound_ = -std::numeric_limits<double>::infinity();
    bool timed_out_ = false;
    int top_priority_ = std::numeric_limits<int>::min();
};

}  // namespace

SolveReport branch_and_bound_point(const MilpModel& model, const Hooks& hooks,
                                   std::span<const double> warm_start,
                                   const BnbConfig& config) {
    config.validate();
    Search search(model, hooks, config);
    search.install_warm_start(warm_start);
    return search.run();
}

SolveReport branch_and_bound(const MilpModel& model, const Hooks& hooks,
                             const std::optional<OrderedSolution>& warm_start,
                             const BnbConfig& config) {
    std::vector<double> point;
    if (warm_start) {
        if (model.n <= 0) throw std::invalid_argument("DOMP warm start on a non-DOMP model");
        point = encode_solution(VarLayout(model.n), *warm_start);
        point.resize(model.num_vars(), 0.0);
    }
    return branch_and_bound_point(model, hooks, point, config);
}

}  // namespace domp
