#include "domp/methods.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "domp/models.hpp"
#include "domp/separation.hpp"
#include "domp/strategy.hpp"

namespace domp {

namespace {

std::optional<OrderedSolution> warm_start_for(const Instance& instance, const MethodConfig& config) {
    if (!config.use_warm_start) return std::nullopt;
    return warm_start_heuristic(instance, config.heuristic_iterations, config.heuristic_alpha,
                                config.heuristic_seed);
}

/// Replaces the engine's flat incumbent value with the canonical ordered
/// objective of its open set.
void decode_incumbent(const Instance& instance, SolveReport& report) {
    if (report.incumbent_point.empty()) return;
    const VarLayout layout(instance.n());
    OpenSet open;
    for (int j = 0; j < instance.n(); ++j)
        if (report.incumbent_point[layout.y(j)] > 0.5) open.sites.push_back(j);
    OrderedSolution sol = evaluate(instance, open);
    // The engine value is the same quantity summed in another order.
    report.upper_bound = sol.value;
    report.lower_bound = std::min(report.lower_bound, report.upper_bound);
    if (report.status == SolveStatus::Optimal) report.lower_bound = report.upper_bound;
    report.gap_pct = gap_percent(report.upper_bound, report.lower_bound);
    report.gap_root_pct =
        gap_percent(report.upper_bound, std::min(report.root_bound, report.upper_bound));
    report.incumbent = std::move(sol);
}

/// With every x bound untouched and the open set pinned down by the y
/// bounds (p forced open, or only p left closable), closest assignment in
/// rank order is optimal because the weights are nonnegative.
Hooks::Completion fixed_site_completion(const Instance& instance) {
    return [&instance](std::span<const double> lo,
                       std::span<const double> up) -> std::optional<std::vector<double>> {
        const VarLayout layout(instance.n());
        for (int v = 0; v < layout.num_x(); ++v)
            if (lo[v] != 0.0 || up[v] != 1.0) return std::nullopt;
        OpenSet forced, allowed;
        for (int j = 0; j < instance.n(); ++j) {
            if (lo[layout.y(j)] > 0.5) forced.sites.push_back(j);
            if (up[layout.y(j)] > 0.5) allowed.sites.push_back(j);
        }
        const auto p = static_cast<std::size_t>(instance.p());
        if (forced.sites.size() > p || allowed.sites.size() < p) return std::nullopt;
        if (forced.sites.size() == p) return encode_solution(layout, evaluate(instance, forced));
        if (allowed.sites.size() == p) return encode_solution(layout, evaluate(instance, allowed));
        return std::nullopt;
    };
}

SolveReport run(const Instance& instance, const MilpModel& model, Hooks hooks,
                const MethodConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    auto warm = warm_start_for(instance, config);
    if (config.complete_fixed_sites) hooks.complete_node = fixed_site_completion(instance);
    SolveReport report = branch_and_bound(model, hooks, warm, config.bnb);
    decode_incumbent(instance, report);
    report.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

SolveReport solve_full(const Instance& instance, FullFormulation formulation,
                       const MethodConfig& config) {
    if (instance.n() > config.size_guard)
        throw SizeGuard("n = " + std::to_string(instance.n()) + " exceeds the size guard of " +
                        std::to_string(config.size_guard) + " for complete formulations");
    const RankStructure ranks(instance);
    MilpModel model = formulation == FullFormulation::Soc ? build_soc_model(instance, ranks)
                                                          : build_woc_model(instance, ranks);
    return run(instance, model, Hooks{}, config);
}

SolveReport solve_branch_and_cut(const Instance& instance, Strategy strategy,
                                 const MethodConfig& config) {
    const RankStructure ranks(instance);
    MilpModel model = build_woc_model(instance, ranks);
    Hooks hooks = strategy == Strategy::Pool
                      ? pool_strategy(enumerate_soc_cuts(instance.n()), ranks, config.bnb)
                      : callback_strategy(ranks, config.bnb);
    const int n = instance.n();
    hooks.on_integer_candidate = [n, ranks](std::span<const double> x) -> std::vector<SparseRow> {
        if (!check_ordered_feasibility(Point::from_flat(n, x).rounded(), ranks))
            throw std::logic_error("integral point of the weak order formulation is not ordered");
        return {};
    };
    return run(instance, model, hooks, config);
}

SolveReport solve_row_generation(const Instance& instance, Strategy strategy, double b,
                                 const MethodConfig& config) {
    if (!(b >= 1.0 && b < 2.0))
        throw ThresholdOutOfRange("threshold b must lie in [1, 2), got " + std::to_string(b));
    MethodConfig local = config;
    local.bnb.b = b;
    local.bnb.strategy = strategy;
    const RankStructure ranks(instance);
    MilpModel model = build_relax_model(instance, ranks);
    Hooks hooks = strategy == Strategy::Pool
                      ? pool_strategy(enumerate_soc_cuts(instance.n()), ranks, local.bnb)
                      : callback_strategy(ranks, local.bnb);
    SolveReport report = run(instance, model, hooks, local);
    if (!report.incumbent_point.empty() &&
        !check_ordered_feasibility(Point::from_flat(instance.n(), report.incumbent_point).rounded(),
                                   ranks))
        throw std::logic_error("row generation accepted an unordered incumbent");
    return report;
}

Certificate certify_incumbent(const Instance& instance, const SolveReport& report) {
    Certificate cert;
    if (report.incumbent_point.empty()) return cert;
    const RankStructure ranks(instance);
    const Point point = Point::from_flat(instance.n(), report.incumbent_point);
    cert.max_soc_lhs = 0.0;
    for (int k = 1; k < instance.n(); ++k)
        for (int ell = 0; ell < ranks.num_pairs(); ++ell)
            cert.max_soc_lhs = std::max(cert.max_soc_lhs, lhs_direct(point, ell, k, ranks));
    bool base_ok = true;
    for (const SparseRow& row : build_base(instance, ranks).rows)
        base_ok = base_ok && row.violation(report.incumbent_point) <= 1e-9;
    cert.feasible = base_ok && cert.max_soc_lhs <= 1.0 + 1e-9;
    cert.ordered = point.is_integral && check_ordered_feasibility(point, ranks);
    return cert;
}

}  // namespace domp
