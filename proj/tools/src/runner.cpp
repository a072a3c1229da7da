#include "domp_tools/runner.hpp"

namespace domp::tools {

const char* to_string(Method m) {
    switch (m) {
        case Method::Soc: return "soc";
        case Method::Woc: return "woc";
        case Method::Bc: return "bc";
        case Method::RowGen: return "rowgen";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text) {
    if (text == "soc") return Method::Soc;
    if (text == "woc") return Method::Woc;
    if (text == "bc") return Method::Bc;
    if (text == "rowgen") return Method::RowGen;
    return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view text) {
    if (text == "pool") return Strategy::Pool;
    if (text == "callback") return Strategy::Callback;
    return std::nullopt;
}

SolveReport run_method(const Instance& instance, const SolveSpec& spec,
                       const MethodConfig& config) {
    MethodConfig cfg = config;
    cfg.bnb.strategy = spec.strategy;
    switch (spec.method) {
        case Method::Soc: return solve_full(instance, FullFormulation::Soc, cfg);
        case Method::Woc: return solve_full(instance, FullFormulation::Woc, cfg);
        case Method::Bc: return solve_branch_and_cut(instance, spec.strategy, cfg);
        case Method::RowGen: return solve_row_generation(instance, spec.strategy, spec.b, cfg);
    }
    throw std::logic_error("unknown method");
}

}  // namespace domp::tools
