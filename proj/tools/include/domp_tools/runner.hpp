#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "domp/methods.hpp"

namespace domp::tools {

enum class Method { Soc, Woc, Bc, RowGen };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view text);
std::optional<Strategy> parse_strategy(std::string_view text);

/// One solver configuration as named on the command line.
struct SolveSpec {
    Method method = Method::RowGen;
    Strategy strategy = Strategy::Callback;
    double b = 1.0;

    bool uses_strategy() const { return method == Method::Bc || method == Method::RowGen; }
    bool uses_b() const { return method == Method::RowGen; }
};

SolveReport run_method(const Instance& instance, const SolveSpec& spec,
                       const MethodConfig& config);

}  // namespace domp::tools
