#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "domp/instance.hpp"
#include "domp_tools/runner.hpp"

namespace domp::tools {

/// Solve output. Indices are 0-based; positions is a list of [client, site]
/// pairs in sorted-cost order.
nlohmann::json report_to_json(const Instance& instance, const SolveSpec& spec,
                              const SolveReport& report);

struct SolutionCheck {
    bool feasible = true;
    double value = 0.0;  ///< recomputed from positions
    std::vector<std::string> problems;
};

/// Checks a solution document against the instance: open count, assignment
/// to open sites, one position per client, nondecreasing costs along the
/// positions and the stated value.
SolutionCheck check_solution(const Instance& instance, const nlohmann::json& doc);

}  // namespace domp::tools
