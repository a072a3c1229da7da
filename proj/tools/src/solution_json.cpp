#include "domp_tools/solution_json.hpp"

#include <cmath>
#include <set>

#include "domp/text.hpp"

namespace domp::tools {

using nlohmann::json;

namespace {

json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace

json report_to_json(const Instance& instance, const SolveSpec& spec, const SolveReport& report) {
    json doc;
    doc["instance"] = instance.name();
    doc["n"] = instance.n();
    doc["p"] = instance.p();
    doc["method"] = to_string(spec.method);
    doc["strategy"] = spec.uses_strategy() ? json(to_string(spec.strategy)) : json(nullptr);
    doc["b"] = spec.uses_b() ? json(spec.b) : json(nullptr);
    doc["status"] = to_string(report.status);
    doc["value"] = number_or_null(report.upper_bound);
    json sites = json::array(), assign = json::array(), positions = json::array();
    if (report.incumbent) {
        for (int j : report.incumbent->open.sites) sites.push_back(j);
        for (int j : report.incumbent->assign) assign.push_back(j);
        for (auto [i, j] : report.incumbent->positions) positions.push_back({i, j});
    }
    doc["open_sites"] = sites;
    doc["assignment"] = assign;
    doc["positions"] = positions;
    doc["bounds"] = {{"upper", number_or_null(report.upper_bound)},
                     {"lower", number_or_null(report.lower_bound)},
                     {"root", number_or_null(report.root_bound)}};
    doc["gaps"] = {{"root_pct", number_or_null(report.gap_root_pct)},
                   {"pct", number_or_null(report.gap_pct)}};
    doc["cuts"] = report.cuts;
    doc["nodes"] = report.nodes;
    doc["orig_cons"] = report.original_constraints;
    doc["time"] = report.time_s;
    return doc;
}

SolutionCheck check_solution(const Instance& instance, const json& doc) {
    SolutionCheck out;
    auto fail = [&](std::string msg) {
        out.feasible = false;
        out.problems.push_back(std::move(msg));
    };
    const int n = instance.n();
    try {
        auto sites = doc.at("open_sites").get<std::vector<int>>();
        auto assign = doc.at("assignment").get<std::vector<int>>();
        auto positions = doc.at("positions").get<std::vector<std::pair<int, int>>>();

        std::set<int> open;
        for (int j : sites) {
            if (j < 0 || j >= n) fail("open site " + std::to_string(j) + " out of range");
            else if (!open.insert(j).second) fail("open site " + std::to_string(j) + " repeated");
        }
        if (static_cast<int>(open.size()) != instance.p())
            fail("expected " + std::to_string(instance.p()) + " open sites, found " +
                 std::to_string(open.size()));

        if (static_cast<int>(assign.size()) != n) {
            fail("assignment must list " + std::to_string(n) + " sites");
        } else {
            for (int i = 0; i < n; ++i)
                if (!open.count(assign[i]))
                    fail("client " + std::to_string(i) + " assigned to a closed site");
        }

        if (static_cast<int>(positions.size()) != n) {
            fail("positions must have " + std::to_string(n) + " entries");
            return out;
        }
        std::vector<bool> seen(n, false);
        std::vector<double> sorted;
        for (auto [i, j] : positions) {
            if (i < 0 || i >= n || j < 0 || j >= n) {
                fail("position entry out of range");
                return out;
            }
            if (seen[i]) fail("client " + std::to_string(i) + " occupies two positions");
            seen[i] = true;
            if (static_cast<int>(assign.size()) == n && assign[i] != j)
                fail("position of client " + std::to_string(i) + " disagrees with the assignment");
            sorted.push_back(instance.cost(i, j));
        }
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k] < sorted[k - 1])
                fail("positions out of order at slot " + std::to_string(k));
        out.value = ordered_value(instance.lambdas(), sorted);
        if (!doc.contains("value") || doc["value"].is_null()) {
            fail("no value");
        } else if (!close(doc["value"].get<double>(), out.value)) {
            fail("stated value " + format_double(doc["value"].get<double>()) +
                 " differs from recomputed " + format_double(out.value));
        }
    } catch (const json::exception& e) {
        fail(std::string("malformed solution: ") + e.what());
    }
    return out;
}

}  // namespace domp::tools
