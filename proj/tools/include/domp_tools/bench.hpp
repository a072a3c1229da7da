#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "domp/instance.hpp"
#include "domp_tools/runner.hpp"

namespace domp::tools {

struct BenchOptions {
    std::vector<Method> methods{Method::Soc, Method::Woc, Method::Bc, Method::RowGen};
    std::vector<Strategy> strategies{Strategy::Pool, Strategy::Callback};
    std::vector<double> b_values{1.0};
    MethodConfig config;
    int jobs = 1;
};

/// Every (method, strategy, b) combination a sweep runs on one instance.
/// Strategy only varies for bc and rowgen, b only for rowgen.
std::vector<SolveSpec> expand_specs(const BenchOptions& options);

struct BenchRecord {
    std::string instance;
    int n = 0;
    int p = 0;
    SolveSpec spec;
    std::string status;
    std::optional<SolveReport> report;  ///< empty when the solve threw
};

/// Solves every instance under every spec. Records come back in input order
/// (instance-major) whatever the number of worker threads.
std::vector<BenchRecord> run_bench(const std::vector<Instance>& instances,
                                   const BenchOptions& options);

inline constexpr const char* kCsvHeader =
    "instance,n,p,method,strategy,b,status,time_s,value,best_bound,gap_root_pct,gap_pct,"
    "orig_cons,cuts,nodes";

/// Header, one row per record, then one mean row per (n, p, method,
/// strategy, b) group in order of first appearance.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records,
               bool aggregate = true);

/// RFC 4180 quoting for one field.
std::string csv_field(const std::string& text);

/// Directories expand to their *.domp files, patterns with * ? [ go through
/// glob(3), plain paths pass through. Each argument's matches are sorted.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& args);

}  // namespace domp::tools
