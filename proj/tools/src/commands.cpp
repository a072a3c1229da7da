#include "domp_tools/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "domp/methods.hpp"
#include "domp/text.hpp"
#include "domp_tools/bench.hpp"
#include "domp_tools/solution_json.hpp"

namespace domp::tools {

namespace fs = std::filesystem;

namespace {

/// Bad input files and arguments detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Limits {
    double time_limit = 3600.0;
    std::int64_t node_limit = 0;
    bool no_warm_start = false;
    std::uint64_t heuristic_seed = 1;

    void add_to(CLI::App& app) {
        app.add_option("--time-limit", time_limit, "Seconds per solve")
            ->check(CLI::PositiveNumber);
        app.add_option("--node-limit", node_limit, "Branch-and-bound nodes per solve (0: none)")
            ->check(CLI::NonNegativeNumber);
        app.add_flag("--no-warm-start", no_warm_start, "Skip the heuristic incumbent");
        app.add_option("--heuristic-seed", heuristic_seed, "Seed of the warm start heuristic");
    }

    MethodConfig config() const {
        MethodConfig cfg;
        cfg.bnb.time_limit = time_limit;
        if (node_limit > 0) cfg.bnb.node_limit = node_limit;
        cfg.use_warm_start = !no_warm_start;
        cfg.heuristic_seed = heuristic_seed;
        return cfg;
    }
};

const auto kThreshold = CLI::Validator(
    [](std::string& s) -> std::string {
        double b = std::stod(s);
        if (!(b >= 1.0 && b < 2.0)) return "b must lie in [1, 2)";
        return {};
    },
    "in [1,2)");

Method method_arg(const std::string& s) {
    if (auto m = parse_method(s)) return *m;
    throw UsageError("unknown method '" + s + "'");
}

Strategy strategy_arg(const std::string& s) {
    if (auto st = parse_strategy(s)) return *st;
    throw UsageError("unknown strategy '" + s + "'");
}

Instance load(const fs::path& path) {
    if (!fs::exists(path)) throw UsageError("no such file: " + path.string());
    return load_instance(path);
}

int cmd_generate(int n, int p, int count, std::uint64_t seed, const std::string& dir,
                 const std::string& prefix, bool zero_diag, std::ostream& out) {
    if (count < 0) throw UsageError("count must be nonnegative");
    fs::create_directories(dir);
    for (int t = 0; t < count; ++t) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
        Instance inst = generate_instance(n, p, s, zero_diag);
        fs::path file = fs::path(dir) / (generated_name(prefix, n, p, s) + ".domp");
        save_instance(inst, file);
        out << file.string() << '\n';
    }
    return kOk;
}

void print_report(const Instance& inst, const SolveSpec& spec, const SolveReport& r,
                  std::ostream& out) {
    out << "instance     " << inst.name() << " (n=" << inst.n() << ", p=" << inst.p() << ")\n"
        << "method       " << to_string(spec.method);
    if (spec.uses_strategy()) out << " / " << to_string(spec.strategy);
    if (spec.uses_b()) out << " / b=" << format_double(spec.b);
    out << "\nstatus       " << to_string(r.status) << '\n'
        << "value        " << format_double(r.upper_bound) << '\n'
        << "best bound   " << format_double(r.lower_bound) << '\n'
        << "root bound   " << format_double(r.root_bound) << '\n'
        << "gap root %   " << format_double(r.gap_root_pct) << '\n'
        << "gap %        " << format_double(r.gap_pct) << '\n'
        << "orig cons    " << r.original_constraints << '\n'
        << "cuts         " << r.cuts << '\n'
        << "nodes        " << r.nodes << '\n'
        << "time s       " << r.time_s << '\n';
    if (r.incumbent) {
        out << "open sites  ";
        for (int j : r.incumbent->open.sites) out << ' ' << j;
        out << '\n';
    }
}

int cmd_solve(const std::string& file, const std::string& method, const std::string& strategy,
              double b, const Limits& limits, const std::string& json_path, std::ostream& out) {
    Instance inst = load(file);
    SolveSpec spec{method_arg(method), strategy_arg(strategy), b};
    SolveReport report = run_method(inst, spec, limits.config());
    print_report(inst, spec, report, out);
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) throw UsageError("cannot write " + json_path);
        f << report_to_json(inst, spec, report).dump(2) << '\n';
    }
    return kOk;
}

int cmd_verify(const std::string& file, const std::string& solution, std::uint64_t limit,
               std::ostream& out) {
    Instance inst = load(file);
    BruteForceResult bf = brute_force(inst, limit);
    out << "optimum      " << format_double(bf.value) << '\n' << "open sites  ";
    for (int j : bf.best.sites) out << ' ' << j;
    out << "\nsubsets      " << bf.subsets << '\n';
    if (solution.empty()) return kOk;

    std::ifstream f(solution);
    if (!f) throw UsageError("cannot read " + solution);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("solution is not JSON: ") + e.what());
    }
    SolutionCheck check = check_solution(inst, doc);
    for (const std::string& p : check.problems) out << "problem      " << p << '\n';
    if (!check.feasible) {
        out << "verdict      INFEASIBLE\n";
        return kMismatch;
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(bf.value));
    if (std::abs(check.value - bf.value) > tol) {
        out << "verdict      MISMATCH solution " << format_double(check.value) << " optimum "
            << format_double(bf.value) << '\n';
        return kMismatch;
    }
    out << "verdict      PASS\n";
    return kOk;
}

int cmd_bench(const std::vector<std::string>& inputs, const std::vector<std::string>& methods,
              const std::vector<std::string>& strategies, const std::vector<double>& bs,
              const Limits& limits, int jobs, const std::string& output, bool no_aggregate,
              std::ostream& out, std::ostream& err) {
    BenchOptions opt;
    opt.methods.clear();
    for (const auto& m : methods) opt.methods.push_back(method_arg(m));
    opt.strategies.clear();
    for (const auto& s : strategies) opt.strategies.push_back(strategy_arg(s));
    opt.b_values = bs;
    opt.config = limits.config();
    opt.jobs = jobs;

    std::vector<Instance> instances;
    for (const fs::path& path : expand_inputs(inputs)) instances.push_back(load(path));
    auto records = run_bench(instances, opt);
    for (const BenchRecord& rec : records)
        if (!rec.report) err << rec.instance << ' ' << to_string(rec.spec.method) << ": "
                             << rec.status << '\n';

    if (output.empty() || output == "-") {
        write_csv(out, records, !no_aggregate);
    } else {
        std::ofstream f(output);
        if (!f) throw UsageError("cannot write " + output);
        write_csv(f, records, !no_aggregate);
    }
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact solver for the discrete ordered median problem", "domp"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Write random instances");
    int n = 0, p = 0, count = 1;
    std::uint64_t seed = 1;
    std::string dir = ".", prefix = "domp";
    bool zero_diag = false;
    gen->add_option("-n", n, "Clients = candidate sites")->required()->check(CLI::PositiveNumber);
    gen->add_option("-p", p, "Sites to open")->required()->check(CLI::PositiveNumber);
    gen->add_option("--count", count, "Number of instances (seeds seed..seed+count-1)");
    gen->add_option("--seed", seed, "First seed");
    gen->add_option("-o,--output", dir, "Output directory");
    gen->add_option("--prefix", prefix, "File name prefix");
    gen->add_flag("--self-service-zero", zero_diag, "Zero cost for serving a client from its own site");

    auto* solve = app.add_subcommand("solve", "Solve one instance");
    std::string file, method = "rowgen", strategy = "callback", json_path;
    double b = 1.0;
    Limits solve_limits;
    solve->add_option("instance", file, "Instance file")->required();
    solve->add_option("--method", method, "soc | woc | bc | rowgen")
        ->check(CLI::IsMember({"soc", "woc", "bc", "rowgen"}));
    solve->add_option("--strategy", strategy, "pool | callback")
        ->check(CLI::IsMember({"pool", "callback"}));
    solve->add_option("--b", b, "Integral candidate threshold (rowgen)")->check(kThreshold);
    solve->add_option("--json", json_path, "Write the solution as JSON");
    solve_limits.add_to(*solve);

    auto* verify = app.add_subcommand("verify", "Brute-force optimum, optionally checking a solution");
    std::string vfile, solution;
    std::uint64_t limit = kDefaultSubsetLimit;
    verify->add_option("instance", vfile, "Instance file")->required();
    verify->add_option("--solution", solution, "Solution JSON written by solve --json");
    verify->add_option("--subset-limit", limit, "Refuse enumerations larger than this");

    auto* bench = app.add_subcommand("bench", "Sweep methods over instances, CSV output");
    std::vector<std::string> inputs;
    std::vector<std::string> methods{"soc", "woc", "bc", "rowgen"};
    std::vector<std::string> strategies{"pool", "callback"};
    std::vector<double> bs{1.0};
    Limits bench_limits;
    bench_limits.time_limit = 600.0;
    int jobs = 1;
    std::string output;
    bool no_aggregate = false;
    bench->add_option("inputs", inputs, "Instance files, directories or glob patterns");
    bench->add_option("--methods", methods, "Methods to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"soc", "woc", "bc", "rowgen"}));
    bench->add_option("--strategies", strategies, "Strategies for bc and rowgen")
        ->delimiter(',')
        ->check(CLI::IsMember({"pool", "callback"}));
    bench->add_option("--b", bs, "Threshold values for rowgen")->delimiter(',')->check(kThreshold);
    bench->add_option("-j,--jobs", jobs, "Parallel solves")->check(CLI::PositiveNumber);
    bench->add_option("-o,--output", output, "CSV file (default stdout)");
    bench->add_flag("--no-aggregate", no_aggregate, "Omit the mean rows");
    bench_limits.add_to(*bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_generate(n, p, count, seed, dir, prefix, zero_diag, out);
        if (*solve) return cmd_solve(file, method, strategy, b, solve_limits, json_path, out);
        if (*verify) return cmd_verify(vfile, solution, limit, out);
        if (*bench)
            return cmd_bench(inputs, methods, strategies, bs, bench_limits, jobs, output,
                             no_aggregate, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidParams& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SizeGuard& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace domp::tools
