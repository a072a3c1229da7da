#include "domp_tools/bench.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "domp/text.hpp"

namespace domp::tools {

std::vector<SolveSpec> expand_specs(const BenchOptions& options) {
    std::vector<SolveSpec> specs;
    for (Method m : options.methods) {
        SolveSpec base;
        base.method = m;
        if (!base.uses_strategy()) {
            specs.push_back(base);
            continue;
        }
        for (Strategy s : options.strategies) {
            base.strategy = s;
            if (!base.uses_b()) {
                specs.push_back(base);
                continue;
            }
            for (double b : options.b_values) {
                base.b = b;
                specs.push_back(base);
            }
        }
    }
    return specs;
}

std::vector<BenchRecord> run_bench(const std::vector<Instance>& instances,
                                   const BenchOptions& options) {
    const auto specs = expand_specs(options);
    std::vector<BenchRecord> records;
    for (const Instance& inst : instances)
        for (const SolveSpec& spec : specs)
            records.push_back({inst.name(), inst.n(), inst.p(), spec, "", std::nullopt});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < records.size(); t = next++) {
            BenchRecord& rec = records[t];
            const Instance& inst = instances[t / specs.size()];
            try {
                rec.report = run_method(inst, rec.spec, options.config);
                rec.status = to_string(rec.report->status);
            } catch (const std::exception& e) {
                rec.status = std::string("Error: ") + e.what();
            }
        }
    };
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    }
    return records;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_double(v);
}

std::string seconds(double t) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(6);
    s << t;
    return s.str();
}

struct Fields {
    std::string strategy, b;
};

Fields spec_fields(const SolveSpec& spec) {
    return {spec.uses_strategy() ? to_string(spec.strategy) : "", spec.uses_b() ? num(spec.b) : ""};
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool aggregate) {
    out << kCsvHeader << '\n';

    struct Group {
        int n, p;
        SolveSpec spec;
        int count = 0, solved = 0, optimal = 0;
        double time = 0, value = 0, bound = 0, gap_root = 0, gap = 0, orig = 0, cuts = 0, nodes = 0;
    };
    std::vector<Group> groups;
    std::map<std::tuple<int, int, int, int, double>, std::size_t> index;

    for (const BenchRecord& rec : records) {
        const Fields f = spec_fields(rec.spec);
        out << csv_field(rec.instance) << ',' << rec.n << ',' << rec.p << ','
            << to_string(rec.spec.method) << ',' << f.strategy << ',' << f.b << ','
            << csv_field(rec.status) << ',';
        if (rec.report) {
            const SolveReport& r = *rec.report;
            out << seconds(r.time_s) << ',' << num(r.upper_bound) << ',' << num(r.lower_bound)
                << ',' << num(r.gap_root_pct) << ',' << num(r.gap_pct) << ','
                << r.original_constraints << ',' << r.cuts << ',' << r.nodes << '\n';
        } else {
            out << ",,,,,,,\n";
        }

        auto key = std::make_tuple(rec.n, rec.p, static_cast<int>(rec.spec.method),
                                   rec.spec.uses_strategy() ? static_cast<int>(rec.spec.strategy) : -1,
                                   rec.spec.uses_b() ? rec.spec.b : 0.0);
        auto [it, fresh] = index.try_emplace(key, groups.size());
        if (fresh) groups.push_back({rec.n, rec.p, rec.spec});
        Group& g = groups[it->second];
        ++g.count;
        if (!rec.report) continue;
        const SolveReport& r = *rec.report;
        ++g.solved;
        if (r.status == SolveStatus::Optimal) ++g.optimal;
        g.time += r.time_s;
        g.value += r.upper_bound;
        g.bound += r.lower_bound;
        g.gap_root += r.gap_root_pct;
        g.gap += r.gap_pct;
        g.orig += r.original_constraints;
        g.cuts += static_cast<double>(r.cuts);
        g.nodes += static_cast<double>(r.nodes);
    }
    if (!aggregate) return;

    for (const Group& g : groups) {
        const Fields f = spec_fields(g.spec);
        const double k = g.solved;
        auto mean = [&](double total) { return g.solved ? num(total / k) : std::string(); };
        out << "mean," << g.n << ',' << g.p << ',' << to_string(g.spec.method) << ','
            << f.strategy << ',' << f.b << ",optimal " << g.optimal << '/' << g.count << ','
            << (g.solved ? seconds(g.time / k) : std::string()) << ',' << mean(g.value) << ','
            << mean(g.bound) << ',' << mean(g.gap_root) << ',' << mean(g.gap) << ','
            << mean(g.orig) << ',' << mean(g.cuts) << ',' << mean(g.nodes) << '\n';
    }
}

std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& args) {
    namespace fs = std::filesystem;
    std::vector<fs::path> out;
    for (const std::string& arg : args) {
        std::vector<fs::path> found;
        if (arg.find_first_of("*?[") != std::string::npos) {
            glob_t g{};
            if (::glob(arg.c_str(), 0, nullptr, &g) == 0)
                for (std::size_t t = 0; t < g.gl_pathc; ++t) found.emplace_back(g.gl_pathv[t]);
            ::globfree(&g);
        } else if (fs::is_directory(arg)) {
            for (const auto& entry : fs::directory_iterator(arg))
                if (entry.is_regular_file() && entry.path().extension() == ".domp")
                    found.push_back(entry.path());
        } else {
            found.emplace_back(arg);
        }
        std::sort(found.begin(), found.end());
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

}  // namespace domp::tools
