#include "domp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

#include "domp/text.hpp"

namespace domp {

namespace {

void validate(int n, int p, const std::vector<double>& costs,
              const std::vector<double>& lambda) {
    if (n < 1) throw ValidationError("n must be at least 1");
    if (p < 1 || p > n)
        throw ValidationError("p must lie in [1, n], got p=" + std::to_string(p) +
                              " with n=" + std::to_string(n));
    if (costs.size() != static_cast<std::size_t>(n) * n)
        throw ValidationError("cost matrix must be n x n");
    if (lambda.size() != static_cast<std::size_t>(n))
        throw ValidationError("lambda must have n entries");
    for (double c : costs)
        if (!std::isfinite(c) || c < 0.0)
            throw ValidationError("costs must be finite and nonnegative");
    for (double l : lambda)
        if (!std::isfinite(l) || l < 0.0)
            throw ValidationError("weights must be finite and nonnegative");
}

}  // namespace

Instance::Instance(std::string name, int n, int p, std::vector<double> costs,
                   std::vector<double> lambda)
    : name_(std::move(name)), n_(n), p_(p), costs_(std::move(costs)),
      lambda_(std::move(lambda)) {
    validate(n_, p_, costs_, lambda_);
}

Instance Instance::with_lambda(std::vector<double> lambda) const {
    return Instance(name_, n_, p_, costs_, std::move(lambda));
}

RankStructure::RankStructure(const Instance& instance)
    : n_(instance.n()),
      rank_(static_cast<std::size_t>(n_) * n_),
      pair_at_(static_cast<std::size_t>(n_) * n_) {
    std::iota(pair_at_.begin(), pair_at_.end(), 0);
    auto costs = instance.costs();
    // Pair id order is (i, j) lexicographic, so a stable sort on cost alone
    // gives the required tie-break.
    std::stable_sort(pair_at_.begin(), pair_at_.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    for (int r = 0; r < num_pairs(); ++r) rank_[pair_at_[r]] = r;
}

RankStructure compute_ranks(const Instance& instance) {
    return RankStructure(instance);
}

Instance parse_instance(std::istream& in, std::string name) {
    auto read_token = [&](const char* what) {
        std::string tok;
        if (!(in >> tok)) throw ParseError(std::string("unexpected end of input reading ") + what);
        return tok;
    };
    auto read_int = [&](const char* what) {
        auto tok = read_token(what);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(std::string("bad integer for ") + what + ": '" + tok + "'");
        return v;
    };
    auto read_real = [&](const char* what) {
        auto tok = read_token(what);
        double v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(std::string("bad number for ") + what + ": '" + tok + "'");
        return v;
    };

    int n = read_int("n");
    int p = read_int("p");
    if (n < 1) throw ValidationError("n must be at least 1");
    if (n > 5000) throw ValidationError("n too large");
    std::vector<double> lambda(n);
    for (auto& l : lambda) l = read_real("lambda");
    std::vector<double> costs(static_cast<std::size_t>(n) * n);
    for (auto& c : costs) c = read_real("cost");
    std::string extra;
    if (in >> extra) throw ParseError("trailing data after cost matrix: '" + extra + "'");
    return Instance(std::move(name), n, p, std::move(costs), std::move(lambda));
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file " + path.string());
    return parse_instance(in, path.stem().string());
}

std::string format_instance(const Instance& instance) {
    std::string out;
    const int n = instance.n();
    out += std::to_string(n) + " " + std::to_string(instance.p()) + "\n";
    for (int k = 0; k < n; ++k) {
        if (k) out += ' ';
        out += format_double(instance.lambda(k));
    }
    out += '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out += ' ';
            out += format_double(instance.cost(i, j));
        }
        out += '\n';
    }
    return out;
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file " + path.string());
    out << format_instance(instance);
    if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string generated_name(const std::string& prefix, int n, int p,
                           std::uint64_t seed) {
    return prefix + "_n" + std::to_string(n) + "_p" + std::to_string(p) + "_s" +
           std::to_string(seed);
}

Instance generate_instance(int n, int p, std::uint64_t seed,
                           bool self_service_zero) {
    if (n < 1) throw InvalidParams("n must be at least 1");
    if (p < 1 || p > n) throw InvalidParams("p must lie in [1, n]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(n / 4.0, static_cast<double>(n));
    std::uniform_int_distribution<int> cost(1, 1000);

    std::vector<double> lambda(n);
    for (auto& l : lambda) l = std::clamp(weight(rng), n / 4.0, static_cast<double>(n));
    std::vector<double> costs(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double c = cost(rng);
            costs[static_cast<std::size_t>(i) * n + j] = (self_service_zero && i == j) ? 0.0 : c;
        }
    return Instance(generated_name("domp", n, p, seed), n, p, std::move(costs),
                    std::move(lambda));
}

}  // namespace domp
