#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace domp {

/// Malformed instance text (bad token, wrong number of values).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance data that parses but violates a problem invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A discrete ordered median instance: n clients that are also the n
/// candidate sites, p sites to open, an n x n allocation cost matrix and
/// n position weights.
///
/// All indices are 0-based. cost(i, j) is the cost of serving client i from
/// site j. The object is immutable once constructed; the constructor throws
/// ValidationError on any invariant violation.
class Instance {
public:
    Instance(std::string name, int n, int p, std::vector<double> costs,
             std::vector<double> lambda);

    int n() const { return n_; }
    int p() const { return p_; }
    const std::string& name() const { return name_; }

    double cost(int client, int site) const {
        return costs_[static_cast<std::size_t>(client) * n_ + site];
    }
    double lambda(int position) const { return lambda_[position]; }

    /// Row-major n*n costs.
    std::span<const double> costs() const { return costs_; }
    std::span<const double> lambdas() const { return lambda_; }

    /// Copy with different weights (the cost matrix and p are kept).
    Instance with_lambda(std::vector<double> lambda) const;

    bool operator==(const Instance&) const = default;

private:
    std::string name_;
    int n_;
    int p_;
    std::vector<double> costs_;
    std::vector<double> lambda_;
};

/// Global ordering of the n^2 allocation costs. Ranks are 0-based: rank 0 is
/// the cheapest pair. Equal costs are ordered lexicographically by (i, j).
///
/// Pairs are encoded as i * n + j.
class RankStructure {
public:
    explicit RankStructure(const Instance& instance);

    int n() const { return n_; }
    int num_pairs() const { return static_cast<int>(pair_at_.size()); }

    int rank(int client, int site) const { return rank_[client * n_ + site]; }
    int rank_of_pair(int pair) const { return rank_[pair]; }
    int pair_at(int rank) const { return pair_at_[rank]; }

    std::span<const int> ranks() const { return rank_; }
    std::span<const int> pairs_by_rank() const { return pair_at_; }

private:
    int n_;
    std::vector<int> rank_;
    std::vector<int> pair_at_;
};

RankStructure compute_ranks(const Instance& instance);

/// Parses the canonical text form:
///   line 1: n p
///   line 2: lambda_1 ... lambda_n
///   next n lines: the cost matrix rows
/// Any whitespace separates tokens.
Instance parse_instance(std::istream& in, std::string name = "instance");
Instance load_instance(const std::filesystem::path& path);

/// Canonical form: single spaces, shortest round-trip decimal for every value.
std::string format_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Random instance: lambda_k uniform in [n/4, n], costs uniform integers in
/// [1, 1000]; with self_service_zero the diagonal is zero. Same seed gives
/// the same instance.
Instance generate_instance(int n, int p, std::uint64_t seed,
                           bool self_service_zero = false);

/// Name used by the generator and by `domp generate` for output files.
std::string generated_name(const std::string& prefix, int n, int p,
                           std::uint64_t seed);

}  // namespace domp
