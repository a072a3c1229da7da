#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "domp/instance.hpp"
#include "domp/objective.hpp"

namespace domp {

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

/// One linear constraint in sparse form.
struct SparseRow {
    std::vector<int> index;
    std::vector<double> value;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;

    double activity(std::span<const double> x) const;
    /// Signed amount by which x violates the row (<= 0 when satisfied).
    double violation(std::span<const double> x) const;
};

enum class VarKind { X, Y };

struct VarIndex {
    VarKind kind;
    int i;  ///< client, X only
    int j;  ///< site
    int k;  ///< sorted position, X only
    int flat;
};

/// Flat numbering of the DOMP variables: x(i, j, k) occupies the block of
/// position k, inside which pairs are ordered i * n + j; the n y-variables
/// follow the n^3 x-variables.
class VarLayout {
public:
    explicit VarLayout(int n) : n_(n) {}

    int n() const { return n_; }
    int num_x() const { return n_ * n_ * n_; }
    int num_vars() const { return num_x() + n_; }

    int x(int client, int site, int position) const {
        return (position * n_ + client) * n_ + site;
    }
    int x_pair(int pair, int position) const { return position * n_ * n_ + pair; }
    int y(int site) const { return num_x() + site; }

    VarIndex decode(int flat) const;

private:
    int n_;
};

enum class Formulation { Soc, Woc, Relax, Custom };

std::string to_string(Formulation f);

/// Generic 0/1 model handed to the engine: minimize objective . x subject to
/// rows and per-variable bounds.
struct MilpModel {
    Formulation formulation = Formulation::Custom;
    int n = 0;  ///< DOMP size; 0 for models that are not DOMP formulations
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> integer;
    /// Branching preference: larger is branched on first.
    std::vector<int> branch_priority;
    std::vector<SparseRow> rows;

    /// Row counts per family, filled by the DOMP builders.
    int base_rows = 0;
    int order_rows = 0;

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    /// Adds a variable; returns its flat id.
    int add_var(double cost, double lo, double up, bool is_integer, int priority = 0);
    /// Appends a row after checking every index. Throws IndexOutOfRange.
    void add_row(SparseRow row);

    double objective_value(std::span<const double> x) const;
};

/// A strong order constraint, identified by the rank threshold ell
/// (0-based, in [0, n^2)) and the position k (0-based, in [1, n)). It reads
///   sum_{rank <= ell} x^k + sum_{rank >= ell} x^{k-1} <= 1.
struct SocCut {
    int ell;
    int k;

    auto operator<=>(const SocCut&) const = default;
};

/// Assignment (2), position (3), linking (4) and cardinality (5) rows over
/// binary x and y. n^2 + 2n + 1 rows.
MilpModel build_base(const Instance& instance, const RankStructure& ranks);

/// Base plus every strong order constraint.
MilpModel build_soc_model(const Instance& instance, const RankStructure& ranks);

/// Base plus n - 1 weak order constraints, one per adjacent position pair.
MilpModel build_woc_model(const Instance& instance, const RankStructure& ranks);

/// Base only; order constraints are left to row generation.
MilpModel build_relax_model(const Instance& instance, const RankStructure& ranks);

SparseRow materialize_cut(const SocCut& cut, const RankStructure& ranks);

/// The weak order row for position k (k in [1, n)).
SparseRow woc_row(int k, const RankStructure& ranks);

/// Every strong order constraint, ascending (k, ell).
std::vector<SocCut> enumerate_soc_cuts(int n);

/// Flat 0/1 point for a complete ordered solution.
std::vector<double> encode_solution(const VarLayout& layout, const OrderedSolution& sol);

/// Writes the model in CPLEX LP text format.
void write_lp(const MilpModel& model, std::ostream& out);

}  // namespace domp
