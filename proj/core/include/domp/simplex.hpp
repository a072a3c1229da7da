#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "domp/models.hpp"

namespace domp {

/// Pivot breakdown: a singular basis or a pivot element that disagrees
/// between the row and column computations even after refactoring.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

const char* to_string(LpStatus status);

struct LpOptions {
    std::int64_t iteration_limit = 5'000'000;
    double primal_tolerance = 1e-9;
    double dual_tolerance = 1e-9;
    /// Rebuild the basis inverse from scratch after this many pivots.
    int refactor_interval = 100;
    /// Consecutive dual-degenerate pivots tolerated (as a multiple of the
    /// number of columns) before switching to Bland's rule.
    int bland_after_degenerate_factor = 10;
    std::chrono::steady_clock::time_point deadline =
        std::chrono::steady_clock::time_point::max();
};

struct LpSolution {
    LpStatus status = LpStatus::IterLimit;
    double objective = 0.0;
    /// Structural variable values (empty unless Optimal).
    std::vector<double> x;
    std::int64_t iterations = 0;
};

/// Bounded dual simplex for min c.x s.t. row bounds, l <= x <= u, with every
/// structural variable boxed. Rows are handled through logical variables
/// r_i = a_i.x carrying the row bounds, so the slack basis is always a valid
/// start and any basis can be made dual feasible by moving nonbasic boxed
/// variables to the bound that matches the sign of their reduced cost.
///
/// The object keeps its basis between solve() calls: changing bounds or
/// appending rows and solving again continues from the last optimal basis.
class DualSimplex {
public:
    explicit DualSimplex(const MilpModel& model, LpOptions options = {});

    int num_rows() const { return m_; }
    int num_structural() const { return ns_; }

    double lower(int var) const { return lo_[var]; }
    double upper(int var) const { return up_[var]; }
    void set_bounds(int var, double lo, double up);

    /// Appends a row; its logical variable enters the basis.
    void add_row(const SparseRow& row);

    LpSolution solve();

    /// Drops every row with index >= first whose logical variable is basic.
    /// With the logical column -e_i basic at position t, the inverse of the
    /// smaller basis is the old one without row t and column i, so no
    /// refactorization is needed. Returns the number of rows removed.
    int purge_rows(int first);

    const LpOptions& options() const { return options_; }
    LpOptions& options() { return options_; }
    std::int64_t total_iterations() const { return total_iterations_; }

private:
    struct Entry {
        int index;
        double value;
    };

    bool is_logical(int var) const { return var >= ns_; }
    double* binv_row(int pos) { return binv_.data() + static_cast<std::size_t>(pos) * cap_; }
    const double* binv_row(int pos) const {
        return binv_.data() + static_cast<std::size_t>(pos) * cap_;
    }

    void grow_capacity(int rows);
    void refactor();
    void factor_basis();
    void compute_primal();
    void compute_duals();
    void place_nonbasic();
    void column(int var, std::vector<double>& out) const;
    void pivot_row(int pos, std::vector<double>& alpha) const;
    void update_inverse(int pos, const std::vector<double>& w);
    double max_row_violation() const;

    LpOptions options_;
    int ns_ = 0;
    int m_ = 0;
    int cap_ = 0;

    std::vector<double> cost_;
    std::vector<double> lo_;
    std::vector<double> up_;
    std::vector<std::vector<Entry>> cols_;  // structural columns
    std::vector<std::vector<Entry>> rows_;  // row-wise copy

    std::vector<int> head_;   // basic variable per basis position
    std::vector<int> where_;  // basis position or -1
    std::vector<bool> at_upper_;
    std::vector<double> x_;
    std::vector<double> d_;
    std::vector<double> binv_;
    std::vector<double> weight_;  // squared norms of the rows of the inverse
    std::vector<int> nz_;         // scratch: nonzero columns of the pivot row

    int pivots_since_refactor_ = 0;
    std::int64_t total_iterations_ = 0;
};

/// One-shot LP relaxation solve of a model (integrality ignored).
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

}  // namespace domp
