#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "domp/instance.hpp"
#include "domp/models.hpp"

namespace domp {

class ThresholdOutOfRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotIntegral : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Violation tolerance added to the threshold: a cut is reported when its
/// left-hand side exceeds b + kViolationTolerance.
inline constexpr double kViolationTolerance = 1e-6;
inline constexpr double kIntegralityTolerance = 1e-6;

/// Values of the DOMP variables at a candidate solution, in VarLayout order
/// for x (n^3 entries) plus the n y-values.
struct Point {
    int n = 0;
    std::vector<double> x;
    std::vector<double> y;
    bool is_integral = false;

    /// Reads a flat engine vector (at least VarLayout(n).num_vars() entries).
    static Point from_flat(int n, std::span<const double> flat,
                           double tol = kIntegralityTolerance);

    /// Copy with every value rounded to the nearest of {0, 1}.
    Point rounded() const;

    double x_at(int pair, int position) const {
        return x[static_cast<std::size_t>(position) * n * n + pair];
    }
};

struct SeparationStats {
    std::int64_t lhs_updates = 0;
    std::int64_t checks = 0;
    /// Largest |running lhs - lhs_direct| seen; only filled when tracing.
    double max_telescoping_error = 0.0;
};

struct SeparationResult {
    std::vector<SocCut> cuts;
    std::vector<double> lhs_values;
    SeparationStats stats;
};

struct SeparationOptions {
    /// Recompute every scanned lhs directly and record the deviation of the
    /// running sum. O(n^5); for verification only.
    bool trace_telescoping = false;
};

/// Left-hand side of SOC (ell, k) by direct summation.
double lhs_direct(const Point& point, int ell, int k, const RankStructure& ranks);

/// All SOC with lhs > b + kViolationTolerance, found with a telescoping scan
/// over (k, ell) that updates the running lhs with one addition and one
/// subtraction per step: O(n^3) overall. Cuts come out in ascending (k, ell).
/// Throws ThresholdOutOfRange unless 1 <= b < 2.
SeparationResult separate_soc(const Point& point, const RankStructure& ranks,
                              double b = 1.0, const SeparationOptions& options = {});

/// Reference implementation of the same contract through lhs_direct.
SeparationResult separate_soc_naive(const Point& point, const RankStructure& ranks,
                                    double b = 1.0);

/// Rank of the pair occupying each position of an integral point satisfying
/// the assignment and position rows. Throws NotIntegral for fractional points
/// and std::invalid_argument if a position is empty or doubly occupied.
std::vector<int> position_ranks(const Point& point, const RankStructure& ranks);

/// True iff the pair ranks along positions 1..n increase; for integral
/// base-feasible points this is equivalent to satisfying every SOC.
bool check_ordered_feasibility(const Point& point, const RankStructure& ranks);

}  // namespace domp
