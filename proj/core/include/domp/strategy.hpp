#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "domp/branch_and_bound.hpp"
#include "domp/instance.hpp"
#include "domp/models.hpp"
#include "domp/separation.hpp"

namespace domp {

/// Source of violated strong order constraints at a point.
class SocSeparator {
public:
    virtual ~SocSeparator() = default;

    /// At most `cap` cuts with lhs > b + kViolationTolerance, in ascending
    /// (k, ell) order, paired with their materialized rows.
    virtual std::vector<std::pair<SocCut, SparseRow>> violated(const Point& point, double b,
                                                               std::size_t cap) const = 0;
};

/// Every cut materialized up front; separation scans the stored rows.
class PoolSeparator final : public SocSeparator {
public:
    PoolSeparator(std::vector<SocCut> cuts, const RankStructure& ranks);

    std::vector<std::pair<SocCut, SparseRow>> violated(const Point& point, double b,
                                                       std::size_t cap) const override;

    std::size_t size() const { return cuts_.size(); }
    std::size_t stored_coefficients() const;

private:
    std::vector<SocCut> cuts_;
    std::vector<SparseRow> rows_;
};

/// Cuts found on demand with the telescoping scan; only returned cuts are
/// materialized.
class CallbackSeparator final : public SocSeparator {
public:
    explicit CallbackSeparator(RankStructure ranks) : ranks_(std::move(ranks)) {}

    std::vector<std::pair<SocCut, SparseRow>> violated(const Point& point, double b,
                                                       std::size_t cap) const override;

private:
    RankStructure ranks_;
};

/// Hooks over a separator: fractional root points are separated at b = 1,
/// integral candidates (rounded) at config.b; at most config.cuts_per_round
/// rows per call.
Hooks make_soc_hooks(std::shared_ptr<const SocSeparator> separator, int n,
                     const BnbConfig& config);

/// Pool strategy over a complete list of cuts. An empty list gives no-op hooks.
Hooks pool_strategy(std::vector<SocCut> all_cuts, const RankStructure& ranks,
                    const BnbConfig& config);

Hooks callback_strategy(const RankStructure& ranks, const BnbConfig& config);

}  // namespace domp
