#include "domp/strategy.hpp"

#include <algorithm>

namespace domp {

PoolSeparator::PoolSeparator(std::vector<SocCut> cuts, const RankStructure& ranks)
    : cuts_(std::move(cuts)) {
    std::sort(cuts_.begin(), cuts_.end(), [](const SocCut& a, const SocCut& b) {
        return a.k != b.k ? a.k < b.k : a.ell < b.ell;
    });
    cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
    rows_.reserve(cuts_.size());
    for (const SocCut& cut : cuts_) rows_.push_back(materialize_cut(cut, ranks));
}

std::size_t PoolSeparator::stored_coefficients() const {
    std::size_t total = 0;
    for (const SparseRow& row : rows_) total += row.index.size();
    return total;
}

std::vector<std::pair<SocCut, SparseRow>> PoolSeparator::violated(const Point& point, double b,
                                                                  std::size_t cap) const {
    std::vector<std::pair<SocCut, SparseRow>> out;
    const double cutoff = b + kViolationTolerance;
    for (std::size_t t = 0; t < rows_.size() && out.size() < cap; ++t)
        if (rows_[t].activity(point.x) > cutoff) out.emplace_back(cuts_[t], rows_[t]);
    return out;
}

std::vector<std::pair<SocCut, SparseRow>> CallbackSeparator::violated(const Point& point, double b,
                                                                      std::size_t cap) const {
    SeparationResult found = separate_soc(point, ranks_, b);
    std::vector<std::pair<SocCut, SparseRow>> out;
    const std::size_t count = std::min(cap, found.cuts.size());
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
        out.emplace_back(found.cuts[t], materialize_cut(found.cuts[t], ranks_));
    return out;
}

Hooks make_soc_hooks(std::shared_ptr<const SocSeparator> separator, int n,
                     const BnbConfig& config) {
    const auto cap = static_cast<std::size_t>(config.cuts_per_round);
    const double b = config.b;
    auto collect = [](std::vector<std::pair<SocCut, SparseRow>> found) {
        std::vector<SparseRow> rows;
        rows.reserve(found.size());
        for (auto& [cut, row] : found) rows.push_back(std::move(row));
        return rows;
    };
    Hooks hooks;
    hooks.on_root_fractional = [=](std::span<const double> x) {
        return collect(separator->violated(Point::from_flat(n, x), 1.0, cap));
    };
    hooks.on_integer_candidate = [=](std::span<const double> x) {
        return collect(separator->violated(Point::from_flat(n, x).rounded(), b, cap));
    };
    return hooks;
}

Hooks pool_strategy(std::vector<SocCut> all_cuts, const RankStructure& ranks,
                    const BnbConfig& config) {
    if (all_cuts.empty()) return {};
    auto pool = std::make_shared<const PoolSeparator>(std::move(all_cuts), ranks);
    return make_soc_hooks(pool, ranks.n(), config);
}

Hooks callback_strategy(const RankStructure& ranks, const BnbConfig& config) {
    return make_soc_hooks(std::make_shared<const CallbackSeparator>(ranks), ranks.n(), config);
}

}  // namespace domp
