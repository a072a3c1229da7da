#include "domp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace domp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-7;
constexpr double kRowFeasibility = 1e-7;

}  // namespace

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "Optimal";
        case LpStatus::Infeasible: return "Infeasible";
        case LpStatus::Unbounded: return "Unbounded";
        case LpStatus::IterLimit: return "IterLimit";
    }
    return "?";
}

DualSimplex::DualSimplex(const MilpModel& model, LpOptions options)
    : options_(options), ns_(model.num_vars()) {
    cost_ = model.objective;
    lo_ = model.lower;
    up_ = model.upper;
    for (int j = 0; j < ns_; ++j) {
        if (!std::isfinite(lo_[j]) || !std::isfinite(up_[j]))
            throw std::invalid_argument("every structural variable needs finite bounds");
        if (lo_[j] > up_[j]) throw std::invalid_argument("variable bounds cross");
    }
    cols_.resize(ns_);
    where_.assign(ns_, -1);
    at_upper_.assign(ns_, false);
    x_.assign(ns_, 0.0);
    d_ = cost_;
    grow_capacity(model.num_rows() + 64);
    for (const SparseRow& row : model.rows) add_row(row);
}

void DualSimplex::grow_capacity(int rows) {
    if (rows <= cap_) return;
    int new_cap = std::max(rows, cap_ + cap_ / 2);
    std::vector<double> fresh(static_cast<std::size_t>(new_cap) * new_cap, 0.0);
    for (int t = 0; t < m_; ++t)
        std::copy(binv_row(t), binv_row(t) + m_, fresh.data() + static_cast<std::size_t>(t) * new_cap);
    binv_.swap(fresh);
    cap_ = new_cap;
}

void DualSimplex::set_bounds(int var, double lo, double up) {
    if (var < 0 || var >= ns_) throw std::out_of_range("set_bounds: not a structural variable");
    if (!std::isfinite(lo) || !std::isfinite(up) || lo > up)
        throw std::invalid_argument("set_bounds: invalid bounds");
    lo_[var] = lo;
    up_[var] = up;
}

void DualSimplex::add_row(const SparseRow& row) {
    const int i = m_;
    const int logical = ns_ + i;
    grow_capacity(m_ + 1);

    std::vector<Entry> entries;
    entries.reserve(row.index.size());
    for (std::size_t t = 0; t < row.index.size(); ++t) {
        int j = row.index[t];
        if (j < 0 || j >= ns_) throw std::out_of_range("row references unknown column");
        if (row.value[t] == 0.0) continue;
        entries.push_back({j, row.value[t]});
        cols_[j].push_back({i, row.value[t]});
    }

    double lo = -kInf, up = kInf;
    switch (row.sense) {
        case Sense::LessEqual: up = row.rhs; break;
        case Sense::GreaterEqual: lo = row.rhs; break;
        case Sense::Equal: lo = up = row.rhs; break;
    }

    // New inverse row: u^T B^{-1} in the old columns, -1 on the diagonal,
    // where u holds the row's coefficients on the current basic variables.
    double* fresh = binv_.data() + static_cast<std::size_t>(i) * cap_;
    std::fill(fresh, fresh + cap_, 0.0);
    double activity = 0.0;
    for (const Entry& e : entries) {
        activity += e.value * x_[e.index];
        int pos = where_[e.index];
        if (pos < 0) continue;
        const double* src = binv_row(pos);
        for (int c = 0; c < m_; ++c) fresh[c] += e.value * src[c];
    }
    for (int t = 0; t < m_; ++t) binv_row(t)[i] = 0.0;
    fresh[i] = -1.0;
    double norm = 0.0;
    for (int c = 0; c <= i; ++c) norm += fresh[c] * fresh[c];

    rows_.push_back(std::move(entries));
    cost_.push_back(0.0);
    lo_.push_back(lo);
    up_.push_back(up);
    x_.push_back(activity);
    d_.push_back(0.0);
    at_upper_.push_back(false);
    where_.push_back(i);
    head_.push_back(logical);
    weight_.push_back(norm);
    ++m_;
}

void DualSimplex::column(int var, std::vector<double>& out) const {
    out.assign(m_, 0.0);
    if (is_logical(var)) {
        const int i = var - ns_;
        for (int t = 0; t < m_; ++t) out[t] = -binv_row(t)[i];
        return;
    }
    for (const Entry& e : cols_[var])
        for (int t = 0; t < m_; ++t) out[t] += binv_row(t)[e.index] * e.value;
}

void DualSimplex::pivot_row(int pos, std::vector<double>& alpha) const {
    const int total = ns_ + m_;
    alpha.assign(total, 0.0);
    const double* rho = binv_row(pos);
    for (int i = 0; i < m_; ++i) {
        const double r = rho[i];
        if (r == 0.0) continue;
        for (const Entry& e : rows_[i]) alpha[e.index] += r * e.value;
        alpha[ns_ + i] = -r;
    }
}

void DualSimplex::update_inverse(int pos, const std::vector<double>& w) {
    double* prow = binv_row(pos);
    const double inv = 1.0 / w[pos];
    nz_.clear();
    double norm = 0.0;
    for (int c = 0; c < m_; ++c) {
        if (prow[c] == 0.0) continue;
        prow[c] *= inv;
        norm += prow[c] * prow[c];
        nz_.push_back(c);
    }
    weight_[pos] = norm;
    // Squared row norms follow |r - f p|^2 = |r|^2 - 2 f r.p + f^2 |p|^2;
    // refactor() recomputes them exactly.
    for (int t = 0; t < m_; ++t) {
        if (t == pos || w[t] == 0.0) continue;
        double* row = binv_row(t);
        const double f = w[t];
        double dot = 0.0;
        for (int c : nz_) {
            dot += row[c] * prow[c];
            row[c] -= f * prow[c];
        }
        weight_[t] = std::max(weight_[t] - 2.0 * f * dot + f * f * norm, 1e-12);
    }
}

void DualSimplex::factor_basis() {
    // Basic logicals contribute -e_i; only the block of structural basic
    // columns restricted to rows without a basic logical needs inverting.
    std::vector<int> structural_pos;
    std::vector<int> row_block(m_, -1);
    std::vector<bool> row_has_logical(m_, false);
    for (int t = 0; t < m_; ++t) {
        if (is_logical(head_[t])) row_has_logical[head_[t] - ns_] = true;
        else structural_pos.push_back(t);
    }
    std::vector<int> other_rows;
    for (int i = 0; i < m_; ++i)
        if (!row_has_logical[i]) {
            row_block[i] = static_cast<int>(other_rows.size());
            other_rows.push_back(i);
        }
    const int s = static_cast<int>(structural_pos.size());
    if (static_cast<int>(other_rows.size()) != s)
        throw NumericalFailure("basis has inconsistent logical structure");

    // Gauss-Jordan with partial pivoting on [M | I].
    std::vector<double> mat(static_cast<std::size_t>(s) * s, 0.0);
    std::vector<double> inv(static_cast<std::size_t>(s) * s, 0.0);
    for (int b = 0; b < s; ++b) {
        for (const Entry& e : cols_[head_[structural_pos[b]]]) {
            int a = row_block[e.index];
            if (a >= 0) mat[static_cast<std::size_t>(a) * s + b] = e.value;
        }
    }
    for (int a = 0; a < s; ++a) inv[static_cast<std::size_t>(a) * s + a] = 1.0;
    for (int col = 0; col < s; ++col) {
        int piv = col;
        double best = std::abs(mat[static_cast<std::size_t>(col) * s + col]);
        for (int a = col + 1; a < s; ++a) {
            double v = std::abs(mat[static_cast<std::size_t>(a) * s + col]);
            if (v > best) {
                best = v;
                piv = a;
            }
        }
        if (best < 1e-11) throw NumericalFailure("singular basis during refactorization");
        if (piv != col) {
            std::swap_ranges(mat.begin() + static_cast<std::ptrdiff_t>(piv) * s,
                             mat.begin() + static_cast<std::ptrdiff_t>(piv + 1) * s,
                             mat.begin() + static_cast<std::ptrdiff_t>(col) * s);
            std::swap_ranges(inv.begin() + static_cast<std::ptrdiff_t>(piv) * s,
                             inv.begin() + static_cast<std::ptrdiff_t>(piv + 1) * s,
                             inv.begin() + static_cast<std::ptrdiff_t>(col) * s);
        }
        double* mrow = mat.data() + static_cast<std::size_t>(col) * s;
        double* irow = inv.data() + static_cast<std::size_t>(col) * s;
        const double scale = 1.0 / mrow[col];
        for (int c = 0; c < s; ++c) {
            mrow[c] *= scale;
            irow[c] *= scale;
        }
        for (int a = 0; a < s; ++a) {
            if (a == col) continue;
            double* ma = mat.data() + static_cast<std::size_t>(a) * s;
            const double f = ma[col];
            if (f == 0.0) continue;
            double* ia = inv.data() + static_cast<std::size_t>(a) * s;
            for (int c = col; c < s; ++c) ma[c] -= f * mrow[c];
            for (int c = 0; c < s; ++c) ia[c] -= f * irow[c];
        }
    }
    // inv now maps row-block values to structural basic values: z_S = inv * v_O.

    for (int t = 0; t < m_; ++t) std::fill(binv_row(t), binv_row(t) + m_, 0.0);
    for (int b = 0; b < s; ++b) {
        double* row = binv_row(structural_pos[b]);
        const double* src = inv.data() + static_cast<std::size_t>(b) * s;
        for (int a = 0; a < s; ++a) row[other_rows[a]] = src[a];
    }
    std::vector<int> block_of_pos(m_, -1);
    for (int b = 0; b < s; ++b) block_of_pos[structural_pos[b]] = b;
    for (int t = 0; t < m_; ++t) {
        if (!is_logical(head_[t])) continue;
        const int i = head_[t] - ns_;
        double* row = binv_row(t);
        for (const Entry& e : rows_[i]) {
            int pos = where_[e.index];
            if (pos < 0) continue;
            const double* src = inv.data() + static_cast<std::size_t>(block_of_pos[pos]) * s;
            for (int a = 0; a < s; ++a) row[other_rows[a]] += e.value * src[a];
        }
        row[i] = -1.0;
    }
    for (int t = 0; t < m_; ++t) {
        const double* row = binv_row(t);
        double norm = 0.0;
        for (int c = 0; c < m_; ++c) norm += row[c] * row[c];
        weight_[t] = norm;
    }
    pivots_since_refactor_ = 0;
}

void DualSimplex::place_nonbasic() {
    const int total = ns_ + m_;
    for (int j = 0; j < total; ++j) {
        if (where_[j] >= 0) continue;
        const bool has_lo = std::isfinite(lo_[j]);
        const bool has_up = std::isfinite(up_[j]);
        if (has_lo && has_up) {
            // Reduced costs inside the dual tolerance keep their side; flipping
            // them on noise after a refactor can undo the last pivot forever.
            if (lo_[j] == up_[j]) at_upper_[j] = false;
            else if (d_[j] < -options_.dual_tolerance) at_upper_[j] = true;
            else if (d_[j] > options_.dual_tolerance) at_upper_[j] = false;
        } else {
            at_upper_[j] = has_up;
        }
        x_[j] = at_upper_[j] ? up_[j] : lo_[j];
    }
}

void DualSimplex::compute_primal() {
    // B x_B = -sum_{nonbasic structural} a_j x_j + sum_{nonbasic logical} e_i r_i
    std::vector<double> v(m_, 0.0);
    for (int j = 0; j < ns_; ++j) {
        if (where_[j] >= 0 || x_[j] == 0.0) continue;
        for (const Entry& e : cols_[j]) v[e.index] -= e.value * x_[j];
    }
    for (int i = 0; i < m_; ++i)
        if (where_[ns_ + i] < 0) v[i] += x_[ns_ + i];
    for (int t = 0; t < m_; ++t) {
        const double* row = binv_row(t);
        double s = 0.0;
        for (int c = 0; c < m_; ++c) s += row[c] * v[c];
        x_[head_[t]] = s;
    }
}

void DualSimplex::compute_duals() {
    std::vector<double> y(m_, 0.0);
    for (int t = 0; t < m_; ++t) {
        const double cb = cost_[head_[t]];
        if (cb == 0.0) continue;
        const double* row = binv_row(t);
        for (int c = 0; c < m_; ++c) y[c] += cb * row[c];
    }
    for (int j = 0; j < ns_; ++j) {
        double dj = cost_[j];
        for (const Entry& e : cols_[j]) dj -= y[e.index] * e.value;
        d_[j] = where_[j] >= 0 ? 0.0 : dj;
    }
    for (int i = 0; i < m_; ++i) d_[ns_ + i] = where_[ns_ + i] >= 0 ? 0.0 : y[i];
}

double DualSimplex::max_row_violation() const {
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
        double a = 0.0;
        for (const Entry& e : rows_[i]) a += e.value * std::clamp(x_[e.index], lo_[e.index], up_[e.index]);
        const int l = ns_ + i;
        worst = std::max({worst, lo_[l] - a, a - up_[l]});
    }
    return worst;
}

void DualSimplex::refactor() {
    try {
        factor_basis();
    } catch (const NumericalFailure&) {
        // All-logical basis: B^{-1} = -I. Boxed structurals make it dual
        // feasible once compute_duals/place_nonbasic run.
        for (int j = 0; j < ns_; ++j) where_[j] = -1;
        for (int t = 0; t < m_; ++t) {
            head_[t] = ns_ + t;
            where_[ns_ + t] = t;
            double* row = binv_row(t);
            std::fill(row, row + m_, 0.0);
            row[t] = -1.0;
            weight_[t] = 1.0;
        }
        pivots_since_refactor_ = 0;
    }
}

LpSolution DualSimplex::solve() {
    LpSolution sol;
    const double ptol = options_.primal_tolerance;
    const double dtol = options_.dual_tolerance;

    if (pivots_since_refactor_ > 0) {
        refactor();
        compute_duals();
    }
    place_nonbasic();
    compute_primal();

    std::vector<double> alpha;
    std::vector<double> w;
    bool bland = false;
    std::int64_t degenerate_run = 0;
    const std::int64_t degenerate_limit =
        static_cast<std::int64_t>(options_.bland_after_degenerate_factor) * (ns_ + m_);
    int numerical_retries = 0;

    auto restart = [&] {
        refactor();
        compute_duals();
        place_nonbasic();
        compute_primal();
    };

    while (true) {
        if (sol.iterations >= options_.iteration_limit) {
            sol.status = LpStatus::IterLimit;
            return sol;
        }
        if ((sol.iterations & 31) == 0 &&
            std::chrono::steady_clock::now() > options_.deadline) {
            sol.status = LpStatus::IterLimit;
            return sol;
        }
        if (pivots_since_refactor_ >= options_.refactor_interval) restart();

        // Leaving row: largest squared infeasibility over the steepest-edge
        // weight, or the lowest-index infeasible variable under Bland's rule.
        int r = -1;
        double best = 0.0;
        for (int t = 0; t < m_; ++t) {
            const int var = head_[t];
            const double v = x_[var];
            double infeas = 0.0;
            if (v < lo_[var] - ptol) infeas = lo_[var] - v;
            else if (v > up_[var] + ptol) infeas = v - up_[var];
            else continue;
            if (bland) {
                if (r < 0 || var < head_[r]) r = t;
            } else {
                double score = infeas * infeas / std::max(weight_[t], 1e-12);
                if (score > best) {
                    best = score;
                    r = t;
                }
            }
        }
        if (r < 0) {
            if (pivots_since_refactor_ > 0) {
                restart();
                continue;
            }
            if (max_row_violation() > kRowFeasibility) {
                if (++numerical_retries > 3) throw NumericalFailure("optimal basis violates rows");
                restart();
                continue;
            }
            break;
        }

        const int leaving = head_[r];
        const bool below = x_[leaving] < lo_[leaving];
        const double target = below ? lo_[leaving] : up_[leaving];
        const double sgn = below ? -1.0 : 1.0;

        pivot_row(r, alpha);

        // Ratio test (Harris two-pass; exact minimum under Bland).
        const int total = ns_ + m_;
        auto candidate = [&](int j, double& a) {
            if (where_[j] >= 0 || lo_[j] == up_[j]) return false;
            a = sgn * alpha[j];
            if (!at_upper_[j]) return a > kPivotTolerance;
            return a < -kPivotTolerance;
        };
        int q = -1;
        double a_q = 0.0;
        if (bland) {
            double best_ratio = kInf;
            for (int j = 0; j < total; ++j) {
                double a;
                if (!candidate(j, a)) continue;
                double ratio = std::max(0.0, d_[j] / a);
                if (ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    q = j;
                    a_q = a;
                }
            }
        } else {
            double theta_max = kInf;
            for (int j = 0; j < total; ++j) {
                double a;
                if (!candidate(j, a)) continue;
                double bound = a > 0 ? (d_[j] + dtol) / a : (d_[j] - dtol) / a;
                theta_max = std::min(theta_max, bound);
            }
            double best_abs = 0.0;
            for (int j = 0; j < total; ++j) {
                double a;
                if (!candidate(j, a)) continue;
                if (d_[j] / a > theta_max) continue;
                if (std::abs(a) > best_abs) {
                    best_abs = std::abs(a);
                    q = j;
                    a_q = a;
                }
            }
        }
        if (q < 0) {
            if (pivots_since_refactor_ > 0) {
                restart();
                continue;
            }
            sol.status = LpStatus::Infeasible;
            return sol;
        }

        column(q, w);
        const double pivot = w[r];
        if (std::abs(pivot) < 1e-11 ||
            std::abs(pivot - alpha[q]) > 1e-7 * (1.0 + std::abs(pivot))) {
            if (pivots_since_refactor_ > 0 && ++numerical_retries <= 5) {
                restart();
                continue;
            }
            throw NumericalFailure("unstable pivot element");
        }

        const double theta = std::max(0.0, d_[q] / a_q);
        if (theta > 0.0) {
            for (int j = 0; j < total; ++j)
                if (where_[j] < 0) d_[j] -= theta * sgn * alpha[j];
        }
        d_[q] = 0.0;
        d_[leaving] = -theta * sgn;

        const double step = (x_[leaving] - target) / pivot;
        for (int t = 0; t < m_; ++t)
            if (w[t] != 0.0) x_[head_[t]] -= step * w[t];
        x_[q] += step;
        x_[leaving] = target;

        update_inverse(r, w);
        where_[q] = r;
        where_[leaving] = -1;
        head_[r] = q;
        at_upper_[leaving] = !below;
        at_upper_[q] = false;

        ++sol.iterations;
        ++total_iterations_;
        ++pivots_since_refactor_;
        if (theta <= 1e-12) {
            if (++degenerate_run > degenerate_limit) bland = true;
        } else {
            degenerate_run = 0;
        }
    }

    sol.status = LpStatus::Optimal;
    sol.x.resize(ns_);
    double obj = 0.0;
    for (int j = 0; j < ns_; ++j) {
        sol.x[j] = std::clamp(x_[j], lo_[j], up_[j]);
        obj += cost_[j] * sol.x[j];
    }
    sol.objective = obj;
    return sol;
}

int DualSimplex::purge_rows(int first) {
    std::vector<int> new_row(m_, -1);
    int kept = 0;
    for (int i = 0; i < m_; ++i)
        if (i < first || where_[ns_ + i] < 0) new_row[i] = kept++;
    const int removed = m_ - kept;
    if (removed == 0) return 0;

    // Positions and inverse columns only move down, so compaction in
    // ascending order never overwrites unread entries.
    int tp = 0;
    for (int t = 0; t < m_; ++t) {
        const int var = head_[t];
        if (is_logical(var) && new_row[var - ns_] < 0) continue;
        const double* src = binv_row(t);
        double* dst = binv_row(tp);
        for (int c = 0; c < m_; ++c)
            if (new_row[c] >= 0) dst[new_row[c]] = src[c];
        weight_[tp] = weight_[t];
        head_[tp] = is_logical(var) ? ns_ + new_row[var - ns_] : var;
        ++tp;
    }
    head_.resize(kept);
    weight_.resize(kept);

    for (int i = 0; i < m_; ++i) {
        const int to = new_row[i];
        if (to < 0 || to == i) continue;
        rows_[to] = std::move(rows_[i]);
        const int from_var = ns_ + i, to_var = ns_ + to;
        cost_[to_var] = cost_[from_var];
        lo_[to_var] = lo_[from_var];
        up_[to_var] = up_[from_var];
        x_[to_var] = x_[from_var];
        d_[to_var] = d_[from_var];
        at_upper_[to_var] = at_upper_[from_var];
    }
    rows_.resize(kept);
    const std::size_t total = static_cast<std::size_t>(ns_ + kept);
    cost_.resize(total);
    lo_.resize(total);
    up_.resize(total);
    x_.resize(total);
    d_.resize(total);
    at_upper_.resize(total);
    where_.assign(total, -1);
    for (int t = 0; t < kept; ++t) where_[head_[t]] = t;

    for (auto& col : cols_) {
        std::size_t out = 0;
        for (const Entry& e : col)
            if (new_row[e.index] >= 0) col[out++] = {new_row[e.index], e.value};
        col.resize(out);
    }
    m_ = kept;
    return removed;
}

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
    DualSimplex lp(model, options);
    return lp.solve();
}

}  // namespace domp
