#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "domp/instance.hpp"
#include "domp/models.hpp"
#include "domp/separation.hpp"

namespace domp::testing {

/// The 3x3 matrix used throughout: c = [[0,4,7],[4,0,3],[7,3,0]].
inline Instance small3(std::vector<double> lambda = {1, 1, 1}, int p = 1) {
    return Instance("small3", 3, p, {0, 4, 7, 4, 0, 3, 7, 3, 0}, std::move(lambda));
}

/// n = 2, c = [[0,5],[6,0]]: ranks (0,0)->0, (1,1)->1, (0,1)->2, (1,0)->3.
inline Instance tiny2(int p = 1) {
    return Instance("tiny2", 2, p, {0, 5, 6, 0}, {1, 1});
}

/// Random point satisfying the assignment and position rows: a random
/// p-subset, a random open site per client and a random client order.
inline Point random_base_point(int n, int p, std::mt19937_64& rng) {
    std::vector<int> sites(n);
    std::iota(sites.begin(), sites.end(), 0);
    std::shuffle(sites.begin(), sites.end(), rng);
    sites.resize(p);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Point pt;
    pt.n = n;
    pt.x.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    pt.y.assign(n, 0.0);
    for (int j : sites) pt.y[j] = 1.0;
    std::uniform_int_distribution<int> pick(0, p - 1);
    const VarLayout layout(n);
    for (int k = 0; k < n; ++k) {
        const int i = order[k];
        pt.x[layout.x(i, sites[pick(rng)], k)] = 1.0;
    }
    pt.is_integral = true;
    return pt;
}

/// Convex combination of a few random base points.
inline Point random_fractional_point(int n, int p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> parts(2, 4);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    const int m = parts(rng);
    std::vector<double> w(m);
    for (double& v : w) v = weight(rng);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    Point out;
    out.n = n;
    out.x.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    out.y.assign(n, 0.0);
    for (int t = 0; t < m; ++t) {
        Point q = random_base_point(n, p, rng);
        for (std::size_t a = 0; a < q.x.size(); ++a) out.x[a] += w[t] / total * q.x[a];
        for (std::size_t a = 0; a < q.y.size(); ++a) out.y[a] += w[t] / total * q.y[a];
    }
    out.is_integral = false;
    return out;
}

/// Flat engine vector of a point.
inline std::vector<double> flatten(const Point& pt) {
    std::vector<double> flat = pt.x;
    flat.insert(flat.end(), pt.y.begin(), pt.y.end());
    return flat;
}

}  // namespace domp::testing
