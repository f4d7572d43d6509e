#pragma once

// Reference computations used as test oracles. They deliberately avoid the
// library's own algorithms (no sorting-based transport, no alias tables).

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

struct Moments {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline Moments moments(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return {m, std::sqrt(ss / (n - 1.0) / n)};
}

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
/// potentials form). Returns the optimal total cost.
inline double assignment_cost(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

/// Optimal transport cost between two uniform empirical measures with cost
/// |x - y|: every atom is split into unit masses over a common denominator
/// and the resulting assignment problem is solved exactly.
inline double transport_cost(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t total = std::lcm(a.size(), b.size());
    std::vector<double> left;
    std::vector<double> right;
    for (double x : a) left.insert(left.end(), total / a.size(), x);
    for (double y : b) right.insert(right.end(), total / b.size(), y);
    std::vector<std::vector<double>> cost(total, std::vector<double>(total));
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) cost[i][j] = std::fabs(left[i] - right[j]);
    }
    return assignment_cost(cost) / static_cast<double>(total);
}

/// Exact Pareto quantiles at the midpoints (i + 0.5)/n.
inline std::vector<double> pareto_grid(std::size_t n, double index, double scale) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        x[i] = scale * std::pow(1.0 - u, -1.0 / index);
    }
    return x;
}

}  // namespace oracle
