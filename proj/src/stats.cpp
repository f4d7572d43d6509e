#include "gprank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "gprank/kernels.hpp"

namespace gprank {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (std::any_of(sorted_.begin(), sorted_.end(), [](double x) { return std::isnan(x); })) {
        throw std::invalid_argument("EmpiricalDistribution: NaN sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::quantile(double p) const {
    if (sorted_.empty()) throw std::invalid_argument("quantile: empty distribution");
    const double n = static_cast<double>(sorted_.size());
    auto idx = static_cast<long long>(std::ceil(p * n)) - 1;
    idx = std::clamp<long long>(idx, 0, static_cast<long long>(sorted_.size()) - 1);
    return sorted_[static_cast<std::size_t>(idx)];
}

double EmpiricalDistribution::survival(double x) const {
    if (sorted_.empty()) return 0.0;
    const auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::mean() const {
    if (sorted_.empty()) throw std::invalid_argument("mean: empty distribution");
    return kernels::sum(sorted_) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::standard_error() const {
    const std::size_t n = sorted_.size();
    if (n < 2) return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double x : sorted_) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

double wasserstein1(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein1: both distributions must be non-empty");
    const auto xs = a.sorted_samples();
    const auto ys = b.sorted_samples();
    if (xs.size() == ys.size()) {
        // Quantile coupling: paired order statistics.
        return kernels::l1_distance(xs, ys) / static_cast<double>(xs.size());
    }
    // Sweep the merged step functions; |F_a - F_b| = |i*nb - j*na| / (na*nb).
    const auto na = static_cast<std::int64_t>(xs.size());
    const auto nb = static_cast<std::int64_t>(ys.size());
    std::int64_t i = 0;
    std::int64_t j = 0;
    double area = 0.0;
    double prev = std::min(xs.front(), ys.front());
    while (i < na || j < nb) {
        const double x = (j >= nb || (i < na && xs[i] <= ys[j])) ? xs[i] : ys[j];
        const std::int64_t gap = i * nb - j * na;
        area += static_cast<double>(gap < 0 ? -gap : gap) * (x - prev);
        while (i < na && xs[i] == x) ++i;
        while (j < nb && ys[j] == x) ++j;
        prev = x;
    }
    return area / (static_cast<double>(na) * static_cast<double>(nb));
}

std::size_t hill_k_for_fraction(std::size_t count, double fraction) {
    if (count < 2) throw std::invalid_argument("hill: need at least two samples");
    if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("k-frac: must lie in (0, 1)");
    auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(count)));
    return std::clamp<std::size_t>(k, 1, count - 1);
}

TailReport hill_index(const EmpiricalDistribution& d, std::size_t k) {
    const std::size_t n = d.count();
    if (k < 1 || k >= n) {
        throw std::invalid_argument("hill: k must satisfy 1 <= k < count (k=" + std::to_string(k) +
                                    ", count=" + std::to_string(n) + ")");
    }
    const auto s = d.sorted_samples();
    const double threshold = s[n - k - 1];
    if (!(threshold > 0.0)) throw std::invalid_argument("hill: top-k window contains non-positive samples");
    double total = 0.0;
    for (std::size_t i = n - k; i < n; ++i) total += std::log(s[i] / threshold);
    if (!(total > 0.0)) throw std::invalid_argument("hill: zero log-spacings in the top-k window (tail index undefined)");
    return {static_cast<double>(k) / total, k, {}};
}

std::vector<std::pair<double, double>> tail_ratio(const EmpiricalDistribution& sample,
                                                  const EmpiricalDistribution& reference,
                                                  std::span<const double> quantile_grid) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(quantile_grid.size());
    for (double p : quantile_grid) {
        if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("tail_ratio: grid probabilities must lie in (0, 0.5)");
        const double x = reference.quantile(1.0 - p);
        curve.emplace_back(x, sample.survival(x) / p);
    }
    return curve;
}

}  // namespace gprank
