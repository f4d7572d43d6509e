#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gprank {

/// Sorted sample; the empirical distribution function it defines.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    /// Sorts `samples`. Throws std::invalid_argument on NaN.
    explicit EmpiricalDistribution(std::vector<double> samples);

    [[nodiscard]] std::span<const double> sorted_samples() const { return sorted_; }
    [[nodiscard]] std::size_t count() const { return sorted_.size(); }
    [[nodiscard]] bool empty() const { return sorted_.empty(); }

    /// Left-continuous inverse of the ECDF: smallest x with F(x) >= p.
    [[nodiscard]] double quantile(double p) const;
    /// Fraction of samples strictly greater than x.
    [[nodiscard]] double survival(double x) const;
    [[nodiscard]] double mean() const;
    /// Standard error of the mean.
    [[nodiscard]] double standard_error() const;

private:
    std::vector<double> sorted_;
};

/// Integral of |F_a - F_b| over the real line (Kantorovich-Rubinstein distance).
/// Throws std::invalid_argument if either distribution is empty.
double wasserstein1(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct TailReport {
    double hill_index = 0.0;
    std::size_t k_used = 0;
    std::vector<std::pair<double, double>> ratio_curve;
};

inline constexpr double kDefaultHillFraction = 0.025;

/// Hill estimator on the k largest order statistics:
/// k / sum_{i=1..k} log(x_(n-i+1) / x_(n-k)).
/// Throws std::invalid_argument unless 1 <= k < count, the window
/// x_(n-k..n) is strictly positive and the log-spacings are not all zero.
TailReport hill_index(const EmpiricalDistribution& d, std::size_t k);

/// k = ceil(fraction * count), clamped to [1, count - 1].
std::size_t hill_k_for_fraction(std::size_t count, double fraction);

/// For each p: x = reference (1-p)-quantile and ratio = P_sample(X > x) / p.
/// Throws std::invalid_argument for p outside (0, 0.5).
std::vector<std::pair<double, double>> tail_ratio(const EmpiricalDistribution& sample,
                                                  const EmpiricalDistribution& reference,
                                                  std::span<const double> quantile_grid);

}  // namespace gprank
