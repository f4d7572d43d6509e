#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gprank/kernels.hpp"
#include "gprank/random.hpp"
#include "gprank/stats.hpp"
#include "oracles.hpp"

using namespace gprank;

namespace {

double w1(const std::vector<double>& a, const std::vector<double>& b) {
    return wasserstein1(EmpiricalDistribution(a), EmpiricalDistribution(b));
}

std::vector<double> random_atoms(RandomStream& rng, std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = std::round(rng.uniform() * 40.0) / 4.0 - 3.0;
    return x;
}

}  // namespace

TEST_CASE("empirical distribution basics") {
    const EmpiricalDistribution d(std::vector<double>{3.0, 1.0, 2.0, 2.0});
    CHECK(d.count() == 4);
    CHECK(d.sorted_samples()[0] == 1.0);
    CHECK(d.quantile(0.25) == 1.0);
    CHECK(d.quantile(0.5) == 2.0);
    CHECK(d.quantile(1.0) == 3.0);
    CHECK(d.survival(2.0) == 0.25);
    CHECK(d.survival(0.0) == 1.0);
    CHECK(d.mean() == 2.0);
    CHECK_THROWS_AS(EmpiricalDistribution(std::vector<double>{1.0, NAN}), std::invalid_argument);
}

TEST_CASE("hand-worked Wasserstein distances") {
    CHECK(w1({0.0}, {1.0}) == 1.0);
    CHECK(w1({0.0, 1.0}, {0.0, 0.0, 1.0, 1.0}) == 0.0);
    CHECK(w1({0.0, 2.0}, {1.0}) == 1.0);
    CHECK(w1({1.0, 5.0, 2.0}, {1.0, 5.0, 2.0}) == 0.0);
    CHECK_THROWS_AS(wasserstein1(EmpiricalDistribution(), EmpiricalDistribution(std::vector<double>{1.0})),
                    std::invalid_argument);
}

TEST_CASE("Wasserstein matches the assignment-problem oracle") {
    RandomStream rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_atoms(rng, 1 + rng.below(6));
        const auto b = random_atoms(rng, 1 + rng.below(6));
        worst = std::max(worst, std::fabs(w1(a, b) - oracle::transport_cost(a, b)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("Wasserstein metric axioms on random triples") {
    RandomStream rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.below(20);
        std::vector<double> a(n), b(n), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform() * 10;
            b[i] = rng.uniform() * 10;
            c[i] = rng.uniform() * 10;
        }
        const double ab = w1(a, b), ba = w1(b, a), bc = w1(b, c), ac = w1(a, c);
        REQUIRE(ab == ba);
        REQUIRE(w1(a, a) == 0.0);
        REQUIRE(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("translation equivariance") {
    RandomStream rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(7), b(5);
        for (auto& x : a) x = std::round(rng.uniform() * 64) / 8;
        for (auto& x : b) x = std::round(rng.uniform() * 64) / 8;
        const double t = std::round((rng.uniform() - 0.5) * 32) / 4;
        auto at = a, bt = b;
        for (auto& x : at) x += t;
        for (auto& x : bt) x += t;
        CHECK(w1(at, bt) == w1(a, b));
        CHECK(std::fabs(w1(at, b) - w1(a, b)) <= std::fabs(t) + 1e-12);
    }
}

TEST_CASE("paired and merged paths agree and the kernels agree") {
    RandomStream rng(4);
    std::vector<double> a(1000), b(1000);
    for (auto& x : a) x = rng.pareto(1.5, 1.0);
    for (auto& x : b) x = rng.pareto(2.0, 1.0);
    // Duplicating every sample of b leaves its distribution unchanged but forces the merged path.
    std::vector<double> b2 = b;
    b2.insert(b2.end(), b.begin(), b.end());
    CHECK(w1(a, b) == doctest::Approx(w1(a, b2)).epsilon(1e-12));
    if (kernels::isa_supported(kernels::Isa::avx2)) {
        double s = 0.0, v = 0.0;
        {
            kernels::ScopedIsa g(kernels::Isa::scalar);
            s = w1(a, b);
        }
        {
            kernels::ScopedIsa g(kernels::Isa::avx2);
            v = w1(a, b);
        }
        CHECK(s == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("Hill estimator on an exact Pareto grid") {
    const auto grid = oracle::pareto_grid(100000, 1.5, 1.0);
    const EmpiricalDistribution d(grid);
    const TailReport r = hill_index(d, 2500);
    CHECK(r.k_used == 2500);
    CHECK(std::fabs(r.hill_index - 1.5) <= 3 * 1.5 / std::sqrt(2500.0));
    CHECK(hill_k_for_fraction(100000, kDefaultHillFraction) == 2500);
}

TEST_CASE("Hill estimator is scale invariant and rejects degenerate input") {
    RandomStream rng(5);
    std::vector<double> x(5000);
    for (auto& v : x) v = rng.pareto(2.0, 3.0);
    auto scaled = x;
    for (auto& v : scaled) v *= 8.0;  // power of two keeps every log ratio exact
    CHECK(hill_index(EmpiricalDistribution(x), 100).hill_index ==
          hill_index(EmpiricalDistribution(scaled), 100).hill_index);
    const EmpiricalDistribution flat(std::vector<double>(100, 4.0));
    CHECK_THROWS_AS(hill_index(flat, 10), std::invalid_argument);
    const EmpiricalDistribution negative(std::vector<double>{-3.0, -2.0, -1.0, 0.0});
    CHECK_THROWS_AS(hill_index(negative, 2), std::invalid_argument);
    CHECK_THROWS_AS(hill_index(EmpiricalDistribution(x), 0), std::invalid_argument);
    CHECK_THROWS_AS(hill_index(EmpiricalDistribution(x), x.size()), std::invalid_argument);
}

TEST_CASE("tail ratio self-comparison and domination") {
    RandomStream rng(6);
    const std::size_t n = 200000;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = rng.pareto(1.5, 1.0);
    for (auto& v : y) v = 2.0 * rng.pareto(1.5, 1.0);
    const EmpiricalDistribution dx(x), dy(y);
    const std::vector<double> grid{0.1, 0.01, 0.001};
    const auto self = tail_ratio(dx, dx, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid[i];
        CHECK(std::fabs(self[i].second - 1.0) <= 3 * std::sqrt((1 - p) / (p * n)));
    }
    const auto dom = tail_ratio(dy, dx, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(dom[i].second >= 1.0 - 3 * std::sqrt(1 / (grid[i] * n)));
    }
    const std::vector<double> bad{0.6};
    CHECK_THROWS_AS(tail_ratio(dx, dx, bad), std::invalid_argument);
}
