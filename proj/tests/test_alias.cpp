#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gprank/alias.hpp"

using namespace gprank;

TEST_CASE("alias table encodes the normalized weights") {
    const std::vector<double> w{3.0, 1.0};
    const AliasTable t(w);
    CHECK(t.probability(0) == doctest::Approx(0.75));
    CHECK(t.probability(1) == doctest::Approx(0.25));
    RandomStream rng(1);
    const int draws = 400000;
    int zero = 0;
    for (int i = 0; i < draws; ++i) zero += t.sample(rng) == 0;
    CHECK(std::fabs(zero / double(draws) - 0.75) < 4 * std::sqrt(0.75 * 0.25 / draws));
}

TEST_CASE("zero weights are never drawn") {
    const std::vector<double> w{0.0, 2.0, 0.0, 5.0, 0.0};
    const AliasTable t(w);
    RandomStream rng(2);
    for (int i = 0; i < 10000; ++i) {
        const auto k = t.sample(rng);
        REQUIRE((k == 1 || k == 3));
    }
    double total = 0.0;
    for (std::uint32_t i = 0; i < w.size(); ++i) total += t.probability(i);
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("invalid weights are rejected") {
    CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, NAN}), std::invalid_argument);
}
