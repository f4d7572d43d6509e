#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gprank/random.hpp"

namespace gprank {

/// Walker/Vose alias table: O(1) draws from a fixed discrete law
/// proportional to non-negative weights.
class AliasTable {
public:
    AliasTable() = default;
    /// Throws std::invalid_argument if the weights are empty, negative,
    /// non-finite or all zero.
    explicit AliasTable(std::span<const double> weights);

    [[nodiscard]] std::size_t size() const { return prob_.size(); }
    [[nodiscard]] std::uint32_t sample(RandomStream& rng) const;
    /// Probability of index i implied by the table (for testing).
    [[nodiscard]] double probability(std::uint32_t i) const;

private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace gprank
