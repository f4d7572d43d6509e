#include "gprank/alias.hpp"

#include <cmath>
#include <stdexcept>

namespace gprank {

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty weight vector");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("AliasTable: weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("AliasTable: all weights are zero");

    prob_.resize(n);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::uint32_t l : large) {
        prob_[l] = 1.0;
        alias_[l] = l;
    }
    // Leftovers from round-off.
    for (std::uint32_t s : small) {
        prob_[s] = 1.0;
        alias_[s] = s;
    }
}

std::uint32_t AliasTable::sample(RandomStream& rng) const {
    const auto column = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[column] ? column : alias_[column];
}

double AliasTable::probability(std::uint32_t i) const {
    const double n = static_cast<double>(prob_.size());
    double p = prob_[i] / n;
    for (std::size_t k = 0; k < prob_.size(); ++k) {
        if (k != i && alias_[k] == i) p += (1.0 - prob_[k]) / n;
    }
    return p;
}

}  // namespace gprank
