#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gprank/graph.hpp"
#include "gprank/graphgen.hpp"
#include "gprank/random.hpp"
#include "gprank/stats.hpp"

namespace gprank {

/// Root of the tree: in-degree N0 and personalization Q0 of a uniform vertex.
struct RootDraw {
    std::uint64_t n0 = 0;
    double q0 = 0.0;
};

/// Non-root node: offspring count N, personalization Q and edge weight C.
struct GenericDraw {
    std::uint64_t n = 0;
    double q = 0.0;
    double c = 0.0;
};

enum class LawProvenance { dcm_empirical, dcm_analytic, ird_empirical, ird_analytic, custom };

std::string_view to_string(LawProvenance p);

/**
 * Sampler pair for the limit laws of a marked delayed Galton-Watson tree.
 *
 * The samplers are immutable after construction and may be shared between
 * threads; each caller brings its own RandomStream.
 */
class BranchingLaw {
public:
    using RootSampler = std::function<RootDraw(RandomStream&)>;
    using GenericSampler = std::function<GenericDraw(RandomStream&)>;

    BranchingLaw(RootSampler root, GenericSampler generic, LawProvenance provenance = LawProvenance::custom);

    RootDraw sample_root(RandomStream& rng) const { return root_(rng); }
    GenericDraw sample_generic(RandomStream& rng) const { return generic_(rng); }
    [[nodiscard]] LawProvenance provenance() const { return provenance_; }

private:
    RootSampler root_;
    GenericSampler generic_;
    LawProvenance provenance_;
};

/// DCM law from a degree table: root picks a uniform vertex, generic picks a
/// vertex with probability D+_s / L_n and emits (D-_s, Q_s, zeta_s/(D+_s v 1)).
/// Throws std::invalid_argument if all out-degrees are zero.
BranchingLaw law_from_dcm(std::span<const VertexAttributes> attrs);

/// DCM law from the Pareto attribute law (degree_mode floor or mixed_poisson).
/// With floor degrees the two mean degrees must agree within 1%.
BranchingLaw law_from_dcm(const AttributeSequenceConfig& config);

/// IRD law from a type table with edge scale theta: root N0 ~ Poisson(E[W+] W-/theta),
/// generic picks s with probability proportional to W+_s and emits
/// N ~ Poisson(E[W+] W-_s/theta), C = zeta_s/(Z+ + 1), Z+ ~ Poisson(E[W-] W+_s/theta).
BranchingLaw law_from_ird(std::span<const VertexAttributes> attrs, double theta);

/// IRD law from the Pareto attribute law; theta defaults to E[W- + W+].
BranchingLaw law_from_ird(const AttributeSequenceConfig& config, std::optional<double> theta = std::nullopt);

/// E[floor(W)] for W Pareto(index, scale).
double mean_floor_pareto(double index, double scale);

struct FixedPointPool {
    std::vector<double> samples;
    int generation = 0;
    /// Monte Carlo estimate of rho_1 = E[N |C|] over every generic draw made.
    double rho1_estimate = 0.0;
    /// rho1_estimate >= 0.98.
    bool rho1_warning = false;
};

struct PopulationOptions {
    std::size_t pool_size = 100'000;
    int generations = 20;
    unsigned workers = 1;
};

inline constexpr double kRho1WarningLevel = 0.98;
inline constexpr double kDivergenceLevel = 1e12;

/**
 * Population dynamics for X = C Q + sum_{j<=N} C X_j.
 *
 * Starts from the zero pool and applies the recursion `generations` times,
 * each new entry using a fresh (N, Q, C) and N entries of the previous pool
 * drawn uniformly with replacement. Work is cut into fixed chunks with
 * their own split streams, so the result does not depend on `workers`.
 * Throws std::runtime_error if the pool mean exceeds 1e12 in magnitude.
 */
FixedPointPool population_dynamics(const BranchingLaw& law, const PopulationOptions& options, RandomStream& rng);

/// m draws of R* = Q0 + sum_{j<=N0} X_j with X_j resampled from the pool.
EmpiricalDistribution sample_r_star(const BranchingLaw& law, const FixedPointPool& pool, std::size_t count,
                                    RandomStream& rng, unsigned workers = 1);

enum class TreeStatus { ok, budget_exceeded };

struct TreeRank {
    double value = 0.0;
    TreeStatus status = TreeStatus::ok;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// One draw of R^(k): grows the weighted tree to depth k explicitly and
/// returns sum of Pi_j Q_j. Aborts the draw when a generation would hold
/// more than `node_budget` nodes.
TreeRank simulate_tree_rank(const BranchingLaw& law, int depth, RandomStream& rng,
                            std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace gprank
