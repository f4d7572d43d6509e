#include "gprank/branching.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "gprank/alias.hpp"
#include "gprank/kernels.hpp"
#include "parallel.hpp"

namespace gprank {

std::string_view to_string(LawProvenance p) {
    switch (p) {
        case LawProvenance::dcm_empirical: return "dcm_empirical";
        case LawProvenance::dcm_analytic: return "dcm_analytic";
        case LawProvenance::ird_empirical: return "ird_empirical";
        case LawProvenance::ird_analytic: return "ird_analytic";
        case LawProvenance::custom: return "custom";
    }
    return "unknown";
}

BranchingLaw::BranchingLaw(RootSampler root, GenericSampler generic, LawProvenance provenance)
    : root_(std::move(root)), generic_(std::move(generic)), provenance_(provenance) {
    if (!root_ || !generic_) throw std::invalid_argument("BranchingLaw: both samplers are required");
}

namespace {

struct TypeTable {
    std::vector<VertexAttributes> attrs;
    AliasTable size_biased;
};

std::shared_ptr<const TypeTable> make_table(std::span<const VertexAttributes> attrs, const char* what) {
    if (attrs.empty()) throw std::invalid_argument(std::string(what) + ": empty attribute sequence");
    std::vector<double> weights(attrs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        weights[i] = attrs[i].out_param;
        total += weights[i];
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument(std::string(what) + ": all out-parameters are zero, no size-biased law exists");
    }
    return std::make_shared<const TypeTable>(
        TypeTable{std::vector<VertexAttributes>(attrs.begin(), attrs.end()), AliasTable(weights)});
}

std::uint32_t uniform_vertex(const TypeTable& t, RandomStream& rng) {
    return static_cast<std::uint32_t>(rng.below(t.attrs.size()));
}

}  // namespace

BranchingLaw law_from_dcm(std::span<const VertexAttributes> attrs) {
    auto table = make_table(attrs, "law_from_dcm");
    auto root = [table](RandomStream& rng) {
        const auto& a = table->attrs[uniform_vertex(*table, rng)];
        return RootDraw{static_cast<std::uint64_t>(a.in_param), a.q};
    };
    auto generic = [table](RandomStream& rng) {
        const auto& a = table->attrs[table->size_biased.sample(rng)];
        return GenericDraw{static_cast<std::uint64_t>(a.in_param), a.q, a.zeta / std::max(a.out_param, 1.0)};
    };
    return {root, generic, LawProvenance::dcm_empirical};
}

BranchingLaw law_from_ird(std::span<const VertexAttributes> attrs, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("theta: must be positive and finite");
    auto table = make_table(attrs, "law_from_ird");
    double in_sum = 0.0;
    double out_sum = 0.0;
    for (const auto& a : table->attrs) {
        in_sum += a.in_param;
        out_sum += a.out_param;
    }
    const double n = static_cast<double>(table->attrs.size());
    const double in_rate = (out_sum / n) / theta;   // N rate per unit W-
    const double out_rate = (in_sum / n) / theta;   // Z+ rate per unit W+
    auto root = [table, in_rate](RandomStream& rng) {
        const auto& a = table->attrs[uniform_vertex(*table, rng)];
        return RootDraw{rng.poisson(in_rate * a.in_param), a.q};
    };
    auto generic = [table, in_rate, out_rate](RandomStream& rng) {
        const auto& a = table->attrs[table->size_biased.sample(rng)];
        const std::uint64_t n_draw = rng.poisson(in_rate * a.in_param);
        const std::uint64_t z_out = rng.poisson(out_rate * a.out_param);
        return GenericDraw{n_draw, a.q, a.zeta / (static_cast<double>(z_out) + 1.0)};
    };
    return {root, generic, LawProvenance::ird_empirical};
}

double mean_floor_pareto(double index, double scale) {
    if (!(index > 1.0) || !(scale > 0.0)) throw std::invalid_argument("mean_floor_pareto: need index > 1, scale > 0");
    // E[floor W] = sum_{k>=1} P(W >= k); P = 1 for k <= scale.
    constexpr double kTerms = 2'000'000.0;
    const double first = std::floor(scale) + 1.0;
    double total = std::floor(scale);
    const double log_scale = std::log(scale);
    for (double k = first; k <= kTerms; k += 1.0) total += std::exp(-index * (std::log(k) - log_scale));
    // Integral remainder with midpoint correction.
    const double tail_start = std::max(first, kTerms + 1.0) - 0.5;
    total += std::pow(scale, index) * std::pow(tail_start, 1.0 - index) / (index - 1.0);
    return total;
}

namespace {

// Size-biasing a Pareto(index, scale) by its value gives Pareto(index - 1, scale).
double size_biased_pareto(RandomStream& rng, double index, double scale) { return rng.pareto(index - 1.0, scale); }

double coupled_in(const AttributeSequenceConfig& cfg, double out_weight) {
    return cfg.b * std::pow(out_weight / cfg.c_scale, cfg.beta / cfg.alpha);
}

struct WeightPair {
    double in;
    double out;
};

WeightPair draw_weights(const AttributeSequenceConfig& cfg, RandomStream& rng) {
    const double in = rng.pareto(cfg.alpha, cfg.b);
    const double out = cfg.dependence == Dependence::independent ? rng.pareto(cfg.beta, cfg.c_scale) : cfg.coupled_out(in);
    return {in, out};
}

// Weights with the out-weight size-biased by itself.
WeightPair draw_size_biased_weights(const AttributeSequenceConfig& cfg, RandomStream& rng) {
    const double out = size_biased_pareto(rng, cfg.beta, cfg.c_scale);
    const double in = cfg.dependence == Dependence::independent ? rng.pareto(cfg.alpha, cfg.b) : coupled_in(cfg, out);
    return {in, out};
}

}  // namespace

BranchingLaw law_from_dcm(const AttributeSequenceConfig& config) {
    config.validate();
    const AttributeSequenceConfig cfg = config;
    const double q = cfg.q();
    const double zeta = cfg.zeta();
    if (cfg.degree_mode == DegreeMode::floor) {
        const double mean_in = mean_floor_pareto(cfg.alpha, cfg.b);
        const double mean_out = mean_floor_pareto(cfg.beta, cfg.c_scale);
        if (std::fabs(mean_in - mean_out) > 0.01 * std::max(mean_in, mean_out)) {
            throw std::invalid_argument("degree_mode: floor degrees have unbalanced means E[D-]=" +
                                        std::to_string(mean_in) + " vs E[D+]=" + std::to_string(mean_out) +
                                        "; use mixed_poisson for this parameter set");
        }
        auto root = [cfg, q](RandomStream& rng) {
            return RootDraw{static_cast<std::uint64_t>(std::floor(rng.pareto(cfg.alpha, cfg.b))), q};
        };
        auto generic = [cfg, q, zeta](RandomStream& rng) {
            // Bias by floor(W+): propose from the W+-biased law, accept with floor(W+)/W+.
            for (;;) {
                const WeightPair w = draw_size_biased_weights(cfg, rng);
                const double out_degree = std::floor(w.out);
                if (rng.uniform() * w.out < out_degree) {
                    return GenericDraw{static_cast<std::uint64_t>(std::floor(w.in)), q, zeta / std::max(out_degree, 1.0)};
                }
            }
        };
        return {root, generic, LawProvenance::dcm_analytic};
    }
    if (cfg.degree_mode != DegreeMode::mixed_poisson) {
        throw std::invalid_argument("degree_mode: analytic DCM law needs floor or mixed_poisson degrees");
    }
    const double theta = cfg.theta();
    const double in_rate = cfg.mean_out_weight() / theta;
    const double out_rate = cfg.mean_in_weight() / theta;
    auto root = [cfg, q, in_rate](RandomStream& rng) {
        const WeightPair w = draw_weights(cfg, rng);
        return RootDraw{rng.poisson(in_rate * w.in), q};
    };
    auto generic = [cfg, q, zeta, in_rate, out_rate](RandomStream& rng) {
        // D+ mixed Poisson with mean proportional to W+: its size-biased version
        // is 1 + Poisson(rate) under the W+-biased weight law.
        const WeightPair w = draw_size_biased_weights(cfg, rng);
        const double out_degree = 1.0 + static_cast<double>(rng.poisson(out_rate * w.out));
        return GenericDraw{rng.poisson(in_rate * w.in), q, zeta / out_degree};
    };
    return {root, generic, LawProvenance::dcm_analytic};
}

BranchingLaw law_from_ird(const AttributeSequenceConfig& config, std::optional<double> theta_override) {
    config.validate();
    const AttributeSequenceConfig cfg = config;
    const double theta = theta_override.value_or(cfg.theta());
    if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("theta: must be positive and finite");
    const double q = cfg.q();
    const double zeta = cfg.zeta();
    const double in_rate = cfg.mean_out_weight() / theta;
    const double out_rate = cfg.mean_in_weight() / theta;
    auto root = [cfg, q, in_rate](RandomStream& rng) {
        const WeightPair w = draw_weights(cfg, rng);
        return RootDraw{rng.poisson(in_rate * w.in), q};
    };
    auto generic = [cfg, q, zeta, in_rate, out_rate](RandomStream& rng) {
        const WeightPair w = draw_size_biased_weights(cfg, rng);
        const std::uint64_t n_draw = rng.poisson(in_rate * w.in);
        const std::uint64_t z_out = rng.poisson(out_rate * w.out);
        return GenericDraw{n_draw, q, zeta / (static_cast<double>(z_out) + 1.0)};
    };
    return {root, generic, LawProvenance::ird_analytic};
}

namespace {

constexpr std::size_t kChunk = 4096;

std::uint64_t chunk_stream_id(std::uint64_t generation, std::size_t chunk) { return (generation << 32) ^ chunk; }

}  // namespace

FixedPointPool population_dynamics(const BranchingLaw& law, const PopulationOptions& options, RandomStream& rng) {
    if (options.pool_size < 1) throw std::invalid_argument("pool: pool size must be at least 1");
    if (options.pool_size >= (std::size_t{1} << 31)) throw std::invalid_argument("pool: pool size must be below 2^31");
    if (options.generations < 0) throw std::invalid_argument("gens: generations must be non-negative");

    const std::size_t size = options.pool_size;
    const std::uint64_t base = rng();
    const std::size_t chunks = (size + kChunk - 1) / kChunk;

    FixedPointPool result;
    std::vector<double> previous(size, 0.0);
    std::vector<double> next(size, 0.0);
    std::vector<double> chunk_rho(chunks);
    double rho_total = 0.0;
    std::uint64_t draws = 0;

    for (int gen = 0; gen < options.generations; ++gen) {
        detail::for_each_chunk(size, kChunk, options.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
            RandomStream local(base, chunk_stream_id(static_cast<std::uint64_t>(gen) + 1, c));
            std::vector<std::uint32_t> picks;
            double rho = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const GenericDraw g = law.sample_generic(local);
                picks.resize(g.n);
                for (auto& p : picks) p = static_cast<std::uint32_t>(local.below(size));
                next[i] = g.c * (g.q + kernels::gather_sum(previous, picks));
                rho += static_cast<double>(g.n) * std::fabs(g.c);
            }
            chunk_rho[c] = rho;
        });
        for (double r : chunk_rho) rho_total += r;
        draws += size;
        std::swap(previous, next);

        const double mean = kernels::sum(previous) / static_cast<double>(size);
        if (!std::isfinite(mean) || std::fabs(mean) > kDivergenceLevel) {
            throw std::runtime_error("population dynamics diverged at generation " + std::to_string(gen + 1) +
                                     " (pool mean " + std::to_string(mean) + ", rho_1 estimate " +
                                     std::to_string(rho_total / static_cast<double>(draws)) +
                                     "); the law needs E[N|C|] < 1");
        }
    }
    result.samples = std::move(previous);
    result.generation = options.generations;
    result.rho1_estimate = draws > 0 ? rho_total / static_cast<double>(draws) : 0.0;
    result.rho1_warning = result.rho1_estimate >= kRho1WarningLevel;
    return result;
}

EmpiricalDistribution sample_r_star(const BranchingLaw& law, const FixedPointPool& pool, std::size_t count,
                                    RandomStream& rng, unsigned workers) {
    if (pool.samples.empty()) throw std::invalid_argument("sample_r_star: empty pool");
    const std::uint64_t base = rng();
    const std::size_t size = pool.samples.size();
    std::vector<double> out(count);
    detail::for_each_chunk(count, kChunk, workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        RandomStream local(base, chunk_stream_id(0, c));
        std::vector<std::uint32_t> picks;
        for (std::size_t i = begin; i < end; ++i) {
            const RootDraw r = law.sample_root(local);
            picks.resize(r.n0);
            for (auto& p : picks) p = static_cast<std::uint32_t>(local.below(size));
            out[i] = r.q0 + kernels::gather_sum(pool.samples, picks);
        }
    });
    return EmpiricalDistribution(std::move(out));
}

TreeRank simulate_tree_rank(const BranchingLaw& law, int depth, RandomStream& rng, std::uint64_t node_budget) {
    if (depth < 0) throw std::invalid_argument("depth: must be non-negative");
    const RootDraw root = law.sample_root(rng);
    TreeRank result{root.q0, TreeStatus::ok, 1};

    // Frontier groups: (weight of the parent, number of children still to draw).
    struct Group {
        double parent_weight;
        std::uint64_t children;
    };
    std::vector<Group> frontier{{1.0, root.n0}};
    std::vector<Group> next;
    for (int level = 1; level <= depth; ++level) {
        std::uint64_t live = 0;
        for (const Group& g : frontier) live += g.children;
        if (live == 0) break;
        if (live > node_budget) {
            result.status = TreeStatus::budget_exceeded;
            return result;
        }
        next.clear();
        for (const Group& g : frontier) {
            for (std::uint64_t k = 0; k < g.children; ++k) {
                const GenericDraw d = law.sample_generic(rng);
                const double weight = g.parent_weight * d.c;
                result.value += weight * d.q;
                ++result.nodes;
                if (level < depth && d.n > 0 && weight != 0.0) next.push_back({weight, d.n});
            }
        }
        std::swap(frontier, next);
    }
    return result;
}

}  // namespace gprank
