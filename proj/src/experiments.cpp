#include "gprank/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "gprank/stats.hpp"
#include "parallel.hpp"

namespace gprank {

std::string_view to_string(GraphModel m) { return m == GraphModel::ird ? "ird" : "dcm"; }

GraphModel graph_model_from_string(std::string_view s) {
    if (s == "ird") return GraphModel::ird;
    if (s == "dcm") return GraphModel::dcm;
    throw std::invalid_argument("model: expected ird|dcm, got '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
    attributes.validate();
    if (model == GraphModel::ird && attributes.degree_mode != DegreeMode::weights) {
        throw std::invalid_argument("degree_mode: the IRD uses real weights (degree_mode must be weights)");
    }
    if (model == GraphModel::dcm && attributes.degree_mode == DegreeMode::weights) {
        throw std::invalid_argument("degree_mode: the DCM needs integer degrees (floor or mixed_poisson)");
    }
    if (iterations < 1) throw std::invalid_argument("iterations: must be at least 1");
    if (!(top_fraction > 0.0 && top_fraction < 0.5)) throw std::invalid_argument("top_fraction: must lie in (0, 0.5)");
    if (replications < 1) throw std::invalid_argument("replications: must be at least 1");
    if (convergence.n_values.empty()) throw std::invalid_argument("convergence.n_values: must not be empty");
    for (std::size_t i = 0; i < convergence.n_values.size(); ++i) {
        if (convergence.n_values[i] < 2) throw std::invalid_argument("convergence.n_values: entries must be >= 2");
        if (i > 0 && convergence.n_values[i] <= convergence.n_values[i - 1]) {
            throw std::invalid_argument("convergence.n_values: must be strictly increasing");
        }
    }
    if (convergence.seeds < 1) throw std::invalid_argument("convergence.seeds: must be at least 1");
    if (convergence.pool_size < 1) throw std::invalid_argument("convergence.pool: must be at least 1");
    if (convergence.generations < 0) throw std::invalid_argument("convergence.generations: must be >= 0");
    if (convergence.rstar_samples < 1) throw std::invalid_argument("convergence.rstar: must be at least 1");
    if (!(tail.k_fraction > 0.0 && tail.k_fraction < 1.0)) throw std::invalid_argument("tail.k_frac: must lie in (0, 1)");
    if (tail.graphs < 1) throw std::invalid_argument("tail.graphs: must be at least 1");
    if (tail.draws < 10) throw std::invalid_argument("tail.draws: must be at least 10");
    if (tail.pool_size < 1) throw std::invalid_argument("tail.pool: must be at least 1");
    for (double p : tail.grid) {
        if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("tail.grid: probabilities must lie in (0, 0.5)");
    }
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& scope) {
    if (!obj.is_object()) throw std::invalid_argument((scope.empty() ? "config" : scope) + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw std::invalid_argument((scope.empty() ? "" : scope + ".") + item.key() + ": unknown field");
        }
    }
}

template <class T>
void read_field(const json& obj, const char* key, T& out, const std::string& scope = "") {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument((scope.empty() ? "" : scope + ".") + key + ": wrong type");
    }
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& doc) {
    reject_unknown(doc,
                   {"model", "dcm_mode", "n", "alpha", "b", "beta", "c_scale", "dependence", "degree_mode", "damping",
                    "q_value", "zeta_value", "theta", "iterations", "top_fraction", "replications", "seed", "workers",
                    "convergence", "tail"},
                   "");
    ExperimentConfig cfg;
    std::string text;
    if (doc.contains("model")) {
        read_field(doc, "model", text);
        cfg.model = graph_model_from_string(text);
    }
    if (doc.contains("dcm_mode")) {
        read_field(doc, "dcm_mode", text);
        cfg.dcm_mode = dcm_mode_from_string(text);
    }
    auto& a = cfg.attributes;
    read_field(doc, "n", a.n);
    read_field(doc, "alpha", a.alpha);
    read_field(doc, "b", a.b);
    read_field(doc, "beta", a.beta);
    read_field(doc, "c_scale", a.c_scale);
    read_field(doc, "damping", a.damping);
    if (doc.contains("q_value")) {
        double q = 0.0;
        read_field(doc, "q_value", q);
        a.q_value = q;
    }
    if (doc.contains("zeta_value")) {
        double z = 0.0;
        read_field(doc, "zeta_value", z);
        a.zeta_value = z;
    }
    if (doc.contains("dependence")) {
        read_field(doc, "dependence", text);
        a.dependence = dependence_from_string(text);
    }
    a.degree_mode = cfg.model == GraphModel::dcm ? DegreeMode::floor : DegreeMode::weights;
    if (doc.contains("degree_mode")) {
        read_field(doc, "degree_mode", text);
        a.degree_mode = degree_mode_from_string(text);
    }
    if (doc.contains("theta")) {
        read_field(doc, "theta", text);
        if (text == "empirical") cfg.theta = ThetaMode::empirical;
        else if (text == "analytic") cfg.theta = ThetaMode::analytic;
        else throw std::invalid_argument("theta: expected empirical|analytic");
    }
    read_field(doc, "iterations", cfg.iterations);
    read_field(doc, "top_fraction", cfg.top_fraction);
    read_field(doc, "replications", cfg.replications);
    read_field(doc, "seed", cfg.seed);
    read_field(doc, "workers", cfg.workers);
    if (doc.contains("convergence")) {
        const json& c = doc.at("convergence");
        reject_unknown(c, {"n_values", "seeds", "pool", "generations", "rstar"}, "convergence");
        read_field(c, "n_values", cfg.convergence.n_values, "convergence");
        read_field(c, "seeds", cfg.convergence.seeds, "convergence");
        read_field(c, "pool", cfg.convergence.pool_size, "convergence");
        read_field(c, "generations", cfg.convergence.generations, "convergence");
        read_field(c, "rstar", cfg.convergence.rstar_samples, "convergence");
    }
    if (doc.contains("tail")) {
        const json& t = doc.at("tail");
        reject_unknown(t, {"k_frac", "graphs", "draws", "grid", "pool"}, "tail");
        read_field(t, "k_frac", cfg.tail.k_fraction, "tail");
        read_field(t, "graphs", cfg.tail.graphs, "tail");
        read_field(t, "draws", cfg.tail.draws, "tail");
        read_field(t, "grid", cfg.tail.grid, "tail");
        read_field(t, "pool", cfg.tail.pool_size, "tail");
    }
    cfg.validate();
    return cfg;
}

json to_json(const ExperimentConfig& cfg) {
    const auto& a = cfg.attributes;
    json doc = {{"model", std::string(to_string(cfg.model))},
                {"dcm_mode", std::string(to_string(cfg.dcm_mode))},
                {"n", a.n},
                {"alpha", a.alpha},
                {"b", a.b},
                {"beta", a.beta},
                {"c_scale", a.c_scale},
                {"dependence", std::string(to_string(a.dependence))},
                {"degree_mode", std::string(to_string(a.degree_mode))},
                {"damping", a.damping},
                {"q_value", a.q()},
                {"zeta_value", a.zeta()},
                {"theta", cfg.theta == ThetaMode::empirical ? "empirical" : "analytic"},
                {"iterations", cfg.iterations},
                {"top_fraction", cfg.top_fraction},
                {"replications", cfg.replications},
                {"seed", cfg.seed},
                {"convergence",
                 {{"n_values", cfg.convergence.n_values},
                  {"seeds", cfg.convergence.seeds},
                  {"pool", cfg.convergence.pool_size},
                  {"generations", cfg.convergence.generations},
                  {"rstar", cfg.convergence.rstar_samples}}},
                {"tail",
                 {{"k_frac", cfg.tail.k_fraction},
                  {"graphs", cfg.tail.graphs},
                  {"draws", cfg.tail.draws},
                  {"grid", cfg.tail.grid},
                  {"pool", cfg.tail.pool_size}}}};
    return doc;
}

double ird_theta(const ExperimentConfig& config, const std::vector<VertexAttributes>& attrs) {
    return config.theta == ThetaMode::analytic ? config.attributes.theta() : empirical_theta(attrs);
}

DiGraph generate_graph(const ExperimentConfig& config, RandomStream& rng) {
    std::vector<VertexAttributes> attrs = sample_attributes(config.attributes, rng);
    if (config.model == GraphModel::ird) {
        const double theta = ird_theta(config, attrs);
        return build_ird(std::move(attrs), theta, rng);
    }
    DcmResult result = build_dcm(std::move(attrs), config.dcm_mode, rng);
    if (result.status == DcmStatus::attempts_exhausted) {
        throw std::runtime_error("repeated DCM found no simple realization in " + std::to_string(result.attempts) +
                                 " attempts");
    }
    return std::move(result.graph);
}

BranchingLaw empirical_law(const ExperimentConfig& config, const DiGraph& graph) {
    const auto& attrs = graph.attributes();
    if (config.model == GraphModel::dcm) return law_from_dcm(attrs);
    return law_from_ird(attrs, ird_theta(config, attrs));
}

namespace {

std::size_t top_count(std::size_t n, double fraction) {
    const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

// Exactly k vertices with the largest scores; equal scores favor the lower index.
std::vector<bool> top_by_score(const std::vector<double>& score, std::size_t k) {
    std::vector<VertexId> order(score.size());
    std::iota(order.begin(), order.end(), 0U);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](VertexId x, VertexId y) { return score[x] > score[y] || (score[x] == score[y] && x < y); });
    std::vector<bool> in(score.size(), false);
    for (std::size_t i = 0; i < k; ++i) in[order[i]] = true;
    return in;
}

}  // namespace

VennCounts venn_counts(const DiGraph& graph, const RankVector& ranks, double top_fraction) {
    const std::size_t n = graph.size();
    if (ranks.values.size() != n) throw std::invalid_argument("venn_counts: rank vector length mismatch");
    if (n == 0) throw std::invalid_argument("venn_counts: empty graph");
    const std::size_t k = top_count(n, top_fraction);

    const std::vector<bool> a = top_by_score(ranks.values, k);

    std::vector<std::size_t> in_degree = graph.in_degrees();
    std::vector<std::size_t> sorted = in_degree;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end(),
                     std::greater<>());
    const std::size_t threshold = sorted[k - 1];

    const std::vector<double> weights = contribution_weights(graph, graph.attributes());
    std::vector<double> contribution(n);
    for (std::size_t i = 0; i < n; ++i) contribution[i] = weights[i] * ranks.values[i];
    const std::vector<bool> h = top_by_score(contribution, k);

    std::vector<bool> c(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (!h[v]) continue;
        for (VertexId w : graph.out_neighbors(static_cast<VertexId>(v))) c[w] = true;
    }

    VennCounts counts;
    counts.n = n;
    for (std::size_t v = 0; v < n; ++v) {
        const bool in_a = a[v];
        const bool in_b = in_degree[v] >= threshold;
        const bool in_c = c[v];
        int region = 0;
        if (in_a && in_b && in_c) region = 0;
        else if (in_a && in_b) region = 1;
        else if (in_b && in_c) region = 2;
        else if (in_a && in_c) region = 3;
        else if (in_a) region = 4;
        else if (in_b) region = 5;
        else if (in_c) region = 6;
        else region = 7;
        ++counts.regions[static_cast<std::size_t>(region)];
        if (in_a && h[v]) ++counts.h_overlap[0];
        if (in_a && !h[v]) ++counts.h_overlap[1];
        if (!in_a && h[v]) ++counts.h_overlap[2];
        counts.size_a += in_a;
        counts.size_b += in_b;
        counts.size_c += in_c;
        counts.size_h += h[v];
    }
    return counts;
}

double VennResult::cell(std::string_view label) const {
    for (std::size_t i = 0; i < kVennRegions.size(); ++i) {
        if (kVennRegions[i] == label) return cell_percentages[i];
    }
    throw std::invalid_argument("unknown Venn region: " + std::string(label));
}

double VennResult::overlap(std::string_view label) const {
    for (std::size_t i = 0; i < kHOverlaps.size(); ++i) {
        if (kHOverlaps[i] == label) return h_overlap[i];
    }
    throw std::invalid_argument("unknown H overlap: " + std::string(label));
}

double VennResult::c_percentage() const {
    double total = 0.0;
    for (const auto& r : per_replication) total += 100.0 * static_cast<double>(r.size_c) / static_cast<double>(r.n);
    return per_replication.empty() ? 0.0 : total / static_cast<double>(per_replication.size());
}

VennResult run_venn(const ExperimentConfig& config) {
    config.validate();
    VennResult result;
    result.replications = config.replications;
    result.per_replication.resize(static_cast<std::size_t>(config.replications));
    detail::for_each_chunk(result.per_replication.size(), 1, config.workers, [&](std::size_t r, std::size_t, std::size_t) {
        try {
            RandomStream rng(config.seed, r);
            const DiGraph graph = generate_graph(config, rng);
            const RankVector ranks = compute_pagerank(graph, config.attributes.damping, config.iterations);
            result.per_replication[r] = venn_counts(graph, ranks, config.top_fraction);
        } catch (const std::exception& e) {
            throw std::runtime_error("replication " + std::to_string(r) + ": " + e.what());
        }
    });
    for (const auto& counts : result.per_replication) {
        const double n = static_cast<double>(counts.n);
        for (std::size_t i = 0; i < 8; ++i) result.cell_percentages[i] += 100.0 * static_cast<double>(counts.regions[i]) / n;
        for (std::size_t i = 0; i < 3; ++i) result.h_overlap[i] += 100.0 * static_cast<double>(counts.h_overlap[i]) / n;
    }
    const double reps = static_cast<double>(config.replications);
    for (double& x : result.cell_percentages) x /= reps;
    for (double& x : result.h_overlap) x /= reps;
    return result;
}

json to_json(const VennResult& result) {
    json cells = json::object();
    for (std::size_t i = 0; i < 8; ++i) cells[std::string(kVennRegions[i])] = result.cell_percentages[i];
    json overlap = json::object();
    for (std::size_t i = 0; i < 3; ++i) overlap[std::string(kHOverlaps[i])] = result.h_overlap[i];
    json reps = json::array();
    for (const auto& c : result.per_replication) {
        reps.push_back({{"n", c.n},
                        {"regions", c.regions},
                        {"h_overlap", c.h_overlap},
                        {"size_a", c.size_a},
                        {"size_b", c.size_b},
                        {"size_c", c.size_c},
                        {"size_h", c.size_h}});
    }
    return {{"cell_percentages", cells},
            {"h_overlap", overlap},
            {"c_percentage", result.c_percentage()},
            {"replications", result.replications},
            {"region_order", kVennRegions},
            {"per_replication", reps}};
}

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config) {
    config.validate();
    const auto& settings = config.convergence;
    std::vector<ConvergenceRow> rows;
    for (std::size_t index = 0; index < settings.n_values.size(); ++index) {
        ConvergenceRow row;
        row.n = settings.n_values[index];
        row.distances.assign(static_cast<std::size_t>(settings.seeds), 0.0);
        ExperimentConfig local = config;
        local.attributes.n = row.n;
        detail::for_each_chunk(row.distances.size(), 1, config.workers, [&](std::size_t s, std::size_t, std::size_t) {
            RandomStream rng(config.seed, ((index + 1) << 24) | s);
            const DiGraph graph = generate_graph(local, rng);
            const RankVector ranks = compute_pagerank(graph, local.attributes.damping, local.iterations);
            const EmpiricalDistribution graph_ranks(ranks.values);
            const BranchingLaw law = empirical_law(local, graph);
            PopulationOptions options;
            options.pool_size = settings.pool_size;
            options.generations = settings.generations > 0 ? settings.generations : local.iterations;
            const FixedPointPool pool = population_dynamics(law, options, rng);
            const EmpiricalDistribution limit = sample_r_star(law, pool, settings.rstar_samples, rng);
            row.distances[s] = wasserstein1(graph_ranks, limit);
        });
        const double seeds = static_cast<double>(settings.seeds);
        row.mean_distance = std::accumulate(row.distances.begin(), row.distances.end(), 0.0) / seeds;
        double ss = 0.0;
        for (double d : row.distances) ss += (d - row.mean_distance) * (d - row.mean_distance);
        row.standard_error = settings.seeds > 1 ? std::sqrt(ss / (seeds - 1.0) / seeds) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const std::vector<ConvergenceRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"n", r.n}, {"d1_mean", r.mean_distance}, {"d1_stderr", r.standard_error}, {"d1", r.distances}});
    }
    return out;
}

namespace {

BranchingLaw analytic_law(const ExperimentConfig& config, const AttributeSequenceConfig& attrs) {
    if (config.model == GraphModel::ird) {
        return law_from_ird(attrs);
    }
    AttributeSequenceConfig dcm = attrs;
    dcm.degree_mode = DegreeMode::mixed_poisson;
    return law_from_dcm(dcm);
}

double hill_of(std::vector<double> values, double fraction) {
    EmpiricalDistribution d(std::move(values));
    return hill_index(d, hill_k_for_fraction(d.count(), fraction)).hill_index;
}

}  // namespace

TailStudy run_tail(const ExperimentConfig& config) {
    config.validate();
    const auto& settings = config.tail;
    TailStudy study;
    study.hill_rank.resize(static_cast<std::size_t>(settings.graphs));
    study.hill_in_degree.resize(static_cast<std::size_t>(settings.graphs));
    std::vector<std::vector<double>> first_pool(1);
    std::vector<double> r_star_hill(1);
    detail::for_each_chunk(study.hill_rank.size(), 1, config.workers, [&](std::size_t g, std::size_t, std::size_t) {
        RandomStream rng(config.seed, 0xA000'0000ULL + g);
        const DiGraph graph = generate_graph(config, rng);
        const RankVector ranks = compute_pagerank(graph, config.attributes.damping, config.iterations);
        std::vector<double> in_degree(graph.size());
        for (std::size_t v = 0; v < graph.size(); ++v) in_degree[v] = static_cast<double>(graph.in_degree(static_cast<VertexId>(v)));
        study.hill_rank[g] = hill_of(ranks.values, settings.k_fraction);
        study.hill_in_degree[g] = hill_of(std::move(in_degree), settings.k_fraction);
        if (g == 0) {
            const BranchingLaw law = empirical_law(config, graph);
            PopulationOptions options;
            options.pool_size = settings.pool_size;
            options.generations = config.iterations;
            const FixedPointPool pool = population_dynamics(law, options, rng);
            const EmpiricalDistribution r_star = sample_r_star(law, pool, settings.pool_size, rng);
            r_star_hill[0] = hill_index(r_star, hill_k_for_fraction(r_star.count(), settings.k_fraction)).hill_index;
            first_pool[0] = pool.samples;
        }
    });
    double diff = 0.0;
    for (std::size_t g = 0; g < study.hill_rank.size(); ++g) diff += std::fabs(study.hill_rank[g] - study.hill_in_degree[g]);
    study.mean_abs_difference = diff / static_cast<double>(study.hill_rank.size());
    study.hill_r_star = r_star_hill[0];
    study.hill_pool = hill_of(first_pool[0], settings.k_fraction);

    // Degeneracy of the neighbor contribution under power coupling.
    {
        AttributeSequenceConfig coupled = config.attributes;
        coupled.dependence = Dependence::power_coupled;
        const BranchingLaw law = analytic_law(config, coupled);
        RandomStream rng(config.seed, 0xB000'0000ULL);
        std::vector<double> cn(settings.draws);
        std::vector<double> n0(settings.draws);
        for (std::size_t i = 0; i < settings.draws; ++i) {
            const GenericDraw g = law.sample_generic(rng);
            cn[i] = g.c * static_cast<double>(g.n);
            n0[i] = static_cast<double>(law.sample_root(rng).n0);
        }
        study.degeneracy_ratio =
            tail_ratio(EmpiricalDistribution(std::move(cn)), EmpiricalDistribution(std::move(n0)), settings.grid);
    }
    // Size-biased offspring count against the root in-degree.
    {
        const BranchingLaw law = analytic_law(config, config.attributes);
        RandomStream rng(config.seed, 0xC000'0000ULL);
        std::vector<double> n(settings.draws);
        std::vector<double> n0(settings.draws);
        for (std::size_t i = 0; i < settings.draws; ++i) {
            n[i] = static_cast<double>(law.sample_generic(rng).n);
            n0[i] = static_cast<double>(law.sample_root(rng).n0);
        }
        EmpiricalDistribution biased(std::move(n));
        EmpiricalDistribution root(std::move(n0));
        study.hill_size_biased_n = hill_index(biased, hill_k_for_fraction(biased.count(), settings.k_fraction)).hill_index;
        study.hill_root_n0 = hill_index(root, hill_k_for_fraction(root.count(), settings.k_fraction)).hill_index;
        study.size_bias_ratio = tail_ratio(biased, root, settings.grid);
    }
    return study;
}

json to_json(const TailStudy& s) {
    auto curve = [](const std::vector<std::pair<double, double>>& c) {
        json out = json::array();
        for (const auto& [x, r] : c) out.push_back({{"x", x}, {"ratio", r}});
        return out;
    };
    return {{"hill_rank", s.hill_rank},
            {"hill_in_degree", s.hill_in_degree},
            {"mean_abs_difference", s.mean_abs_difference},
            {"hill_r_star", s.hill_r_star},
            {"hill_pool", s.hill_pool},
            {"degeneracy_ratio", curve(s.degeneracy_ratio)},
            {"hill_size_biased_n", s.hill_size_biased_n},
            {"hill_root_n0", s.hill_root_n0},
            {"size_bias_ratio", curve(s.size_bias_ratio)}};
}

}  // namespace gprank
