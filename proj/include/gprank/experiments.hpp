#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gprank/branching.hpp"
#include "gprank/graphgen.hpp"
#include "gprank/pagerank.hpp"

namespace gprank {

enum class GraphModel { ird, dcm };
enum class ThetaMode { empirical, analytic };

std::string_view to_string(GraphModel m);
GraphModel graph_model_from_string(std::string_view s);

struct ConvergenceSettings {
    std::vector<std::size_t> n_values{100, 1'000, 10'000};
    int seeds = 10;
    std::size_t pool_size = 100'000;
    /// Population generations; 0 means "same as the PageRank iterations".
    int generations = 0;
    std::size_t rstar_samples = 100'000;
};

struct TailSettings {
    double k_fraction = kDefaultHillFraction;
    int graphs = 5;
    std::size_t draws = 1'000'000;
    std::vector<double> grid{0.1, 0.01, 0.001};
    std::size_t pool_size = 100'000;
};

/// Everything needed to rerun an experiment; mirrors the JSON config file.
struct ExperimentConfig {
    GraphModel model = GraphModel::ird;
    DcmMode dcm_mode = DcmMode::multigraph;
    AttributeSequenceConfig attributes;
    ThetaMode theta = ThetaMode::empirical;
    int iterations = kDefaultPagerankIterations;
    double top_fraction = 0.05;
    int replications = 20;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    ConvergenceSettings convergence;
    TailSettings tail;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Parses a config document; unknown keys and bad values throw
/// std::invalid_argument naming the field.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

/// Attribute sampling + graph construction for one replication.
/// Repeated DCM that exhausts its attempts throws std::runtime_error.
DiGraph generate_graph(const ExperimentConfig& config, RandomStream& rng);

/// Edge scale used for the IRD under the config's theta mode.
double ird_theta(const ExperimentConfig& config, const std::vector<VertexAttributes>& attrs);

/// Empirical branching law matching a generated graph's attribute table.
BranchingLaw empirical_law(const ExperimentConfig& config, const DiGraph& graph);

// Venn regions of (A, B, C), in table order.
inline constexpr std::array<std::string_view, 8> kVennRegions{
    "A∩B∩C", "A∩B∩Cᶜ", "Aᶜ∩B∩C", "A∩Bᶜ∩C", "A∩Bᶜ∩Cᶜ", "Aᶜ∩B∩Cᶜ", "Aᶜ∩Bᶜ∩C", "(A∪B∪C)ᶜ"};
inline constexpr std::array<std::string_view, 3> kHOverlaps{"A∩H", "A∩Hᶜ", "Aᶜ∩H"};

struct VennCounts {
    std::size_t n = 0;
    std::array<std::size_t, 8> regions{};
    std::array<std::size_t, 3> h_overlap{};
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t size_c = 0;
    std::size_t size_h = 0;
};

struct VennResult {
    std::array<double, 8> cell_percentages{};
    std::array<double, 3> h_overlap{};
    int replications = 0;
    std::vector<VennCounts> per_replication;

    [[nodiscard]] double cell(std::string_view label) const;
    [[nodiscard]] double overlap(std::string_view label) const;
    /// Average |C| as a percentage of n.
    [[nodiscard]] double c_percentage() const;
};

/// Sets for one ranked graph: A = top fraction by rank, B = top fraction by
/// in-degree with all threshold ties, H = top fraction by C_i R_i, C =
/// vertices with an in-neighbor in H. A and H break ties by vertex index.
VennCounts venn_counts(const DiGraph& graph, const RankVector& ranks, double top_fraction);

VennResult run_venn(const ExperimentConfig& config);
nlohmann::json to_json(const VennResult& result);

struct ConvergenceRow {
    std::size_t n = 0;
    double mean_distance = 0.0;
    double standard_error = 0.0;
    std::vector<double> distances;
};

/// d1 between the empirical rank distribution and simulated R* for each n,
/// averaged over `convergence.seeds` seeds.
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config);
nlohmann::json to_json(const std::vector<ConvergenceRow>& rows);

struct TailStudy {
    // Power-law hypothesis on generated graphs.
    std::vector<double> hill_rank;
    std::vector<double> hill_in_degree;
    double mean_abs_difference = 0.0;
    double hill_r_star = 0.0;
    double hill_pool = 0.0;
    // P(CN > x)/P(N0 > x) for the power-coupled version of the config.
    std::vector<std::pair<double, double>> degeneracy_ratio;
    // Size-biased N against the root law N0.
    double hill_size_biased_n = 0.0;
    double hill_root_n0 = 0.0;
    std::vector<std::pair<double, double>> size_bias_ratio;
};

TailStudy run_tail(const ExperimentConfig& config);
nlohmann::json to_json(const TailStudy& study);

}  // namespace gprank
