#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gprank/graph.hpp"
#include "gprank/random.hpp"

namespace gprank {

enum class Dependence { independent, power_coupled };

/// How sampled Pareto weights become vertex attributes.
enum class DegreeMode {
    weights,        ///< keep real weights (IRD types)
    floor,          ///< DCM degrees floor(W), then half-edge repair
    mixed_poisson,  ///< DCM degrees Poisson(E[W+]W-/theta), Poisson(E[W-]W+/theta), then repair
};

std::string_view to_string(Dependence d);
Dependence dependence_from_string(std::string_view s);
std::string_view to_string(DegreeMode m);
DegreeMode degree_mode_from_string(std::string_view s);

/**
 * Pareto-type attribute law.
 *
 * In-parameter: P(W- > x) = (x/b)^(-alpha), x >= b. Out-parameter: either an
 * independent Pareto(beta, c_scale) or the deterministic coupling
 * W+ = c_scale * (W-/b)^(alpha/beta), which has the same marginal.
 */
struct AttributeSequenceConfig {
    std::size_t n = 10'000;
    double alpha = 1.5;
    double b = 8.0;
    double beta = 2.5;
    double c_scale = 12.0;
    Dependence dependence = Dependence::independent;
    DegreeMode degree_mode = DegreeMode::weights;
    double damping = 0.85;
    std::optional<double> q_value;     ///< defaults to 1 - damping
    std::optional<double> zeta_value;  ///< defaults to damping

    [[nodiscard]] double q() const { return q_value.value_or(1.0 - damping); }
    [[nodiscard]] double zeta() const { return zeta_value.value_or(damping); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    [[nodiscard]] double mean_in_weight() const { return b * alpha / (alpha - 1.0); }
    [[nodiscard]] double mean_out_weight() const { return c_scale * beta / (beta - 1.0); }
    /// theta = E[W- + W+].
    [[nodiscard]] double theta() const { return mean_in_weight() + mean_out_weight(); }
    /// Limiting mean degree E[W-]E[W+]/theta of the IRD.
    [[nodiscard]] double mean_degree() const { return mean_in_weight() * mean_out_weight() / theta(); }

    /// Out-parameter coupled to a given in-parameter (power_coupled mode).
    [[nodiscard]] double coupled_out(double in_weight) const;
};

/// n i.i.d. attribute draws; DCM modes are integer and half-edge balanced.
std::vector<VertexAttributes> sample_attributes(const AttributeSequenceConfig& config, RandomStream& rng);

/// Equalize total in- and out-degree by adding units on the deficient side:
/// floor(|delta|/n) to every vertex, then one more at |delta| mod n vertices
/// chosen uniformly without replacement.
void balance_half_edges(std::vector<VertexAttributes>& attrs, RandomStream& rng);

enum class DcmMode { multigraph, repeated, erased };
std::string_view to_string(DcmMode m);
DcmMode dcm_mode_from_string(std::string_view s);

enum class DcmStatus { ok, attempts_exhausted };

struct DcmResult {
    DiGraph graph;
    DcmStatus status = DcmStatus::ok;
    int attempts = 1;
};

inline constexpr int kDefaultDcmAttempts = 100;

/// Directed configuration model: the i-th inbound half-edge is paired with
/// the x_i-th outbound half-edge for a uniform permutation x.
DcmResult build_dcm(std::vector<VertexAttributes> attrs, DcmMode mode, RandomStream& rng,
                    int max_attempts = kDefaultDcmAttempts);

enum class IrdSampling { automatic, quadratic, skip };

/// Vertex counts above this use skip sampling under IrdSampling::automatic.
inline constexpr std::size_t kIrdQuadraticLimit = 100'000;

/// Edge i->j, i != j, present independently with probability
/// min(1, W_i+ W_j- / (theta n)).
DiGraph build_ird(std::vector<VertexAttributes> attrs, double theta, RandomStream& rng,
                  IrdSampling sampling = IrdSampling::automatic);

/// Empirical mean of W- + W+.
double empirical_theta(const std::vector<VertexAttributes>& attrs);

/// Sum over ordered pairs i != j of min(1, W_i+ W_j- / (theta n)).
double expected_ird_edges(const std::vector<VertexAttributes>& attrs, double theta);

}  // namespace gprank
