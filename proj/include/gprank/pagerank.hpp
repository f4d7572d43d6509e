#pragma once

#include <span>
#include <vector>

#include "gprank/graph.hpp"

namespace gprank {

/// Scale-free ranks R_i together with how they were computed.
struct RankVector {
    std::vector<double> values;
    int iterations = 0;
    /// c^(k+1)/(1-c) * mean|Q_i|: bound on the mean absolute truncation error.
    double residual_bound = 0.0;
    double damping = 0.0;
};

inline constexpr int kDefaultPagerankIterations = 30;

/// c^(k+1)/(1-c) * mean_abs_q.
double iteration_error_bound(double damping, int k, double mean_abs_q);

/// Smallest k >= 1 with iteration_error_bound(damping, k, mean_abs_q) <= tolerance.
int iterations_for_tolerance(double damping, double mean_abs_q, double tolerance);

/// Edge weights C_j = zeta_j / (out_degree(j) v 1), out-degree counted with multiplicity.
std::vector<double> contribution_weights(const DiGraph& graph, std::span<const VertexAttributes> attrs);

/**
 * Truncated power iteration R = Q * sum_{i=0..k} M^i with M = diag(C) A.
 *
 * Rows of dangling vertices stay zero and the result is not normalized.
 * Throws std::invalid_argument for k < 1, a length mismatch between `attrs`
 * and the graph, or |zeta_i| > damping.
 */
RankVector compute_pagerank(const DiGraph& graph, std::span<const VertexAttributes> attrs, double damping, int k);

inline RankVector compute_pagerank(const DiGraph& graph, double damping, int k = kDefaultPagerankIterations) {
    return compute_pagerank(graph, graph.attributes(), damping, k);
}

/// Runs iterations_for_tolerance(...) steps.
RankVector compute_pagerank_to_tolerance(const DiGraph& graph, double damping, double tolerance);

}  // namespace gprank
