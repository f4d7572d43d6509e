#include "gprank/pagerank.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gprank/kernels.hpp"

namespace gprank {

namespace {

void check_damping(double damping) {
    if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping: must lie in (0, 1)");
}

double mean_abs_q(std::span<const VertexAttributes> attrs) {
    if (attrs.empty()) return 0.0;
    double total = 0.0;
    for (const auto& a : attrs) total += std::fabs(a.q);
    return total / static_cast<double>(attrs.size());
}

}  // namespace

double iteration_error_bound(double damping, int k, double mean_abs_q) {
    return std::pow(damping, k + 1) / (1.0 - damping) * mean_abs_q;
}

int iterations_for_tolerance(double damping, double mean_abs_q, double tolerance) {
    check_damping(damping);
    if (!(tolerance > 0.0)) throw std::invalid_argument("tol: must be positive");
    int k = 1;
    while (iteration_error_bound(damping, k, mean_abs_q) > tolerance) {
        if (++k > 100'000) throw std::invalid_argument("tol: unreachable tolerance");
    }
    return k;
}

std::vector<double> contribution_weights(const DiGraph& graph, std::span<const VertexAttributes> attrs) {
    std::vector<double> c(graph.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        const auto out = static_cast<double>(graph.out_degree(static_cast<VertexId>(j)));
        c[j] = attrs[j].zeta / (out < 1.0 ? 1.0 : out);
    }
    return c;
}

RankVector compute_pagerank(const DiGraph& graph, std::span<const VertexAttributes> attrs, double damping, int k) {
    check_damping(damping);
    if (k < 1) throw std::invalid_argument("iters: number of matrix iterations k must be at least 1");
    if (attrs.size() != graph.size()) {
        throw std::invalid_argument("attributes: table has " + std::to_string(attrs.size()) + " rows but graph has " +
                                    std::to_string(graph.size()) + " vertices");
    }
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (!(std::fabs(attrs[i].zeta) <= damping * (1.0 + 1e-12))) {
            throw std::invalid_argument("zeta: |zeta| of vertex " + std::to_string(i) + " exceeds damping");
        }
    }

    const std::size_t n = graph.size();
    const std::vector<double> weights = contribution_weights(graph, attrs);
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) power[i] = attrs[i].q;
    std::vector<double> ranks = power;
    std::vector<double> weighted(n);

    // power <- power * M, gathered along in-edges: (vM)_i = sum_{j -> i} C_j v_j.
    for (int step = 0; step < k; ++step) {
        kernels::multiply(power, weights, weighted);
        kernels::gather_row_sums(weighted, graph.in_offsets(), graph.in_sources(), power);
        kernels::add_to(ranks, power);
    }

    return {std::move(ranks), k, iteration_error_bound(damping, k, mean_abs_q(attrs)), damping};
}

RankVector compute_pagerank_to_tolerance(const DiGraph& graph, double damping, double tolerance) {
    const int k = iterations_for_tolerance(damping, mean_abs_q(graph.attributes()), tolerance);
    return compute_pagerank(graph, damping, k);
}

}  // namespace gprank
