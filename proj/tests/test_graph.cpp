#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "gprank/graph.hpp"

using namespace gprank;

namespace {

std::vector<VertexAttributes> blank(std::size_t n) { return std::vector<VertexAttributes>(n, {0, 0, 0.15, 0.85}); }

}  // namespace

TEST_CASE("forward and reverse adjacency hold the same multiset") {
    const std::vector<Edge> edges{{0, 1}, {2, 1}, {0, 1}, {1, 2}, {2, 2}, {3, 0}};
    const DiGraph g(4, edges, blank(4), ModelTag::dcm_multigraph);
    CHECK(g.edge_count() == edges.size());
    CHECK(g.out_degree(0) == 2);
    CHECK(g.in_degree(1) == 3);
    CHECK(g.in_degree(3) == 0);
    std::vector<Edge> from_reverse;
    for (VertexId v = 0; v < 4; ++v) {
        for (VertexId u : g.in_neighbors(v)) from_reverse.push_back({u, v});
    }
    std::sort(from_reverse.begin(), from_reverse.end());
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    CHECK(g.edges() == sorted);
    CHECK(from_reverse == sorted);
    CHECK_FALSE(g.is_simple());
}

TEST_CASE("simplicity check sees loops and parallel edges") {
    CHECK(DiGraph(3, std::vector<Edge>{{0, 1}, {1, 0}, {1, 2}}, blank(3), ModelTag::ird).is_simple());
    CHECK_FALSE(DiGraph(2, std::vector<Edge>{{1, 1}}, blank(2), ModelTag::ird).is_simple());
    CHECK_FALSE(DiGraph(2, std::vector<Edge>{{0, 1}, {0, 1}}, blank(2), ModelTag::ird).is_simple());
}

TEST_CASE("construction rejects inconsistent input") {
    CHECK_THROWS_AS(DiGraph(3, std::vector<Edge>{}, blank(2), ModelTag::ird), std::invalid_argument);
    CHECK_THROWS_AS(DiGraph(2, std::vector<Edge>{{0, 5}}, blank(2), ModelTag::ird), std::invalid_argument);
}

TEST_CASE("model tag names round-trip") {
    for (auto tag : {ModelTag::dcm_multigraph, ModelTag::dcm_repeated, ModelTag::dcm_erased, ModelTag::ird}) {
        CHECK(model_tag_from_string(to_string(tag)) == tag);
    }
    CHECK_THROWS_AS(model_tag_from_string("nope"), std::invalid_argument);
}
