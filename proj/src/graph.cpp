#include "gprank/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace gprank {

std::string_view to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::dcm_multigraph: return "dcm_multigraph";
        case ModelTag::dcm_repeated: return "dcm_repeated";
        case ModelTag::dcm_erased: return "dcm_erased";
        case ModelTag::ird: return "ird";
    }
    return "unknown";
}

ModelTag model_tag_from_string(std::string_view name) {
    for (auto tag : {ModelTag::dcm_multigraph, ModelTag::dcm_repeated, ModelTag::dcm_erased, ModelTag::ird}) {
        if (to_string(tag) == name) return tag;
    }
    throw std::invalid_argument("unknown model_tag: " + std::string(name));
}

namespace {

// Counting sort of `edges` into CSR keyed by key(e), rows sorted by value(e).
template <class Key, class Value>
void build_csr(std::size_t n, std::span<const Edge> edges, Key key, Value value, std::vector<std::uint64_t>& offsets,
               std::vector<VertexId>& targets) {
    offsets.assign(n + 1, 0);
    for (const Edge& e : edges) ++offsets[key(e) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.assign(edges.size(), 0);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : edges) targets[cursor[key(e)]++] = value(e);
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                  targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
    }
}

}  // namespace

DiGraph::DiGraph(std::size_t n, std::span<const Edge> edges, std::vector<VertexAttributes> attrs, ModelTag tag)
    : n_(n), attrs_(std::move(attrs)), tag_(tag) {
    if (n >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw std::invalid_argument("DiGraph: vertex count must be below 2^31");
    }
    if (attrs_.size() != n) {
        throw std::invalid_argument("DiGraph: attribute table length " + std::to_string(attrs_.size()) +
                                    " does not match vertex count " + std::to_string(n));
    }
    for (const Edge& e : edges) {
        if (e.src >= n || e.dst >= n) throw std::invalid_argument("DiGraph: edge endpoint out of range");
    }
    build_csr(n, edges, [](const Edge& e) { return e.src; }, [](const Edge& e) { return e.dst; }, out_offsets_,
              out_targets_);
    build_csr(n, edges, [](const Edge& e) { return e.dst; }, [](const Edge& e) { return e.src; }, in_offsets_,
              in_sources_);
}

std::vector<std::size_t> DiGraph::out_degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v) d[v] = out_degree(static_cast<VertexId>(v));
    return d;
}

std::vector<std::size_t> DiGraph::in_degrees() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v) d[v] = in_degree(static_cast<VertexId>(v));
    return d;
}

std::vector<Edge> DiGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t v = 0; v < n_; ++v) {
        for (VertexId w : out_neighbors(static_cast<VertexId>(v))) out.push_back({static_cast<VertexId>(v), w});
    }
    return out;
}

bool DiGraph::is_simple() const {
    for (std::size_t v = 0; v < n_; ++v) {
        const auto row = out_neighbors(static_cast<VertexId>(v));
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] == v) return false;
            if (k > 0 && row[k] == row[k - 1]) return false;
        }
    }
    return true;
}

}  // namespace gprank
