#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gprank {

using VertexId = std::uint32_t;

/// Per-vertex tuple: in/out degree (DCM) or in/out weight (IRD), the
/// personalization value Q_i and the weight zeta_i.
struct VertexAttributes {
    double in_param = 0.0;
    double out_param = 0.0;
    double q = 0.0;
    double zeta = 0.0;

    friend bool operator==(const VertexAttributes&, const VertexAttributes&) = default;
};

struct Edge {
    VertexId src;
    VertexId dst;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class ModelTag { dcm_multigraph, dcm_repeated, dcm_erased, ird };

std::string_view to_string(ModelTag tag);
ModelTag model_tag_from_string(std::string_view name);

/**
 * Immutable directed multigraph in compressed adjacency form.
 *
 * Both the forward (out-neighbor) and reverse (in-neighbor) lists are kept;
 * each row is sorted, and parallel edges appear once per multiplicity.
 */
class DiGraph {
public:
    DiGraph() = default;
    DiGraph(std::size_t n, std::span<const Edge> edges, std::vector<VertexAttributes> attrs, ModelTag tag);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::size_t edge_count() const { return out_targets_.size(); }
    [[nodiscard]] ModelTag model_tag() const { return tag_; }

    [[nodiscard]] std::size_t out_degree(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
    [[nodiscard]] std::size_t in_degree(VertexId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

    [[nodiscard]] std::span<const VertexId> out_neighbors(VertexId v) const {
        return {out_targets_.data() + out_offsets_[v], out_degree(v)};
    }
    [[nodiscard]] std::span<const VertexId> in_neighbors(VertexId v) const {
        return {in_sources_.data() + in_offsets_[v], in_degree(v)};
    }

    [[nodiscard]] std::span<const std::uint64_t> out_offsets() const { return out_offsets_; }
    [[nodiscard]] std::span<const VertexId> out_targets() const { return out_targets_; }
    [[nodiscard]] std::span<const std::uint64_t> in_offsets() const { return in_offsets_; }
    [[nodiscard]] std::span<const VertexId> in_sources() const { return in_sources_; }

    [[nodiscard]] const std::vector<VertexAttributes>& attributes() const { return attrs_; }

    [[nodiscard]] std::vector<std::size_t> out_degrees() const;
    [[nodiscard]] std::vector<std::size_t> in_degrees() const;

    /// Edge multiset, ordered by (src, dst).
    [[nodiscard]] std::vector<Edge> edges() const;

    /// No self-loops and no parallel edges in the same direction.
    [[nodiscard]] bool is_simple() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> out_offsets_{0};
    std::vector<VertexId> out_targets_;
    std::vector<std::uint64_t> in_offsets_{0};
    std::vector<VertexId> in_sources_;
    std::vector<VertexAttributes> attrs_;
    ModelTag tag_ = ModelTag::ird;
};

}  // namespace gprank
