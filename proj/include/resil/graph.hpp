#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "resil/types.hpp"

namespace resil {

/// Edge of the motion graph leaving a vertex: the control used and the
/// index of the successor vertex.
struct OutEdge {
    std::size_t control;
    std::size_t target;
};

/// Induced subgraph of the motion graph x -> x + u on a finite vertex set.
/// Vertices are stored in lexicographic order; adjacency is complete, so a
/// self-loop appears whenever the zero control is present.
class InducedSubgraph {
  public:
    InducedSubgraph() = default;

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<IntVector>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const IntVector& vertex(std::size_t i) const { return vertices_[i]; }
    [[nodiscard]] const ControlSet& controls() const noexcept { return controls_; }
    [[nodiscard]] std::span<const OutEdge> out_edges(std::size_t v) const {
        return {edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    [[nodiscard]] std::size_t out_degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
    [[nodiscard]] std::size_t min_out_degree() const noexcept { return min_out_degree_; }

    [[nodiscard]] std::optional<std::size_t> index_of(const IntVector& x) const;
    [[nodiscard]] bool contains(const IntVector& x) const { return index_.contains(x); }

    /// For each control, the vertices that can use it without leaving the set.
    [[nodiscard]] std::vector<std::vector<std::size_t>> users_by_control() const;

    friend InducedSubgraph build_induced(std::vector<IntVector> points, const ControlSet& controls);

  private:
    std::vector<IntVector> vertices_;
    std::unordered_map<IntVector, std::size_t, IntVectorHash> index_;
    std::vector<OutEdge> edges_;          // grouped by source vertex
    std::vector<std::size_t> offsets_{0};  // edges of v are [offsets_[v], offsets_[v + 1])
    ControlSet controls_;
    std::size_t min_out_degree_ = 0;
};

/// Builds the induced subgraph on `points` (duplicates are dropped).
InducedSubgraph build_induced(std::vector<IntVector> points, const ControlSet& controls);

/// Maximal induced subgraph of `points` in which every out-degree is at least
/// `threshold`, found by repeatedly deleting deficient vertices. Returns
/// nullopt when the result is empty or no longer contains `x0`.
std::optional<InducedSubgraph> peel_to_min_degree(const std::vector<IntVector>& points,
                                                  const ControlSet& controls, std::size_t threshold,
                                                  const IntVector& x0);

/// Same as above but with the deletion order supplied by the caller; the
/// result does not depend on it. Used to check order independence.
std::optional<InducedSubgraph> peel_to_min_degree_ordered(const std::vector<IntVector>& points,
                                                          const ControlSet& controls,
                                                          std::size_t threshold, const IntVector& x0,
                                                          const std::vector<std::size_t>& order);

/// Graphviz rendering; edges are colored by label when `labels` is given.
std::string to_dot(const InducedSubgraph& g, const Labeling* labels = nullptr);

}  // namespace resil
