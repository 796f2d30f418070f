#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sg/address.hpp"
#include "sg/rational.hpp"

namespace sg {

/// The level-m graph approximation V_m with uniform conductance (5/3)^m.
class LevelGraph {
  public:
    explicit LevelGraph(int level);

    int level() const { return level_; }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Rational& conductance() const { return conductance_; }

    const std::vector<VertexId>& vertices() const { return verts_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }

    /// Cells in word order; each entry holds the vertex indices of corners q0,q1,q2.
    const std::vector<std::array<int, 3>>& cells() const { return cells_; }
    Word cell_word(int cell) const;

    const std::array<int, 3>& boundary() const { return boundary_; }

    bool contains(const VertexId& v) const { return index_.count(v) > 0; }
    int index_of(const VertexId& v) const;
    const VertexId& vertex(int i) const { return verts_[static_cast<size_t>(i)]; }

  private:
    int level_;
    Rational conductance_;
    std::vector<VertexId> verts_;
    std::unordered_map<VertexId, int, VertexIdHash> index_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::array<int, 3>> cells_;
    std::array<int, 3> boundary_{};
};

LevelGraph build_level_graph(int level);

/// Shortest edge-path from x to y whose interior avoids A \ {x,y};
/// nullopt when every such route is blocked.
std::optional<int> graph_distance_avoiding(const LevelGraph& g, const VertexId& x,
                                           const VertexId& y,
                                           const std::vector<VertexId>& avoid);

/// The 2^m+1 bottom-row points, ordered from x_0 = q_1 to x_{2^m} = q_2.
std::vector<VertexId> bottom_row(int level);

/// Vertex quadrature weights for the standard measure: each m-cell spreads
/// mass 3^{-m} equally over its three corners.  Sums to 1 exactly.
std::vector<Rational> measure_weights(const LevelGraph& g);

}  // namespace sg
