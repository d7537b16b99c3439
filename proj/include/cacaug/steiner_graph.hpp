#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cacaug {

enum class VertexKind : std::uint8_t { Terminal, Steiner };

using VertexEdge = std::pair<int, int>;

/// Simple undirected unit-weight graph with terminal/Steiner vertex kinds.
/// Adjacency lists are kept sorted and duplicate-free.
class SteinerGraph {
public:
    SteinerGraph() = default;
    explicit SteinerGraph(std::vector<VertexKind> kinds);

    int vertex_count() const { return static_cast<int>(kinds_.size()); }
    VertexKind kind(int v) const { return kinds_[v]; }
    bool is_terminal(int v) const { return kinds_[v] == VertexKind::Terminal; }
    const std::vector<VertexKind>& kinds() const { return kinds_; }

    /// Adds {a, b}; self-loops and repeats are ignored.
    void add_edge(int a, int b);
    bool adjacent(int a, int b) const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    std::vector<int> terminals() const;
    /// Every edge once as (min, max), sorted.
    std::vector<VertexEdge> edges() const;
    std::size_t edge_count() const;

private:
    std::vector<VertexKind> kinds_;
    std::vector<std::vector<int>> adj_;
};

/// A tree in some SteinerGraph given by its vertex and edge sets (both
/// sorted). Unit weights, so cost is the edge count.
struct SteinerTreeSolution {
    std::vector<int> vertices;
    std::vector<VertexEdge> edges;

    int cost() const { return static_cast<int>(edges.size()); }
};

/// Normalises an edge set into a SteinerTreeSolution (sorting, (min,max)
/// edge orientation, vertex set = edge endpoints plus `extra_vertices`).
SteinerTreeSolution make_tree(std::vector<VertexEdge> edges, const std::vector<int>& extra_vertices = {});

/// True iff the edges form a single tree on exactly `tree.vertices`.
bool is_tree(const SteinerTreeSolution& tree);

/// True iff the subgraph induced by `vertices` is connected (empty counts as connected).
bool induced_connected(const SteinerGraph& graph, const std::vector<int>& vertices);

/// BFS spanning tree of the subgraph induced by `vertices`, rooted at the
/// smallest vertex. Returns false when that subgraph is disconnected.
bool induced_spanning_tree(const SteinerGraph& graph, const std::vector<int>& vertices,
                           std::vector<VertexEdge>& out_edges);

/// Repeatedly deletes degree-1 Steiner vertices. Terminals are never removed.
SteinerTreeSolution prune_steiner_leaves(const SteinerGraph& graph, SteinerTreeSolution tree);

}  // namespace cacaug
