#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cacaug {

using NodeId = int;
using EdgeId = int;
using LinkId = int;

struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Link {
    NodeId u;
    NodeId v;
    friend bool operator==(const Link&, const Link&) = default;
};

/// One cycle of the decomposition, stored in cyclic order:
/// edges[i] joins nodes[i] and nodes[(i + 1) % size].
struct Cycle {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;

    std::size_t size() const { return edges.size(); }
};

/// Connected multigraph in which every edge lies on exactly one cycle.
/// Only `validate_cactus` constructs one, so a CactusGraph is always valid.
class CactusGraph {
public:
    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }

    /// Multigraph degree: a 2-cycle endpoint gets 2 from its parallel pair.
    int degree(NodeId v) const { return degree_[v]; }
    int cycle_of_edge(EdgeId e) const { return cycle_of_edge_[e]; }

    /// Cycles through `v`, ascending.
    const std::vector<int>& cycles_at(NodeId v) const { return cycles_at_[v]; }

    /// Position of `v` in `cycle.nodes`, or -1.
    int position_in_cycle(int cycle, NodeId v) const;

    std::vector<NodeId> terminals() const;  // degree-2 nodes, ascending

private:
    friend CactusGraph validate_cactus(int node_count, std::vector<Edge> edges);

    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<Cycle> cycles_;
    std::vector<int> degree_;
    std::vector<int> cycle_of_edge_;
    std::vector<std::vector<int>> cycles_at_;
};

/// Builds the unique cycle decomposition by DFS. Throws NotConnected,
/// SelfLoop, or NotCactus (detail = offending edge id) for bridges and for
/// edges that would sit on two cycles. Parallel triples are rejected that way.
CactusGraph validate_cactus(int node_count, std::vector<Edge> edges);

struct TwoEdgeCut {
    EdgeId edge_a;
    EdgeId edge_b;
    int cycle;
    /// left[v] != 0 iff v is on the side holding the cycle arc strictly after
    /// edge_a and up to edge_b.
    std::vector<char> left;

    bool on_left(NodeId v) const { return left[v] != 0; }
};

/// All pairs of distinct edges of a common cycle, cycle by cycle, with their
/// side partitions. Count is the sum of |C|(|C|-1)/2 over cycles.
std::vector<TwoEdgeCut> enumerate_two_edge_cuts(const CactusGraph& graph);

bool covers(const TwoEdgeCut& cut, const Link& link);

struct CacapInstance {
    CactusGraph graph;
    std::vector<Link> links;

    int link_count() const { return static_cast<int>(links.size()); }
};

/// Checks link endpoints (valid ids, distinct). Does not check coverage.
CacapInstance make_instance(CactusGraph graph, std::vector<Link> links);

/// Cut/link incidence as bitsets, so subset feasibility is a few word ORs.
class CutCoverage {
public:
    explicit CutCoverage(const CacapInstance& instance);

    std::size_t cut_count() const { return cuts_.size(); }
    const std::vector<TwoEdgeCut>& cuts() const { return cuts_; }
    bool link_covers(LinkId link, std::size_t cut) const;
    std::size_t covered_count(LinkId link) const;

    bool covers_all(std::span<const LinkId> subset) const;
    /// Number of cuts left uncovered by `subset`.
    std::size_t uncovered_count(std::span<const LinkId> subset) const;
    /// Lowest-index cut not covered by `subset`, or cut_count().
    std::size_t first_uncovered(std::span<const LinkId> subset) const;

private:
    std::size_t words_ = 0;
    std::vector<TwoEdgeCut> cuts_;
    std::vector<std::vector<std::uint64_t>> by_link_;
};

bool is_feasible_augmentation(const CacapInstance& instance, std::span<const LinkId> subset);

/// Throws InstanceInfeasible (detail = first uncovered cut) unless the full
/// link set covers every 2-edge cut.
void require_feasible(const CacapInstance& instance);

std::vector<LinkId> all_links(const CacapInstance& instance);

}  // namespace cacaug
