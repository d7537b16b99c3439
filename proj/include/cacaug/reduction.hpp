#pragma once

#include "cacaug/cactus.hpp"
#include "cacaug/steiner_graph.hpp"

#include <vector>

namespace cacaug {

/// Restriction of a link to one cycle on its endpoint-to-endpoint walk.
struct Projection {
    LinkId link;
    NodeId from;
    NodeId to;
    int cycle;
    friend bool operator==(const Projection&, const Projection&) = default;
};

/// Projections of `link` in walk order from link.u to link.v, split at the
/// degree >= 4 nodes every u-v path passes through. Intra-cycle links
/// project to themselves.
std::vector<Projection> project_link(const CacapInstance& instance, LinkId link);

bool projections_cross(const CactusGraph& graph, const Projection& a, const Projection& b);

/// Two links cross when some pair of their projections shares an endpoint
/// (on any cycle) or strictly interleaves on a common cycle.
bool links_cross(const CacapInstance& instance, LinkId a, LinkId b);

/// The reduced Steiner tree instance. Vertex layout in `graph`:
/// [0, t) are terminals (degree-2 cactus nodes, ascending), and link l is
/// Steiner vertex t + l.
struct SteinerInstance {
    SteinerGraph graph;
    std::vector<NodeId> terminal_nodes;
    std::vector<Link> back_map;

    int terminal_count() const { return static_cast<int>(terminal_nodes.size()); }
    int link_count() const { return static_cast<int>(back_map.size()); }
    int steiner_vertex(LinkId link) const { return terminal_count() + link; }
    LinkId link_of(int vertex) const { return vertex - terminal_count(); }
    bool is_terminal(int vertex) const { return vertex < terminal_count(); }
    std::vector<int> all_terminals() const;
};

/// Throws InstanceInfeasible when the links cannot cover every 2-edge cut.
SteinerInstance build_steiner_instance(const CacapInstance& instance);

/// Each Steiner vertex has at most 2 terminal neighbours, terminal
/// neighbourhoods are Steiner cliques, and no terminal-terminal edge exists.
bool satisfies_reduction_remarks(const SteinerInstance& si);

/// Link ids (ascending) of the Steiner vertices in `vertices`. Throws
/// NotConnectedOverTerminals unless the set holds every terminal and induces
/// a connected subgraph.
std::vector<LinkId> lift_solution(const SteinerInstance& si, const std::vector<int>& vertices);

/// A spanning tree of G_ST[T u A]; throws InfeasibleLinkSet if disconnected.
SteinerTreeSolution embed_solution(const SteinerInstance& si, const std::vector<LinkId>& links);

/// Rewires a terminal-spanning tree until every terminal is a leaf, using
/// the swap tree + {l, l'} - {v, l'}. Edge count is preserved.
SteinerTreeSolution normalize_terminal_degrees(const SteinerInstance& si, SteinerTreeSolution tree);

}  // namespace cacaug
