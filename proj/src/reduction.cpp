#include "cacaug/reduction.hpp"

#include "cacaug/error.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace cacaug {

namespace {

// Path between two cactus nodes in the node/cycle incidence tree. Node v is
// vertex v, cycle c is vertex node_count + c. Returns the vertex sequence.
std::vector<int> incidence_tree_path(const CactusGraph& graph, NodeId from, NodeId to) {
    const int n = graph.node_count();
    const int total = n + static_cast<int>(graph.cycles().size());
    std::vector<int> prev(total, -2);
    std::queue<int> queue;
    queue.push(from);
    prev[from] = -1;
    while (!queue.empty() && prev[to] == -2) {
        const int x = queue.front();
        queue.pop();
        auto visit = [&](int y) {
            if (prev[y] != -2) return;
            prev[y] = x;
            queue.push(y);
        };
        if (x < n) {
            for (int c : graph.cycles_at(x)) visit(n + c);
        } else {
            for (NodeId v : graph.cycles()[x - n].nodes) visit(v);
        }
    }
    std::vector<int> path;
    for (int x = to; x != -1; x = prev[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::vector<Projection> project_link(const CacapInstance& instance, LinkId link) {
    const auto& graph = instance.graph;
    const auto [u, v] = instance.links.at(link);
    const auto path = incidence_tree_path(graph, u, v);
    // path = u, C1, x1, C2, ..., Ck, v
    std::vector<Projection> out;
    for (std::size_t i = 1; i + 1 < path.size(); i += 2)
        out.push_back({link, path[i - 1], path[i + 1], path[i] - graph.node_count()});
    return out;
}

bool projections_cross(const CactusGraph& graph, const Projection& a, const Projection& b) {
    if (a.from == b.from || a.from == b.to || a.to == b.from || a.to == b.to) return true;
    if (a.cycle != b.cycle) return false;
    const int pa = graph.position_in_cycle(a.cycle, a.from);
    const int pb = graph.position_in_cycle(a.cycle, a.to);
    const int lo = std::min(pa, pb), hi = std::max(pa, pb);
    auto strictly_inside = [&](NodeId x) {
        const int p = graph.position_in_cycle(a.cycle, x);
        return lo < p && p < hi;
    };
    return strictly_inside(b.from) != strictly_inside(b.to);
}

namespace {

bool any_cross(const CactusGraph& graph, const std::vector<Projection>& pa, const std::vector<Projection>& pb) {
    for (const auto& x : pa)
        for (const auto& y : pb)
            if (projections_cross(graph, x, y)) return true;
    return false;
}

}  // namespace

bool links_cross(const CacapInstance& instance, LinkId a, LinkId b) {
    return any_cross(instance.graph, project_link(instance, a), project_link(instance, b));
}

std::vector<int> SteinerInstance::all_terminals() const {
    std::vector<int> out(terminal_nodes.size());
    for (int i = 0; i < terminal_count(); ++i) out[i] = i;
    return out;
}

SteinerInstance build_steiner_instance(const CacapInstance& instance) {
    require_feasible(instance);
    SteinerInstance si;
    si.terminal_nodes = instance.graph.terminals();
    si.back_map = instance.links;
    const int t = si.terminal_count();
    std::vector<VertexKind> kinds(t, VertexKind::Terminal);
    kinds.resize(t + instance.link_count(), VertexKind::Steiner);
    si.graph = SteinerGraph(std::move(kinds));

    std::vector<int> terminal_index(instance.graph.node_count(), -1);
    for (int i = 0; i < t; ++i) terminal_index[si.terminal_nodes[i]] = i;

    std::vector<std::vector<Projection>> projections;
    for (LinkId l = 0; l < instance.link_count(); ++l) {
        projections.push_back(project_link(instance, l));
        for (NodeId end : {instance.links[l].u, instance.links[l].v})
            if (terminal_index[end] >= 0) si.graph.add_edge(si.steiner_vertex(l), terminal_index[end]);
    }
    for (LinkId a = 0; a < instance.link_count(); ++a)
        for (LinkId b = a + 1; b < instance.link_count(); ++b)
            if (any_cross(instance.graph, projections[a], projections[b]))
                si.graph.add_edge(si.steiner_vertex(a), si.steiner_vertex(b));

    if (!satisfies_reduction_remarks(si)) throw std::logic_error("reduction output violates the terminal adjacency remarks");
    return si;
}

bool satisfies_reduction_remarks(const SteinerInstance& si) {
    const auto& g = si.graph;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& nb = g.neighbors(v);
        if (si.is_terminal(v)) {
            for (std::size_t i = 0; i < nb.size(); ++i) {
                if (si.is_terminal(nb[i])) return false;
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!g.adjacent(nb[i], nb[j])) return false;
            }
        } else {
            const auto terminal_neighbours = std::count_if(nb.begin(), nb.end(), [&](int w) { return si.is_terminal(w); });
            if (terminal_neighbours > 2) return false;
        }
    }
    return true;
}

std::vector<LinkId> lift_solution(const SteinerInstance& si, const std::vector<int>& vertices) {
    std::vector<char> present(si.graph.vertex_count(), 0);
    for (int v : vertices) present.at(v) = 1;
    for (int t = 0; t < si.terminal_count(); ++t)
        if (!present[t]) throw Error(ErrorCode::NotConnectedOverTerminals, "terminal " + std::to_string(t) + " is missing", t);
    if (!induced_connected(si.graph, vertices))
        throw Error(ErrorCode::NotConnectedOverTerminals, "vertex set does not induce a connected subgraph");
    std::vector<LinkId> links;
    for (int v = si.terminal_count(); v < si.graph.vertex_count(); ++v)
        if (present[v]) links.push_back(si.link_of(v));
    return links;
}

SteinerTreeSolution embed_solution(const SteinerInstance& si, const std::vector<LinkId>& links) {
    std::vector<int> vertices = si.all_terminals();
    for (LinkId l : links) vertices.push_back(si.steiner_vertex(l));
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<VertexEdge> edges;
    if (!induced_spanning_tree(si.graph, vertices, edges))
        throw Error(ErrorCode::InfeasibleLinkSet, "G_ST[T + A] is disconnected, so A leaves some 2-edge cut uncovered");
    return make_tree(std::move(edges), vertices);
}

SteinerTreeSolution normalize_terminal_degrees(const SteinerInstance& si, SteinerTreeSolution tree) {
    if (!is_tree(tree)) throw Error(ErrorCode::InvalidInput, "input is not a tree");
    for (const auto& [a, b] : tree.edges)
        if (!si.graph.adjacent(a, b)) throw Error(ErrorCode::InvalidInput, "tree uses an edge outside G_ST");
    for (int t = 0; t < si.terminal_count(); ++t) {
        while (true) {
            std::vector<int> nb;
            for (const auto& [a, b] : tree.edges) {
                if (a == t) nb.push_back(b);
                if (b == t) nb.push_back(a);
            }
            if (nb.size() < 2) break;
            std::sort(nb.begin(), nb.end());
            const int keep = nb[0], moved = nb[1];
            // Terminal neighbourhoods are cliques, so {keep, moved} is an edge of G_ST.
            auto& edges = tree.edges;
            edges.erase(std::find(edges.begin(), edges.end(), VertexEdge{std::min(t, moved), std::max(t, moved)}));
            edges.emplace_back(std::min(keep, moved), std::max(keep, moved));
            tree = make_tree(std::move(edges), tree.vertices);
        }
    }
    return tree;
}

}  // namespace cacaug
