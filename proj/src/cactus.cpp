#include "cacaug/cactus.hpp"

#include "cacaug/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

namespace cacaug {

namespace {

struct Incidence {
    NodeId other;
    EdgeId edge;
};

std::vector<std::vector<Incidence>> incidence_lists(int node_count, const std::vector<Edge>& edges) {
    std::vector<std::vector<Incidence>> adj(node_count);
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
        adj[edges[e].u].push_back({edges[e].v, e});
        adj[edges[e].v].push_back({edges[e].u, e});
    }
    return adj;
}

}  // namespace

int CactusGraph::position_in_cycle(int cycle, NodeId v) const {
    const auto& nodes = cycles_[cycle].nodes;
    auto it = std::find(nodes.begin(), nodes.end(), v);
    return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

std::vector<NodeId> CactusGraph::terminals() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < node_count_; ++v)
        if (degree_[v] == 2) out.push_back(v);
    return out;
}

CactusGraph validate_cactus(int node_count, std::vector<Edge> edges) {
    if (node_count < 2) throw Error(ErrorCode::InvalidInput, "a cactus needs at least 2 nodes");
    if (edges.empty()) throw Error(ErrorCode::InvalidInput, "edge list is empty");
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
        const auto [u, v] = edges[e];
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw Error(ErrorCode::InvalidInput, "edge " + std::to_string(e) + " has an endpoint out of range", e);
        if (u == v) throw Error(ErrorCode::SelfLoop, "edge " + std::to_string(e) + " is a self-loop", e);
    }

    const auto adj = incidence_lists(node_count, edges);

    // Iterative DFS from node 0 recording the tree and the back edges.
    std::vector<int> depth(node_count, -1);
    std::vector<NodeId> parent(node_count, -1);
    std::vector<EdgeId> parent_edge(node_count, -1);
    std::vector<std::pair<EdgeId, NodeId>> back_edges;  // (edge, lower endpoint)
    std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
    depth[0] = 0;
    while (!stack.empty()) {
        auto& [u, next] = stack.back();
        if (next == adj[u].size()) {
            stack.pop_back();
            continue;
        }
        const auto [w, e] = adj[u][next++];
        if (e == parent_edge[u]) continue;
        if (depth[w] < 0) {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            parent_edge[w] = e;
            stack.emplace_back(w, 0);
        } else if (depth[w] < depth[u]) {
            back_edges.emplace_back(e, u);
        }
    }
    for (NodeId v = 0; v < node_count; ++v)
        if (depth[v] < 0) throw Error(ErrorCode::NotConnected, "node " + std::to_string(v) + " is unreachable from node 0", v);

    std::vector<int> cycle_of_edge(edges.size(), -1);
    std::vector<Cycle> cycles;
    for (const auto& [back, low] : back_edges) {
        const NodeId top = edges[back].u == low ? edges[back].v : edges[back].u;
        Cycle cycle;
        const int id = static_cast<int>(cycles.size());
        for (NodeId x = low; x != top; x = parent[x]) {
            const EdgeId e = parent_edge[x];
            if (cycle_of_edge[e] >= 0)
                throw Error(ErrorCode::NotCactus, "edge " + std::to_string(e) + " lies on more than one cycle", e);
            cycle_of_edge[e] = id;
            cycle.nodes.push_back(x);
            cycle.edges.push_back(e);
        }
        cycle.nodes.push_back(top);
        // Walked bottom-up; flip so nodes run top -> low and close with the back edge.
        std::reverse(cycle.nodes.begin(), cycle.nodes.end());
        std::reverse(cycle.edges.begin(), cycle.edges.end());
        cycle.edges.push_back(back);
        cycle_of_edge[back] = id;
        cycles.push_back(std::move(cycle));
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e)
        if (cycle_of_edge[e] < 0) throw Error(ErrorCode::NotCactus, "edge " + std::to_string(e) + " is a bridge", e);

    // Number cycles by their smallest edge id so ids follow the input order.
    std::vector<int> order(cycles.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<EdgeId> min_edge(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c)
        min_edge[c] = *std::min_element(cycles[c].edges.begin(), cycles[c].edges.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) { return min_edge[a] < min_edge[b]; });

    CactusGraph g;
    g.node_count_ = node_count;
    g.degree_.assign(node_count, 0);
    for (const auto& [u, v] : edges) {
        ++g.degree_[u];
        ++g.degree_[v];
    }
    g.edges_ = std::move(edges);
    g.cycle_of_edge_.assign(g.edges_.size(), -1);
    g.cycles_at_.assign(node_count, {});
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        Cycle& c = cycles[order[rank]];
        for (EdgeId e : c.edges) g.cycle_of_edge_[e] = static_cast<int>(rank);
        for (NodeId v : c.nodes) g.cycles_at_[v].push_back(static_cast<int>(rank));
        g.cycles_.push_back(std::move(c));
    }
    return g;
}

std::vector<TwoEdgeCut> enumerate_two_edge_cuts(const CactusGraph& graph) {
    const auto adj = incidence_lists(graph.node_count(), graph.edges());
    std::vector<TwoEdgeCut> cuts;
    for (int c = 0; c < static_cast<int>(graph.cycles().size()); ++c) {
        const Cycle& cycle = graph.cycles()[c];
        const std::size_t len = cycle.size();
        for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t j = i + 1; j < len; ++j) {
                TwoEdgeCut cut{cycle.edges[i], cycle.edges[j], c, std::vector<char>(graph.node_count(), 0)};
                std::queue<NodeId> queue;
                queue.push(cycle.nodes[i + 1]);
                cut.left[cycle.nodes[i + 1]] = 1;
                while (!queue.empty()) {
                    const NodeId u = queue.front();
                    queue.pop();
                    for (const auto& [w, e] : adj[u]) {
                        if (e == cut.edge_a || e == cut.edge_b || cut.left[w]) continue;
                        cut.left[w] = 1;
                        queue.push(w);
                    }
                }
                cuts.push_back(std::move(cut));
            }
        }
    }
    return cuts;
}

bool covers(const TwoEdgeCut& cut, const Link& link) { return cut.on_left(link.u) != cut.on_left(link.v); }

CacapInstance make_instance(CactusGraph graph, std::vector<Link> links) {
    for (LinkId l = 0; l < static_cast<LinkId>(links.size()); ++l) {
        const auto [u, v] = links[l];
        if (u < 0 || v < 0 || u >= graph.node_count() || v >= graph.node_count())
            throw Error(ErrorCode::InvalidInput, "link " + std::to_string(l) + " has an endpoint out of range", l);
        if (u == v) throw Error(ErrorCode::InvalidInput, "link " + std::to_string(l) + " joins a node to itself", l);
    }
    return CacapInstance{std::move(graph), std::move(links)};
}

CutCoverage::CutCoverage(const CacapInstance& instance)
    : cuts_(enumerate_two_edge_cuts(instance.graph)) {
    words_ = (cuts_.size() + 63) / 64;
    by_link_.assign(instance.links.size(), std::vector<std::uint64_t>(words_, 0));
    for (LinkId l = 0; l < instance.link_count(); ++l)
        for (std::size_t c = 0; c < cuts_.size(); ++c)
            if (covers(cuts_[c], instance.links[l])) by_link_[l][c / 64] |= std::uint64_t{1} << (c % 64);
}

bool CutCoverage::link_covers(LinkId link, std::size_t cut) const {
    return (by_link_[link][cut / 64] >> (cut % 64)) & 1U;
}

std::size_t CutCoverage::covered_count(LinkId link) const {
    std::size_t n = 0;
    for (auto w : by_link_[link]) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t CutCoverage::uncovered_count(std::span<const LinkId> subset) const {
    std::size_t covered = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t acc = 0;
        for (LinkId l : subset) acc |= by_link_[l][w];
        covered += static_cast<std::size_t>(std::popcount(acc));
    }
    return cuts_.size() - covered;
}

std::size_t CutCoverage::first_uncovered(std::span<const LinkId> subset) const {
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t acc = 0;
        for (LinkId l : subset) acc |= by_link_[l][w];
        const std::size_t bits = std::min<std::size_t>(64, cuts_.size() - w * 64);
        const std::uint64_t full = bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
        if (acc != full) return w * 64 + static_cast<std::size_t>(std::countr_one(acc));
    }
    return cuts_.size();
}

bool CutCoverage::covers_all(std::span<const LinkId> subset) const { return first_uncovered(subset) == cuts_.size(); }

bool is_feasible_augmentation(const CacapInstance& instance, std::span<const LinkId> subset) {
    return CutCoverage(instance).covers_all(subset);
}

std::vector<LinkId> all_links(const CacapInstance& instance) {
    std::vector<LinkId> ids(instance.links.size());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

void require_feasible(const CacapInstance& instance) {
    const CutCoverage coverage(instance);
    const auto ids = all_links(instance);
    const std::size_t miss = coverage.first_uncovered(ids);
    if (miss != coverage.cut_count()) {
        const auto& cut = coverage.cuts()[miss];
        throw Error(ErrorCode::InstanceInfeasible,
                    "no link covers the 2-edge cut {" + std::to_string(cut.edge_a) + ", " + std::to_string(cut.edge_b) + "}",
                    static_cast<long>(miss));
    }
}

}  // namespace cacaug
