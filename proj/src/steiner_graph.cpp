#include "cacaug/steiner_graph.hpp"

#include <algorithm>
#include <queue>

namespace cacaug {

SteinerGraph::SteinerGraph(std::vector<VertexKind> kinds) : kinds_(std::move(kinds)), adj_(kinds_.size()) {}

void SteinerGraph::add_edge(int a, int b) {
    if (a == b) return;
    auto insert = [](std::vector<int>& list, int x) {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) list.insert(it, x);
    };
    insert(adj_[a], b);
    insert(adj_[b], a);
}

bool SteinerGraph::adjacent(int a, int b) const { return std::binary_search(adj_[a].begin(), adj_[a].end(), b); }

std::vector<int> SteinerGraph::terminals() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
        if (is_terminal(v)) out.push_back(v);
    return out;
}

std::vector<VertexEdge> SteinerGraph::edges() const {
    std::vector<VertexEdge> out;
    for (int v = 0; v < vertex_count(); ++v)
        for (int w : adj_[v])
            if (v < w) out.emplace_back(v, w);
    return out;
}

std::size_t SteinerGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adj_) twice += list.size();
    return twice / 2;
}

SteinerTreeSolution make_tree(std::vector<VertexEdge> edges, const std::vector<int>& extra_vertices) {
    SteinerTreeSolution tree;
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    tree.vertices = extra_vertices;
    for (const auto& [a, b] : edges) {
        tree.vertices.push_back(a);
        tree.vertices.push_back(b);
    }
    std::sort(tree.vertices.begin(), tree.vertices.end());
    tree.vertices.erase(std::unique(tree.vertices.begin(), tree.vertices.end()), tree.vertices.end());
    tree.edges = std::move(edges);
    return tree;
}

bool is_tree(const SteinerTreeSolution& tree) {
    if (tree.vertices.empty()) return tree.edges.empty();
    if (tree.edges.size() + 1 != tree.vertices.size()) return false;
    // Union-find over positions in the sorted vertex list.
    std::vector<int> parent(tree.vertices.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto index = [&](int v) {
        auto it = std::lower_bound(tree.vertices.begin(), tree.vertices.end(), v);
        return (it == tree.vertices.end() || *it != v) ? -1 : static_cast<int>(it - tree.vertices.begin());
    };
    for (const auto& [a, b] : tree.edges) {
        const int ia = index(a), ib = index(b);
        if (ia < 0 || ib < 0) return false;
        const int ra = find(ia), rb = find(ib);
        if (ra == rb) return false;
        parent[ra] = rb;
    }
    return true;
}

bool induced_spanning_tree(const SteinerGraph& graph, const std::vector<int>& vertices, std::vector<VertexEdge>& out_edges) {
    out_edges.clear();
    if (vertices.empty()) return true;
    std::vector<char> member(graph.vertex_count(), 0), seen(graph.vertex_count(), 0);
    for (int v : vertices) member[v] = 1;
    const int root = *std::min_element(vertices.begin(), vertices.end());
    std::queue<int> queue;
    queue.push(root);
    seen[root] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int w : graph.neighbors(u)) {
            if (!member[w] || seen[w]) continue;
            seen[w] = 1;
            ++reached;
            out_edges.emplace_back(std::min(u, w), std::max(u, w));
            queue.push(w);
        }
    }
    std::size_t distinct = 0;
    for (int v = 0; v < graph.vertex_count(); ++v) distinct += member[v];
    return reached == distinct;
}

bool induced_connected(const SteinerGraph& graph, const std::vector<int>& vertices) {
    std::vector<VertexEdge> scratch;
    return induced_spanning_tree(graph, vertices, scratch);
}

SteinerTreeSolution prune_steiner_leaves(const SteinerGraph& graph, SteinerTreeSolution tree) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> degree(graph.vertex_count(), 0);
        for (const auto& [a, b] : tree.edges) {
            ++degree[a];
            ++degree[b];
        }
        std::vector<VertexEdge> kept;
        for (const auto& e : tree.edges) {
            const bool leaf_a = !graph.is_terminal(e.first) && degree[e.first] == 1;
            const bool leaf_b = !graph.is_terminal(e.second) && degree[e.second] == 1;
            if (leaf_a || leaf_b) {
                changed = true;
            } else {
                kept.push_back(e);
            }
        }
        if (changed) {
            std::vector<int> keep_vertices;
            for (int v : tree.vertices)
                if (graph.is_terminal(v)) keep_vertices.push_back(v);
            tree = make_tree(std::move(kept), keep_vertices);
        }
    }
    return tree;
}

}  // namespace cacaug
