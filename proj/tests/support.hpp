#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing
// here calls into the code paths it is used to check.

#include "cacaug/cactus.hpp"
#include "cacaug/io.hpp"
#include "cacaug/reduction.hpp"
#include "cacaug/rng.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace support {

inline std::string data_path(const std::string& name) { return std::string(CACAUG_DATA_DIR) + "/" + name; }

inline cacaug::CacapInstance load(const std::string& name) {
    return cacaug::parse_instance(cacaug::read_text_file(data_path(name))).instance;
}

inline cacaug::CacapInstance fig1() { return load("fig1.cacap"); }

/// Global minimum cut of an undirected multigraph (Stoer-Wagner, O(n^3)).
inline long min_cut(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 2) return LONG_MAX;
    std::vector<std::vector<long>> w(n, std::vector<long>(n, 0));
    for (auto [a, b] : edges)
        if (a != b) {
            ++w[a][b];
            ++w[b][a];
        }
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    long best = LONG_MAX;
    while (alive.size() > 1) {
        std::vector<long> weight(alive.size(), 0);
        std::vector<char> added(alive.size(), 0);
        int prev = -1, last = -1;
        for (std::size_t step = 0; step < alive.size(); ++step) {
            int pick = -1;
            for (std::size_t i = 0; i < alive.size(); ++i)
                if (!added[i] && (pick < 0 || weight[i] > weight[pick])) pick = static_cast<int>(i);
            added[pick] = 1;
            prev = last;
            last = pick;
            if (step + 1 == alive.size()) best = std::min(best, weight[pick]);
            for (std::size_t i = 0; i < alive.size(); ++i)
                if (!added[i]) weight[i] += w[alive[pick]][alive[i]];
        }
        const int s = alive[prev], t = alive[last];
        for (int v = 0; v < n; ++v) {
            w[s][v] += w[t][v];
            w[v][s] = w[s][v];
        }
        alive.erase(alive.begin() + last);
    }
    return best;
}

/// Feasibility as "G + A is 3-edge-connected".
inline bool three_edge_connected(const cacaug::CacapInstance& inst, const std::vector<int>& subset) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : inst.graph.edges()) edges.emplace_back(e.u, e.v);
    for (int l : subset) edges.emplace_back(inst.links[l].u, inst.links[l].v);
    return min_cut(inst.graph.node_count(), edges) >= 3;
}

/// Plain BFS over the subgraph induced by `keep`.
inline bool bfs_connected(const cacaug::SteinerGraph& g, const std::vector<char>& keep) {
    int start = -1, count = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (keep[v]) {
            ++count;
            if (start < 0) start = v;
        }
    if (count == 0) return true;
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int u : g.neighbors(v))
            if (keep[u] && !seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    return reached == count;
}

/// G_ST[T u A] connected, with A given as link ids.
inline bool reduced_connected(const cacaug::SteinerInstance& si, const std::vector<int>& links) {
    std::vector<char> keep(si.graph.vertex_count(), 0);
    for (int i = 0; i < si.terminal_count(); ++i) keep[i] = 1;
    for (int l : links) keep[si.steiner_vertex(l)] = 1;
    return bfs_connected(si.graph, keep);
}

/// Minimum Steiner tree cost by scanning every Steiner subset: the cheapest
/// connected G[T u S'] costs |T| + |S'| - 1.
inline int steiner_cost_by_subsets(const cacaug::SteinerInstance& si) {
    const int s = si.link_count();
    int best = INT_MAX;
    for (std::uint32_t mask = 0; mask < (1U << s); ++mask) {
        std::vector<int> links;
        for (int l = 0; l < s; ++l)
            if (mask >> l & 1U) links.push_back(l);
        if (reduced_connected(si, links)) best = std::min(best, si.terminal_count() + static_cast<int>(links.size()) - 1);
    }
    return best;
}

/// Cheapest full component on `terminals` of a reduced instance: a nonempty
/// connected Steiner set touching every chosen terminal costs |R| + |S'| - 1.
inline std::optional<int> full_component_by_subsets(const cacaug::SteinerInstance& si, const std::vector<int>& terminals) {
    std::optional<int> best;
    const int s = si.link_count();
    for (std::uint32_t mask = 1; mask < (1U << s); ++mask) {
        std::vector<char> keep(si.graph.vertex_count(), 0);
        int size = 0;
        for (int l = 0; l < s; ++l)
            if (mask >> l & 1U) keep[si.steiner_vertex(l)] = 1, ++size;
        if (!bfs_connected(si.graph, keep)) continue;
        bool touches = true;
        for (int t : terminals) {
            bool any = false;
            for (int u : si.graph.neighbors(t)) any = any || keep[u];
            touches = touches && any;
        }
        if (!touches) continue;
        const int cost = static_cast<int>(terminals.size()) + size - 1;
        if (!best || cost < *best) best = cost;
    }
    return best;
}

inline std::vector<int> subset_of(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1U) out.push_back(i);
    return out;
}

/// Deterministic corpus of generated instances with at most `max_nodes`
/// nodes and `max_links` links (after repair).
inline std::vector<cacaug::CacapInstance> small_corpus(std::size_t count, std::uint64_t seed, int max_nodes = 10,
                                                       int max_links = 8) {
    std::vector<cacaug::CacapInstance> out;
    cacaug::Rng rng(seed);
    while (out.size() < count) {
        const int cycles = static_cast<int>(rng.uniform_int(1, 4));
        const int len = static_cast<int>(rng.uniform_int(2, 5));
        const int links = static_cast<int>(rng.uniform_int(0, 5));
        auto inst = cacaug::gen_instance(cycles, len, links, rng.next_u64());
        if (inst.graph.node_count() <= max_nodes && inst.link_count() <= max_links) out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace support
