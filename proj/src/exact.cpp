#include "cacaug/exact.hpp"

#include "cacaug/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <string>

namespace cacaug {

namespace {

constexpr int kInf = 1 << 29;

// Advances `idx` (strictly increasing, values < n) to the next combination in
// lexicographic order; false after the last one.
bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

// Spanning forest of an explicit edge list, keeping edges in order.
std::vector<VertexEdge> forest_of(const std::vector<VertexEdge>& edges, int vertex_count) {
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<VertexEdge> kept;
    for (const auto& [a, b] : edges) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) continue;
        parent[ra] = rb;
        kept.emplace_back(a, b);
    }
    return kept;
}

}  // namespace

std::vector<LinkId> brute_force_cacap(const CacapInstance& instance) {
    const int n = instance.link_count();
    if (n > kBruteForceLinkCap)
        throw Error(ErrorCode::TooLarge, "brute force is capped at " + std::to_string(kBruteForceLinkCap) + " links", n);
    const CutCoverage coverage(instance);
    const auto everything = all_links(instance);
    if (!coverage.covers_all(everything)) throw Error(ErrorCode::Infeasible, "the links do not cover every 2-edge cut");
    // No smaller set exists: each terminal needs an incident link and a link touches at most two.
    const int lower = (static_cast<int>(instance.graph.terminals().size()) + 1) / 2;
    for (int size = std::max(lower, coverage.cut_count() == 0 ? 0 : 1); size <= n; ++size) {
        std::vector<int> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            if (coverage.covers_all(idx)) return idx;
        } while (next_combination(idx, n));
    }
    return everything;
}

/// Dreyfus-Wagner over subsets of a terminal list. In Plain mode any vertex
/// may be interior. In FullComponent mode states are Steiner vertices only
/// and every terminal enters through one edge, so terminals stay leaves.
class SubsetSteinerDp {
public:
    enum class Mode { Plain, FullComponent };

    SubsetSteinerDp(const SteinerGraph& graph, std::vector<int> terminals, int mask_bits, Mode mode)
        : graph_(graph), terminals_(std::move(terminals)), mode_(mode) {
        const int n = graph.vertex_count();
        state_of_.assign(n, -1);
        for (int v = 0; v < n; ++v) {
            if (mode == Mode::Plain || !graph.is_terminal(v)) {
                state_of_[v] = static_cast<int>(states_.size());
                states_.push_back(v);
            }
        }
        shortest_paths();
        base_paths();
        solve(mask_bits);
    }

    const std::vector<int>& terminals() const { return terminals_; }
    const std::vector<int>& states() const { return states_; }
    int state_of(int v) const { return state_of_[v]; }
    const SteinerGraph& graph() const { return graph_; }

    /// Cheapest tree holding the masked terminals and the vertex of state s.
    int value(std::uint32_t mask, int s) const { return dp_[at(mask, s)]; }

    void rebuild(std::uint32_t mask, int s, std::vector<VertexEdge>& out) const {
        if (std::popcount(mask) == 1) {
            const int i = std::countr_zero(mask);
            const int e = entry_[static_cast<std::size_t>(i) * states_.size() + s];
            if (mode_ == Mode::FullComponent) out.emplace_back(terminals_[i], states_[e]);
            append_path(e, s, out);
            return;
        }
        const int v = via_[at(mask, s)];
        append_path(v, s, out);
        const std::uint32_t a = split_[at(mask, v)];
        rebuild(a, v, out);
        rebuild(mask ^ a, v, out);
    }

private:
    std::size_t at(std::uint32_t mask, int s) const { return static_cast<std::size_t>(mask) * states_.size() + s; }

    void shortest_paths() {
        const std::size_t m = states_.size();
        dist_.assign(m * m, kInf);
        prev_.assign(m * m, -1);
        for (std::size_t src = 0; src < m; ++src) {
            std::queue<int> queue;
            dist_[src * m + src] = 0;
            queue.push(static_cast<int>(src));
            while (!queue.empty()) {
                const int s = queue.front();
                queue.pop();
                for (int w : graph_.neighbors(states_[s])) {
                    const int ws = state_of_[w];
                    if (ws < 0 || dist_[src * m + ws] != kInf) continue;
                    dist_[src * m + ws] = dist_[src * m + s] + 1;
                    prev_[src * m + ws] = s;
                    queue.push(ws);
                }
            }
        }
    }

    void base_paths() {
        const std::size_t m = states_.size();
        base_.assign(terminals_.size() * m, kInf);
        entry_.assign(terminals_.size() * m, -1);
        for (std::size_t i = 0; i < terminals_.size(); ++i) {
            std::vector<int> entries;
            if (mode_ == Mode::Plain) {
                entries.push_back(state_of_[terminals_[i]]);
            } else {
                for (int w : graph_.neighbors(terminals_[i]))
                    if (state_of_[w] >= 0) entries.push_back(state_of_[w]);
            }
            const int step = mode_ == Mode::Plain ? 0 : 1;
            for (std::size_t s = 0; s < m; ++s) {
                for (int e : entries) {
                    const int d = dist_[e * m + s];
                    if (d == kInf || d + step >= base_[i * m + s]) continue;
                    base_[i * m + s] = d + step;
                    entry_[i * m + s] = e;
                }
            }
        }
    }

    void solve(int mask_bits) {
        const std::size_t m = states_.size();
        const std::uint32_t full = terminals_.size() >= 32 ? ~0U : ((1U << terminals_.size()) - 1);
        const std::size_t masks = static_cast<std::size_t>(full) + 1;
        dp_.assign(masks * m, kInf);
        split_.assign(masks * m, 0);
        via_.assign(masks * m, -1);
        std::vector<int> merged(m);
        for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
            const int bits = std::popcount(mask);
            if (bits > mask_bits) continue;
            if (bits == 1) {
                const int i = std::countr_zero(mask);
                std::copy_n(base_.begin() + static_cast<std::ptrdiff_t>(i * m), m, dp_.begin() + static_cast<std::ptrdiff_t>(at(mask, 0)));
                continue;
            }
            const std::uint32_t low = mask & (~mask + 1);
            for (std::size_t s = 0; s < m; ++s) {
                int best = kInf;
                std::uint32_t best_split = 0;
                for (std::uint32_t a = (mask - 1) & mask; a != 0; a = (a - 1) & mask) {
                    if (!(a & low)) continue;
                    const int c = dp_[at(a, static_cast<int>(s))] + dp_[at(mask ^ a, static_cast<int>(s))];
                    if (c < best) {
                        best = c;
                        best_split = a;
                    }
                }
                merged[s] = best;
                split_[at(mask, static_cast<int>(s))] = best_split;
            }
            for (std::size_t t = 0; t < m; ++t) {
                int best = kInf, arg = -1;
                for (std::size_t s = 0; s < m; ++s) {
                    if (merged[s] >= kInf) continue;
                    const int d = dist_[s * m + t];
                    if (d == kInf) continue;
                    if (merged[s] + d < best) {
                        best = merged[s] + d;
                        arg = static_cast<int>(s);
                    }
                }
                dp_[at(mask, static_cast<int>(t))] = best;
                via_[at(mask, static_cast<int>(t))] = arg;
            }
        }
    }

    void append_path(int from, int to, std::vector<VertexEdge>& out) const {
        const std::size_t m = states_.size();
        for (int x = to; x != from;) {
            const int p = prev_[static_cast<std::size_t>(from) * m + x];
            out.emplace_back(states_[p], states_[x]);
            x = p;
        }
    }

    const SteinerGraph& graph_;
    std::vector<int> terminals_;
    Mode mode_;
    std::vector<int> states_;
    std::vector<int> state_of_;
    std::vector<int> dist_;
    std::vector<int> prev_;
    std::vector<int> base_;
    std::vector<int> entry_;
    std::vector<int> dp_;
    std::vector<std::uint32_t> split_;
    std::vector<int> via_;
};

namespace {

SteinerTreeSolution tidy(const SteinerGraph& graph, const std::vector<VertexEdge>& raw, const std::vector<int>& keep) {
    auto tree = make_tree(forest_of(raw, graph.vertex_count()), keep);
    return prune_steiner_leaves(graph, std::move(tree));
}

}  // namespace

SteinerTreeSolution dreyfus_wagner(const SteinerGraph& graph, const std::vector<int>& terminals) {
    if (static_cast<int>(terminals.size()) > kDreyfusWagnerTerminalCap)
        throw Error(ErrorCode::TooLarge, "Dreyfus-Wagner is capped at " + std::to_string(kDreyfusWagnerTerminalCap) + " terminals",
                    static_cast<long>(terminals.size()));
    if (terminals.empty()) return {};
    if (terminals.size() == 1) return make_tree({}, terminals);
    // The last terminal is the anchor state; the DP covers the others.
    std::vector<int> rest(terminals.begin(), terminals.end() - 1);
    const int anchor = terminals.back();
    const SubsetSteinerDp dp(graph, rest, static_cast<int>(rest.size()), SubsetSteinerDp::Mode::Plain);
    const std::uint32_t full = (1U << rest.size()) - 1;
    const int s = dp.state_of(anchor);
    if (dp.value(full, s) >= kInf) throw Error(ErrorCode::Disconnected, "terminals are not mutually reachable");
    std::vector<VertexEdge> raw;
    dp.rebuild(full, s, raw);
    // Plain trees may end at non-listed vertices; prune only with respect to the requested set.
    std::vector<VertexKind> kinds(graph.vertex_count(), VertexKind::Steiner);
    for (int t : terminals) kinds[t] = VertexKind::Terminal;
    SteinerGraph marker(kinds);
    auto tree = make_tree(forest_of(raw, graph.vertex_count()), terminals);
    return prune_steiner_leaves(marker, std::move(tree));
}

SteinerTreeSolution exact_steiner(const SteinerInstance& si) {
    const auto terminals = si.all_terminals();
    if (si.terminal_count() <= kDreyfusWagnerTerminalCap) return dreyfus_wagner(si.graph, terminals);
    if (si.link_count() > kExhaustiveSteinerCap)
        throw Error(ErrorCode::TooLarge, "exact Steiner needs t <= 12 or |S| <= 20", si.link_count());
    const int n = si.link_count();
    for (int size = 0; size <= n; ++size) {
        std::vector<int> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            std::vector<int> vertices = terminals;
            for (int l : idx) vertices.push_back(si.steiner_vertex(l));
            std::vector<VertexEdge> edges;
            if (induced_spanning_tree(si.graph, vertices, edges)) return make_tree(std::move(edges), vertices);
        } while (next_combination(idx, n));
    }
    throw Error(ErrorCode::Disconnected, "terminals are not mutually reachable");
}

FullComponentTable::FullComponentTable(const SteinerGraph& graph, std::vector<int> terminals, int max_terminals)
    : max_terminals_(max_terminals) {
    if (static_cast<int>(terminals.size()) > kComponentTerminalCap)
        throw Error(ErrorCode::TooLarge, "component tables are capped at " + std::to_string(kComponentTerminalCap) + " terminals",
                    static_cast<long>(terminals.size()));
    if (max_terminals < 2) throw Error(ErrorCode::InvalidInput, "components need at least 2 terminals", max_terminals);
    dp_ = std::make_shared<const SubsetSteinerDp>(graph, std::move(terminals), max_terminals - 1,
                                                  SubsetSteinerDp::Mode::FullComponent);
}

const std::vector<int>& FullComponentTable::terminals() const { return dp_->terminals(); }

std::optional<int> FullComponentTable::cost(std::uint32_t mask) const {
    const int bits = std::popcount(mask);
    if (bits < 2 || bits > max_terminals_) return std::nullopt;
    const auto& g = dp_->graph();
    const auto& ts = dp_->terminals();
    const int last = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask ^ (1U << last);
    if (bits == 2 && g.adjacent(ts[last], ts[std::countr_zero(rest)])) return 1;
    int best = kInf;
    for (int w : g.neighbors(ts[last])) {
        const int s = dp_->state_of(w);
        if (s < 0) continue;
        best = std::min(best, dp_->value(rest, s) + 1);
    }
    if (best >= kInf) return std::nullopt;
    return best;
}

SteinerTreeSolution FullComponentTable::tree(std::uint32_t mask) const {
    const auto c = cost(mask);
    if (!c) throw Error(ErrorCode::InvalidInput, "no full component on this terminal set");
    const auto& g = dp_->graph();
    const auto& ts = dp_->terminals();
    const int last = 31 - std::countl_zero(mask);
    const std::uint32_t rest = mask ^ (1U << last);
    std::vector<int> members;
    for (std::uint32_t m = mask; m; m &= m - 1) members.push_back(ts[std::countr_zero(m)]);
    std::vector<VertexEdge> raw;
    if (*c == 1 && std::popcount(mask) == 2) {
        raw.emplace_back(ts[last], ts[std::countr_zero(rest)]);
    } else {
        int best = kInf, arg = -1;
        for (int w : g.neighbors(ts[last])) {
            const int s = dp_->state_of(w);
            if (s < 0) continue;
            if (dp_->value(rest, s) + 1 < best) {
                best = dp_->value(rest, s) + 1;
                arg = s;
            }
        }
        raw.emplace_back(ts[last], dp_->states()[arg]);
        dp_->rebuild(rest, arg, raw);
    }
    return tidy(g, raw, members);
}

std::optional<SteinerTreeSolution> min_full_component(const SteinerGraph& graph, const std::vector<int>& terminals) {
    if (terminals.size() < 2) return std::nullopt;
    const FullComponentTable table(graph, terminals, static_cast<int>(terminals.size()));
    const std::uint32_t full = (1U << terminals.size()) - 1;
    if (!table.cost(full)) return std::nullopt;
    return table.tree(full);
}

}  // namespace cacaug
