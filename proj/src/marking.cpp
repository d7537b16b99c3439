#include "cacaug/marking.hpp"

#include "cacaug/bounds.hpp"
#include "cacaug/error.hpp"
#include "cacaug/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace cacaug {

RootedSteinerTree RootedSteinerTree::from_parents(std::vector<NodeKind> kinds, std::vector<int> parents,
                                                  std::vector<std::string> labels) {
    const int n = static_cast<int>(kinds.size());
    if (n == 0) throw Error(ErrorCode::InvalidInput, "empty tree");
    if (static_cast<int>(parents.size()) != n) throw Error(ErrorCode::InvalidInput, "kinds and parents differ in length");
    if (labels.empty()) {
        for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    } else if (static_cast<int>(labels.size()) != n) {
        throw Error(ErrorCode::InvalidInput, "kinds and labels differ in length");
    }
    for (int v = 0; v < n; ++v)
        if (parents[v] < -1 || parents[v] >= n) throw Error(ErrorCode::InvalidInput, "parent id out of range", v);

    // 0 = unseen, 1 = on the current upward walk, 2 = reaches a root.
    std::vector<char> state(n, 0);
    for (int v = 0; v < n; ++v) {
        std::vector<int> walk;
        int u = v;
        while (u >= 0 && state[u] == 0) {
            state[u] = 1;
            walk.push_back(u);
            u = parents[u];
        }
        if (u >= 0 && state[u] == 1) throw Error(ErrorCode::CycleInParentArray, "parent array contains a cycle", u);
        for (int x : walk) state[x] = 2;
    }

    RootedSteinerTree tree;
    tree.children_.assign(n, {});
    tree.terminal_children_.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        if (parents[v] < 0) {
            if (tree.root_ >= 0) throw Error(ErrorCode::InvalidInput, "more than one root", v);
            tree.root_ = v;
            continue;
        }
        tree.children_[parents[v]].push_back(v);
        if (kinds[v] == NodeKind::Terminal) ++tree.terminal_children_[parents[v]];
    }
    for (int v = 0; v < n; ++v) {
        if (kinds[v] == NodeKind::Terminal && !tree.children_[v].empty())
            throw Error(ErrorCode::TerminalWithChildren, "terminal " + labels[v] + " has children", v);
        if (tree.terminal_children_[v] > 2)
            throw Error(ErrorCode::ThreeTerminalChildren, "Steiner node " + labels[v] + " has more than two terminal children", v);
    }
    if (kinds[tree.root_] != NodeKind::Steiner || tree.terminal_children_[tree.root_] == 0)
        throw Error(ErrorCode::NoQualifyingRoot, "root must be a Steiner node with a terminal child", tree.root_);

    tree.depth_.assign(n, 0);
    tree.preorder_.push_back(tree.root_);
    for (std::size_t i = 0; i < tree.preorder_.size(); ++i) {
        const int v = tree.preorder_[i];
        for (int c : tree.children_[v]) {
            tree.depth_[c] = tree.depth_[v] + 1;
            tree.preorder_.push_back(c);
        }
    }
    tree.kinds_ = std::move(kinds);
    tree.parents_ = std::move(parents);
    tree.labels_ = std::move(labels);
    return tree;
}

std::vector<int> RootedSteinerTree::steiner_nodes() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (is_steiner(v)) out.push_back(v);
    return out;
}

std::vector<int> RootedSteinerTree::terminals() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (is_terminal(v)) out.push_back(v);
    return out;
}

int RootedSteinerTree::steiner_count() const {
    return static_cast<int>(std::count(kinds_.begin(), kinds_.end(), NodeKind::Steiner));
}

int RootedSteinerTree::find(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

bool RootedSteinerTree::is_well_structured() const {
    for (int v = 0; v < size(); ++v) {
        if (!is_steiner(v)) continue;
        if (d(v) < 2 || (t(v) != 0 && t(v) != 2)) return false;
    }
    return true;
}

int choose_root(const UnrootedSteinerTree& tree) {
    const int n = static_cast<int>(tree.kinds.size());
    std::vector<char> qualifies(n, 0);
    for (const auto& [a, b] : tree.edges) {
        if (tree.kinds[a] == NodeKind::Steiner && tree.kinds[b] == NodeKind::Terminal) qualifies[a] = 1;
        if (tree.kinds[b] == NodeKind::Steiner && tree.kinds[a] == NodeKind::Terminal) qualifies[b] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (qualifies[v]) return v;
    throw Error(ErrorCode::NoQualifyingRoot, "no Steiner node is adjacent to a terminal");
}

RootedSteinerTree root_at(const UnrootedSteinerTree& tree, int root) {
    const int n = static_cast<int>(tree.kinds.size());
    if (root < 0 || root >= n) throw Error(ErrorCode::InvalidInput, "root out of range", root);
    if (static_cast<int>(tree.edges.size()) != n - 1) throw Error(ErrorCode::InvalidInput, "edge count is not n - 1");
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : tree.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> parents(n, -2);
    parents[root] = -1;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int u : adj[v])
            if (parents[u] == -2) {
                parents[u] = v;
                queue.push(u);
            }
    }
    if (std::count(parents.begin(), parents.end(), -2) > 0) throw Error(ErrorCode::InvalidInput, "tree is disconnected");
    return RootedSteinerTree::from_parents(tree.kinds, std::move(parents), tree.labels);
}

UnrootedSteinerTree tree_of_solution(const SteinerInstance& si, const SteinerTreeSolution& solution) {
    UnrootedSteinerTree out;
    std::vector<int> vertices = solution.vertices;
    std::sort(vertices.begin(), vertices.end());
    std::map<int, int> index;
    for (int v : vertices) {
        index.emplace(v, static_cast<int>(out.kinds.size()));
        if (si.is_terminal(v)) {
            out.kinds.push_back(NodeKind::Terminal);
            out.labels.push_back("v" + std::to_string(si.terminal_nodes[v] + 1));
        } else {
            out.kinds.push_back(NodeKind::Steiner);
            out.labels.push_back("l" + std::to_string(si.link_of(v) + 1));
        }
    }
    for (const auto& [a, b] : solution.edges) out.edges.emplace_back(index.at(a), index.at(b));
    return out;
}

bool is_valid_marking(const RootedSteinerTree& tree, const Marking& marking) {
    if (static_cast<int>(marking.marked_child.size()) != tree.size()) return false;
    for (int v = 0; v < tree.size(); ++v) {
        const int m = marking.marked_child[v];
        if (tree.is_terminal(v)) {
            if (m != -1) return false;
            continue;
        }
        if (m < 0 || m >= tree.size() || tree.parent(m) != v) return false;
        if (tree.t(v) > 0 && !tree.is_terminal(m)) return false;
    }
    return true;
}

Marking sample_marking(const RootedSteinerTree& tree, Rng& rng) {
    Marking marking;
    marking.marked_child.assign(tree.size(), -1);
    std::vector<int> options;
    for (int v = 0; v < tree.size(); ++v) {
        if (tree.is_terminal(v)) continue;
        if (tree.d(v) == 0) throw Error(ErrorCode::ChildlessSteinerNode, "Steiner node " + tree.label(v) + " has no children", v);
        options.clear();
        for (int c : tree.children(v))
            if (tree.t(v) == 0 || tree.is_terminal(c)) options.push_back(c);
        marking.marked_child[v] = options[rng.uniform(options.size())];
    }
    return marking;
}

namespace {

/// Child ends of the edges on the tree path between a and b.
std::vector<int> path_edges(const RootedSteinerTree& tree, int a, int b) {
    std::vector<int> up, down;
    while (tree.depth(a) > tree.depth(b)) {
        up.push_back(a);
        a = tree.parent(a);
    }
    while (tree.depth(b) > tree.depth(a)) {
        down.push_back(b);
        b = tree.parent(b);
    }
    while (a != b) {
        up.push_back(a);
        down.push_back(b);
        a = tree.parent(a);
        b = tree.parent(b);
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

/// Steiner nodes visited from v along marked edges, v included, down to
/// (excluding) its terminal.
template <typename Fn>
void for_chain(const RootedSteinerTree& tree, const Marking& marking, int v, Fn&& fn) {
    while (tree.is_steiner(v)) {
        fn(v);
        v = marking.marked_child[v];
    }
}

std::vector<int> tops(const RootedSteinerTree& tree, const Marking& marking) {
    std::vector<int> top(tree.size(), -1);
    const auto& order = tree.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        top[v] = tree.is_terminal(v) ? v : top[marking.marked_child[v]];
    }
    return top;
}

}  // namespace

WitnessSets witness_sets(const RootedSteinerTree& tree, const Marking& marking) {
    WitnessSets sets;
    sets.pairs.assign(tree.size(), {});
    const auto terms = tree.terminals();
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const auto path = path_edges(tree, terms[i], terms[j]);
            const auto unmarked = std::count_if(path.begin(), path.end(), [&](int c) { return !marking.edge_marked(tree, c); });
            if (unmarked != 1) continue;
            for (int c : path) sets.pairs[c].emplace_back(terms[i], terms[j]);
        }
    return sets;
}

WitnessTree witness_tree(const RootedSteinerTree& tree, const Marking& marking) {
    WitnessTree w;
    w.top = tops(tree, marking);
    w.sets.pairs.assign(tree.size(), {});
    for (int c = 0; c < tree.size(); ++c) {
        const int p = tree.parent(c);
        if (p < 0 || marking.edge_marked(tree, c)) continue;
        const TerminalPair pair{std::min(w.top[p], w.top[c]), std::max(w.top[p], w.top[c])};
        w.edges.push_back(pair);
        w.source.push_back(c);
        // p(e): top[p] up the marked chain to p, the edge (p, c), then c down to top[c].
        for_chain(tree, marking, p, [&](int x) { w.sets.pairs[marking.marked_child[x]].push_back(pair); });
        w.sets.pairs[c].push_back(pair);
        for_chain(tree, marking, c, [&](int x) { w.sets.pairs[marking.marked_child[x]].push_back(pair); });
    }
    for (auto& list : w.sets.pairs) std::sort(list.begin(), list.end());
    return w;
}

std::vector<int> marked_edge_weights(const RootedSteinerTree& tree, const Marking& marking) {
    std::vector<int> w(tree.size(), 0);
    for (int c = 0; c < tree.size(); ++c) {
        const int p = tree.parent(c);
        if (p < 0 || marking.edge_marked(tree, c)) continue;
        for_chain(tree, marking, p, [&](int x) { ++w[x]; });
        for_chain(tree, marking, c, [&](int x) { ++w[x]; });
    }
    return w;
}

mpq_class cost_formula_exact(std::span<const int> d) {
    if (d.empty()) throw Error(ErrorCode::InvalidInput, "cost formula needs at least one degree");
    mpq_class value = 0, product = 1;
    long sum = d[0];
    for (std::size_t h = 1; h < d.size(); ++h) {
        if (d[h] < 1) throw Error(ErrorCode::InvalidInput, "degrees must be positive");
        product *= d[h];
        value += mpq_class(d[h] - 1) * harmonic_exact(static_cast<int>(sum - static_cast<long>(h) + 1)) / product;
        sum += d[h];
    }
    value += harmonic_exact(static_cast<int>(sum - static_cast<long>(d.size()) + 1)) / product;
    value.canonicalize();
    return value;
}

double cost_formula(std::span<const int> d) {
    const long total = std::accumulate(d.begin(), d.end(), 0L);
    if (total <= 64) return cost_formula_exact(d).get_d();
    return f_finite(std::vector<int>(d.begin(), d.end()));
}

std::vector<int> chain_degrees(const RootedSteinerTree& tree, int l) {
    if (!tree.is_steiner(l)) throw Error(ErrorCode::InvalidInput, "not a Steiner node", l);
    if (l == tree.root()) throw Error(ErrorCode::InvalidInput, "the root has no chain", l);
    std::vector<int> seq{tree.d(l)};
    for (int v = tree.parent(l); tree.t(v) == 0; v = tree.parent(v)) seq.push_back(tree.d(v));
    return seq;
}

mpq_class expected_cost_chain(const RootedSteinerTree& tree, int l) {
    if (!tree.is_steiner(l)) throw Error(ErrorCode::InvalidInput, "not a Steiner node", l);
    if (tree.d(l) == 0) throw Error(ErrorCode::ChildlessSteinerNode, "Steiner node has no children", l);
    if (l == tree.root()) return harmonic_exact(tree.d(l) - 1);
    return cost_formula_exact(chain_degrees(tree, l));
}

std::vector<mpq_class> expected_costs_enumerated(const RootedSteinerTree& tree) {
    const auto steiner = tree.steiner_nodes();
    if (static_cast<int>(steiner.size()) > kEnumerationSteinerCap)
        throw Error(ErrorCode::TooLargeForEnumeration, "too many Steiner nodes to enumerate markings",
                    static_cast<long>(steiner.size()));
    std::vector<std::vector<int>> options;
    std::uint64_t total = 1;
    for (int v : steiner) {
        std::vector<int> opts;
        for (int c : tree.children(v))
            if (tree.t(v) == 0 || tree.is_terminal(c)) opts.push_back(c);
        if (opts.empty()) throw Error(ErrorCode::ChildlessSteinerNode, "Steiner node has no children", v);
        total *= opts.size();
        if (total > kEnumerationMarkingCap)
            throw Error(ErrorCode::TooLargeForEnumeration, "too many markings to enumerate");
        options.push_back(std::move(opts));
    }

    // counts[v][w] = number of markings with w(m(v)) = w
    std::vector<std::vector<std::uint64_t>> counts(tree.size());
    Marking marking;
    marking.marked_child.assign(tree.size(), -1);
    std::vector<std::size_t> digit(steiner.size(), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
        for (std::size_t i = 0; i < steiner.size(); ++i) marking.marked_child[steiner[i]] = options[i][digit[i]];
        const auto w = marked_edge_weights(tree, marking);
        for (int v : steiner) {
            if (counts[v].size() <= static_cast<std::size_t>(w[v])) counts[v].resize(w[v] + 1, 0);
            ++counts[v][w[v]];
        }
        for (std::size_t i = 0; i < steiner.size(); ++i) {
            if (++digit[i] < options[i].size()) break;
            digit[i] = 0;
        }
    }

    std::vector<mpq_class> out(tree.size(), 0);
    const mpz_class denom(static_cast<unsigned long>(total));
    for (int v : steiner) {
        mpq_class sum = 0;
        for (std::size_t w = 0; w < counts[v].size(); ++w)
            if (counts[v][w]) sum += mpq_class(mpz_class(static_cast<unsigned long>(counts[v][w]))) * harmonic_exact(static_cast<int>(w));
        out[v] = sum / denom;
        out[v].canonicalize();
    }
    return out;
}

double expected_cost_exact(const RootedSteinerTree& tree, int l) {
    const mpq_class chain = expected_cost_chain(tree, l);
    try {
        const auto enumerated = expected_costs_enumerated(tree);
        if (enumerated[l] != chain) throw std::logic_error("chain and enumeration expectations disagree at " + tree.label(l));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLargeForEnumeration) throw;
    }
    return chain.get_d();
}

MonteCarloCosts monte_carlo_costs(const RootedSteinerTree& tree, std::size_t samples, std::uint64_t seed) {
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    const int n = tree.size();
    std::vector<std::vector<double>> sums(blocks, std::vector<double>(n, 0.0)), squares = sums;
    const int top = tree.size() + 1;
    std::vector<double> h(static_cast<std::size_t>(top) + 1, 0.0);
    for (int j = 1; j <= top; ++j) h[j] = h[j - 1] + 1.0 / j;

    parallel_for(blocks, [&](std::size_t b) {
        Rng rng(Rng::stream_seed(seed, b));
        const std::size_t count = std::min(kBlock, samples - b * kBlock);
        for (std::size_t s = 0; s < count; ++s) {
            const auto w = marked_edge_weights(tree, sample_marking(tree, rng));
            for (int v = 0; v < n; ++v) {
                if (!tree.is_steiner(v)) continue;
                sums[b][v] += h[w[v]];
                squares[b][v] += h[w[v]] * h[w[v]];
            }
        }
    });

    MonteCarloCosts out;
    out.samples = samples;
    out.mean.assign(n, 0.0);
    out.standard_error.assign(n, 0.0);
    if (samples == 0) return out;
    for (int v = 0; v < n; ++v) {
        double sum = 0.0, sq = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            sum += sums[b][v];
            sq += squares[b][v];
        }
        const double mean = sum / static_cast<double>(samples);
        const double var = std::max(0.0, sq / static_cast<double>(samples) - mean * mean);
        out.mean[v] = mean;
        out.standard_error[v] = std::sqrt(var / static_cast<double>(samples));
    }
    return out;
}

NodeClassification classify(const RootedSteinerTree& tree) {
    const int n = tree.size();
    NodeClassification c{std::vector<char>(n, 0), std::vector<char>(n, 0), std::vector<char>(n, 0)};
    for (int v = 0; v < n; ++v) {
        if (!tree.is_steiner(v)) continue;
        c.good_father[v] = tree.t(v) > 0;
        c.leaf_steiner[v] = tree.s(v) == 0;
    }
    for (int v = 0; v < n; ++v)
        if (tree.is_steiner(v) && tree.parent(v) >= 0) c.good[v] = c.good_father[tree.parent(v)];
    return c;
}

namespace {

void require_well_structured(const RootedSteinerTree& tree) {
    for (int v = 0; v < tree.size(); ++v)
        if (tree.is_steiner(v) && (tree.d(v) < 2 || (tree.t(v) != 0 && tree.t(v) != 2)))
            throw Error(ErrorCode::NotWellStructured, "Steiner node " + tree.label(v) + " breaks the well-structured shape", v);
}

std::vector<int> steiner_children(const RootedSteinerTree& tree, int v) {
    std::vector<int> out;
    for (int c : tree.children(v))
        if (tree.is_steiner(c)) out.push_back(c);
    return out;
}

}  // namespace

Grouping build_groups(const RootedSteinerTree& tree) {
    require_well_structured(tree);
    Grouping g;
    // carry[v]: the one unprocessed leaf-Steiner node left in v's subtree
    std::vector<int> carry(tree.size(), -1);
    const auto& order = tree.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (!tree.is_steiner(v)) continue;
        if (tree.s(v) == 0) {
            carry[v] = v;
            continue;
        }
        std::vector<int> candidates;
        for (int c : steiner_children(tree, v)) candidates.push_back(carry[c]);
        std::sort(candidates.begin(), candidates.end());
        std::vector<int> members(candidates.begin(), candidates.end() - 1);
        members.push_back(v);
        std::sort(members.begin(), members.end());
        g.groups.emplace(v, std::move(members));
        carry[v] = candidates.back();
    }
    g.leftover = carry[tree.root()];
    return g;
}

bool check_grouping(const RootedSteinerTree& tree, const Grouping& grouping) {
    if (!tree.is_well_structured()) return false;
    const int n = tree.size();
    std::vector<int> seen(n, 0);
    for (const auto& [owner, members] : grouping.groups) {
        if (owner < 0 || owner >= n || !tree.is_steiner(owner) || tree.s(owner) == 0) return false;
        if (static_cast<int>(members.size()) != tree.s(owner)) return false;
        if (std::find(members.begin(), members.end(), owner) == members.end()) return false;
        for (int m : members) {
            if (m < 0 || m >= n || !tree.is_steiner(m)) return false;
            ++seen[m];
        }
    }
    if (grouping.leftover < 0 || grouping.leftover >= n) return false;
    ++seen[grouping.leftover];
    for (int v = 0; v < n; ++v)
        if (tree.is_steiner(v) != (seen[v] == 1) || seen[v] > 1) return false;

    // Replay the bottom-up process: each group's leaves must be s-1 of the
    // s candidates coming up from its Steiner children.
    std::vector<int> carry(n, -1);
    const auto& order = tree.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (!tree.is_steiner(v)) continue;
        if (tree.s(v) == 0) {
            if (grouping.groups.count(v)) return false;
            carry[v] = v;
            continue;
        }
        const auto found = grouping.groups.find(v);
        if (found == grouping.groups.end()) return false;
        std::vector<int> candidates;
        for (int c : steiner_children(tree, v)) candidates.push_back(carry[c]);
        std::vector<int> leaves;
        for (int m : found->second)
            if (m != v) leaves.push_back(m);
        std::vector<int> left;
        for (int cand : candidates)
            if (std::find(leaves.begin(), leaves.end(), cand) == leaves.end()) left.push_back(cand);
        if (left.size() != 1 || leaves.size() + 1 != candidates.size()) return false;
        carry[v] = left.front();
    }
    return carry[tree.root()] == grouping.leftover;
}

ModifiedCosts modified_costs(const RootedSteinerTree& tree, double p) {
    if (!(p >= 0.0 && p <= present_max() + 1e-15)) throw Error(ErrorCode::POutOfRange, "present must lie in [0, Ĥ_2 - H_2]");
    require_well_structured(tree);
    const auto cls = classify(tree);
    ModifiedCosts out{std::vector<double>(tree.size(), 0.0), std::vector<double>(tree.size(), 0.0)};
    for (int v = 0; v < tree.size(); ++v) {
        if (!tree.is_steiner(v)) continue;
        const int d = tree.d(v), s = tree.s(v);
        const double base = cls.good[v] ? harmonic(d) : h_hat(d);
        out.c_prime[v] = base;
        out.c_double_prime[v] = base + (cls.good[v] ? p : 0.0) - (cls.good_father[v] ? s * p : 0.0);
    }
    return out;
}

TreeBound tree_bound(const RootedSteinerTree& tree, double p) {
    const auto costs = modified_costs(tree, p);
    const auto cls = classify(tree);
    const auto grouping = build_groups(tree);
    TreeBound out;

    double total = 0.0;
    for (int v : tree.steiner_nodes()) total += costs.c_double_prime[v];
    out.average = total / tree.steiner_count();

    out.bound = h_hat(2);
    out.max_group_average = costs.c_double_prime[grouping.leftover];
    out.argmax_group = grouping.leftover;
    for (const auto& [owner, members] : grouping.groups) {
        double sum = 0.0;
        for (int m : members) sum += costs.c_double_prime[m];
        out.max_group_average = std::max(out.max_group_average, sum / static_cast<double>(members.size()));
        const int which = cls.good[owner] ? (cls.good_father[owner] ? 0 : 1) : (cls.good_father[owner] ? 2 : 3);
        const double bound = a_funcs(tree.s(owner), p)[which];
        if (bound > out.bound) {
            out.bound = bound;
            out.argmax_group = owner;
        }
    }
    return out;
}

namespace {

RootedSteinerTree random_tree(int steiner_count, Rng& rng, bool well_structured) {
    if (steiner_count < 1) throw Error(ErrorCode::InvalidInput, "need at least one Steiner node", steiner_count);
    std::vector<int> parents(steiner_count, -1);
    std::vector<int> s(steiner_count, 0);
    for (int i = 1; i < steiner_count; ++i) {
        parents[i] = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(i)));
        ++s[parents[i]];
    }
    std::vector<NodeKind> kinds(steiner_count, NodeKind::Steiner);
    std::vector<std::string> labels;
    for (int i = 0; i < steiner_count; ++i) labels.push_back("l" + std::to_string(i + 1));
    int terminal = 0;
    for (int i = 0; i < steiner_count; ++i) {
        int t;
        if (well_structured)
            t = (i == 0 || s[i] < 2) ? 2 : 2 * static_cast<int>(rng.uniform(2));
        else
            t = (i == 0 || s[i] == 0) ? static_cast<int>(rng.uniform_int(1, 2)) : static_cast<int>(rng.uniform(3));
        for (int j = 0; j < t; ++j) {
            kinds.push_back(NodeKind::Terminal);
            parents.push_back(i);
            labels.push_back("v" + std::to_string(++terminal));
        }
    }
    return RootedSteinerTree::from_parents(std::move(kinds), std::move(parents), std::move(labels));
}

}  // namespace

RootedSteinerTree random_well_structured_tree(int steiner_count, Rng& rng) { return random_tree(steiner_count, rng, true); }

RootedSteinerTree random_general_tree(int steiner_count, Rng& rng) { return random_tree(steiner_count, rng, false); }

RootedSteinerTree add_terminal_child(const RootedSteinerTree& tree, int node) {
    if (node < 0 || node >= tree.size() || !tree.is_steiner(node) || tree.t(node) != 1)
        throw Error(ErrorCode::InvalidInput, "node must be a Steiner node with exactly one terminal child", node);
    std::vector<NodeKind> kinds;
    std::vector<int> parents;
    std::vector<std::string> labels;
    for (int v = 0; v < tree.size(); ++v) {
        kinds.push_back(tree.kind(v));
        parents.push_back(tree.parent(v));
        labels.push_back(tree.label(v));
    }
    kinds.push_back(NodeKind::Terminal);
    parents.push_back(node);
    labels.push_back("v+" + std::to_string(tree.size()));
    return RootedSteinerTree::from_parents(std::move(kinds), std::move(parents), std::move(labels));
}

}  // namespace cacaug
