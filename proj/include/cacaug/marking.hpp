#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cacaug/reduction.hpp"
#include "cacaug/rng.hpp"
#include "cacaug/steiner_graph.hpp"

namespace cacaug {

enum class NodeKind : std::uint8_t { Terminal, Steiner };

/// A Steiner tree rooted at a Steiner node with a terminal child. Node ids
/// are 0..n-1; children lists are ascending.
///
/// Construction enforces: one root, no parent cycles, terminals are leaves,
/// at most two terminal children per Steiner node, and a terminal child at
/// the root. Childless Steiner nodes are representable; sampling rejects them.
class RootedSteinerTree {
public:
    static RootedSteinerTree from_parents(std::vector<NodeKind> kinds, std::vector<int> parents,
                                          std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(kinds_.size()); }
    int root() const { return root_; }
    NodeKind kind(int v) const { return kinds_[v]; }
    bool is_terminal(int v) const { return kinds_[v] == NodeKind::Terminal; }
    bool is_steiner(int v) const { return kinds_[v] == NodeKind::Steiner; }
    int parent(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    const std::string& label(int v) const { return labels_[v]; }
    int depth(int v) const { return depth_[v]; }

    int d(int v) const { return static_cast<int>(children_[v].size()); }
    int t(int v) const { return terminal_children_[v]; }
    int s(int v) const { return d(v) - t(v); }

    /// Root first, every parent before its children.
    const std::vector<int>& preorder() const { return preorder_; }
    std::vector<int> steiner_nodes() const;
    std::vector<int> terminals() const;
    int steiner_count() const;
    int terminal_count() const { return size() - steiner_count(); }
    /// Node id for a label, or -1.
    int find(const std::string& label) const;

    /// Every Steiner node has >= 2 children and 0 or 2 terminal children.
    bool is_well_structured() const;

private:
    std::vector<NodeKind> kinds_;
    std::vector<int> parents_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> children_;
    std::vector<int> terminal_children_;
    std::vector<int> depth_;
    std::vector<int> preorder_;
    int root_ = -1;
};

/// Unrooted tree with node kinds, as produced by a Steiner tree solution.
struct UnrootedSteinerTree {
    std::vector<NodeKind> kinds;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
};

/// Lowest-id Steiner node adjacent to a terminal. Throws NoQualifyingRoot.
int choose_root(const UnrootedSteinerTree& tree);
RootedSteinerTree root_at(const UnrootedSteinerTree& tree, int root);
/// Nodes of `solution` renumbered in ascending original order, labelled
/// v<node+1> for terminals and l<link+1> for links.
UnrootedSteinerTree tree_of_solution(const SteinerInstance& si, const SteinerTreeSolution& solution);

/// marked_child[l] = the child reached by m(l) for Steiner l, -1 for terminals.
struct Marking {
    std::vector<int> marked_child;

    /// Whether the edge from parent(v) to v is marked.
    bool edge_marked(const RootedSteinerTree& tree, int v) const {
        const int p = tree.parent(v);
        return p >= 0 && marked_child[p] == v;
    }
};

/// One marked child per Steiner node, a terminal one whenever t(l) > 0.
bool is_valid_marking(const RootedSteinerTree& tree, const Marking& marking);
/// Throws ChildlessSteinerNode.
Marking sample_marking(const RootedSteinerTree& tree, Rng& rng);

/// Tree edges are named by their lower endpoint (the child).
using TerminalPair = std::pair<int, int>;  // ascending node ids

/// pairs[v] = W(edge above v) in ascending order; empty for the root.
struct WitnessSets {
    std::vector<std::vector<TerminalPair>> pairs;
    int w(int v) const { return static_cast<int>(pairs[v].size()); }
};

/// By definition: every terminal pair whose path has exactly one unmarked edge.
WitnessSets witness_sets(const RootedSteinerTree& tree, const Marking& marking);

/// top[v] is the terminal reached from v along marked edges (v itself for
/// terminals); one edge {top[p], top[c]} per unmarked tree edge (p, c).
struct WitnessTree {
    std::vector<int> top;
    std::vector<TerminalPair> edges;
    std::vector<int> source;  // source[i] = child end of the tree edge behind edges[i]
    WitnessSets sets;         // recomputed from the paths behind each edge
};

WitnessTree witness_tree(const RootedSteinerTree& tree, const Marking& marking);

/// w(m(l)) for every Steiner node l under one marking, indexed by node
/// (0 for terminals), via the marked chains of the witness tree.
std::vector<int> marked_edge_weights(const RootedSteinerTree& tree, const Marking& marking);

/// c(l) for the degree sequence d_1..d_{q-1} read from l up its chain
/// (d_1 = d(l)); q = d.size() + 1 >= 2.
double cost_formula(std::span<const int> d);
mpq_class cost_formula_exact(std::span<const int> d);

/// Degrees d(l), d(parent(l)), ... up to and including the first ancestor
/// whose edge above is deterministically unmarked (a good father or the
/// root). For the root the sequence is (d(r) - 1).
std::vector<int> chain_degrees(const RootedSteinerTree& tree, int l);

/// E[H_{w(m(l))}] from the ancestor-chain distribution.
mpq_class expected_cost_chain(const RootedSteinerTree& tree, int l);

inline constexpr int kEnumerationSteinerCap = 12;
inline constexpr std::uint64_t kEnumerationMarkingCap = std::uint64_t{1} << 22;

/// E[H_{w(m(l))}] for every node (0 for terminals) by enumerating every
/// marking. Throws TooLargeForEnumeration.
std::vector<mpq_class> expected_costs_enumerated(const RootedSteinerTree& tree);

/// Both routes, asserted equal; throws std::logic_error on disagreement.
/// Falls back to the chain route alone above the enumeration caps.
double expected_cost_exact(const RootedSteinerTree& tree, int l);

struct MonteCarloCosts {
    std::size_t samples = 0;
    std::vector<double> mean;            // per node
    std::vector<double> standard_error;  // of the mean
};

/// Deterministic for a given seed regardless of thread count: samples are
/// split into fixed blocks, each drawn from its own stream.
MonteCarloCosts monte_carlo_costs(const RootedSteinerTree& tree, std::size_t samples, std::uint64_t seed);

struct NodeClassification {
    std::vector<char> good_father;
    std::vector<char> good;
    std::vector<char> leaf_steiner;
};

NodeClassification classify(const RootedSteinerTree& tree);

struct Grouping {
    std::map<int, std::vector<int>> groups;  // internal node -> ascending members
    int leftover = -1;
};

/// Bottom-up; each internal node keeps the s(l)-1 lowest-id candidates and
/// passes the highest one up. Throws NotWellStructured.
Grouping build_groups(const RootedSteinerTree& tree);
/// Groups and the leftover partition the Steiner nodes, |g(l)| = s(l), and
/// every member is a leaf-Steiner descendant of its group's owner.
bool check_grouping(const RootedSteinerTree& tree, const Grouping& grouping);

struct ModifiedCosts {
    std::vector<double> c_prime;         // H_d for good nodes, Ĥ_d for bad
    std::vector<double> c_double_prime;  // after presents
};

/// Throws POutOfRange, NotWellStructured.
ModifiedCosts modified_costs(const RootedSteinerTree& tree, double p);

struct TreeBound {
    double bound = 0.0;       // max over groups of the case-table bound
    double max_group_average = 0.0;
    double average = 0.0;     // (1/|S|) sum c''
    int argmax_group = -1;    // owner node of the maximizing group
};

TreeBound tree_bound(const RootedSteinerTree& tree, double p);

/// Random recursive tree on `steiner_count` Steiner nodes; every Steiner node
/// gets 0 or 2 terminal children (2 when it would otherwise have < 2 children
/// or is the root). Ids: Steiner nodes first, in creation order.
RootedSteinerTree random_well_structured_tree(int steiner_count, Rng& rng);
/// Same shape with t(l) in {0,1,2}, at least one child per node and a
/// terminal at the root.
RootedSteinerTree random_general_tree(int steiner_count, Rng& rng);

/// Copy of `tree` with a second terminal appended under `node` (t(node) == 1).
RootedSteinerTree add_terminal_child(const RootedSteinerTree& tree, int node);

}  // namespace cacaug
