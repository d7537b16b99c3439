#include "doctest.h"

#include "cacaug/bounds.hpp"
#include "cacaug/error.hpp"
#include "cacaug/marking.hpp"
#include "support.hpp"

#include <cmath>
#include <set>

using namespace cacaug;

namespace {

RootedSteinerTree fig2() { return parse_tree(read_text_file(support::data_path("fig2.tree"))); }

/// Choices of m(l) under the terminal-favoring rule.
std::vector<int> choices(const RootedSteinerTree& tree, int v) {
    std::vector<int> out;
    for (int c : tree.children(v))
        if (tree.t(v) == 0 || tree.is_terminal(c)) out.push_back(c);
    return out;
}

/// E[H_{w(m(l))}] by enumerating every marking and reading w straight off
/// the by-definition witness sets.
std::vector<mpq_class> expected_by_definition(const RootedSteinerTree& tree) {
    const auto steiner = tree.steiner_nodes();
    std::vector<std::vector<int>> options;
    std::size_t total = 1;
    for (int v : steiner) {
        options.push_back(choices(tree, v));
        total *= options.back().size();
    }
    std::vector<mpq_class> sum(tree.size(), 0);
    Marking marking{std::vector<int>(tree.size(), -1)};
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t rest = code;
        for (std::size_t i = 0; i < steiner.size(); ++i) {
            marking.marked_child[steiner[i]] = options[i][rest % options[i].size()];
            rest /= options[i].size();
        }
        const auto sets = witness_sets(tree, marking);
        for (int v : steiner) sum[v] += harmonic_exact(sets.w(marking.marked_child[v]));
    }
    for (auto& s : sum) s /= static_cast<unsigned long>(total);
    return sum;
}

Marking published_marking(const RootedSteinerTree& tree) {
    Marking m{std::vector<int>(tree.size(), -1)};
    const auto set = [&](const char* a, const char* b) { m.marked_child[tree.find(a)] = tree.find(b); };
    set("l4", "v3");
    set("l1", "l3");
    set("l2", "v5");
    set("l3", "l7");
    set("l5", "v4");
    set("l6", "v12");
    set("l7", "v9");
    return m;
}

UnrootedSteinerTree unrooted(const RootedSteinerTree& tree) {
    UnrootedSteinerTree u;
    for (int v = 0; v < tree.size(); ++v) {
        u.kinds.push_back(tree.kind(v));
        u.labels.push_back(tree.label(v));
        if (tree.parent(v) >= 0) u.edges.emplace_back(tree.parent(v), v);
    }
    return u;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidInput;
}

const auto S = NodeKind::Steiner;
const auto T = NodeKind::Terminal;

}  // namespace

TEST_CASE("figure 2 tree shape") {
    const auto tree = fig2();
    CHECK(tree.steiner_count() == 7);
    CHECK(tree.terminal_count() == 10);
    CHECK(tree.size() - 1 == 16);
    CHECK(tree.label(tree.root()) == "l4");
    CHECK(tree.is_well_structured());
    const auto cls = classify(tree);
    CHECK(cls.good_father[tree.find("l2")]);
    CHECK(!cls.good_father[tree.find("l3")]);
    CHECK(cls.good[tree.find("l5")]);
    CHECK(!cls.good[tree.find("l6")]);
    CHECK(!cls.good[tree.root()]);
}

TEST_CASE("figure 2 expected costs, three ways") {
    const auto tree = fig2();
    const auto oracle = expected_by_definition(tree);
    const auto enumerated = expected_costs_enumerated(tree);
    const std::map<std::string, mpq_class> frozen{
        {"l1", mpq_class(3, 2)}, {"l2", mpq_class(47, 24)}, {"l3", mpq_class(5, 3)}, {"l4", mpq_class(3, 2)},
        {"l5", mpq_class(3, 2)}, {"l6", mpq_class(83, 48)}, {"l7", mpq_class(83, 48)},
    };
    for (int v : tree.steiner_nodes()) {
        CHECK(enumerated[v] == oracle[v]);
        CHECK(expected_cost_chain(tree, v) == oracle[v]);
        CHECK(expected_cost_exact(tree, v) == doctest::Approx(oracle[v].get_d()).epsilon(1e-15));
        CHECK(oracle[v] == frozen.at(tree.label(v)));
    }
    // l7 sits under l3 under l1; its chain stops at the good father l4.
    const int l7 = tree.find("l7");
    const auto chain = chain_degrees(tree, l7);
    CHECK(chain == std::vector<int>{2, 2, 2});
    CHECK(cost_formula_exact(chain) == expected_cost_chain(tree, l7));
}

TEST_CASE("figure 2 witness sets under the published marking") {
    const auto tree = fig2();
    const auto marking = published_marking(tree);
    REQUIRE(is_valid_marking(tree, marking));
    const auto sets = witness_sets(tree, marking);
    const int l7 = tree.find("l7");
    const auto v = [&](const char* name) { return tree.find(name); };
    const std::vector<TerminalPair> expected{{v("v3"), v("v9")}, {v("v5"), v("v9")}, {v("v12"), v("v9")}};
    CHECK(sets.pairs[l7] == expected);
    CHECK(sets.w(l7) == tree.d(tree.find("l3")) + tree.d(tree.find("l1")) - 1);

    const auto wt = witness_tree(tree, marking);
    CHECK(wt.edges.size() == 9);
    CHECK(wt.sets.pairs == sets.pairs);
    const auto weights = marked_edge_weights(tree, marking);
    for (int s : tree.steiner_nodes()) CHECK(weights[s] == sets.w(marking.marked_child[s]));
}

TEST_CASE("choose_root") {
    const auto tree = fig2();
    const int root = choose_root(unrooted(tree));
    const std::set<std::string> allowed{"l4", "l2", "l5", "l6", "l7"};
    CHECK(allowed.count(tree.label(root)) == 1);
    CHECK(tree.label(root) == "l2");

    UnrootedSteinerTree single{{S, T, T}, {{0, 1}, {0, 2}}, {"r", "a", "b"}};
    CHECK(choose_root(single) == 0);
    UnrootedSteinerTree chain{{S, S, S, T, T}, {{0, 1}, {1, 2}, {2, 3}, {2, 4}}, {}};
    CHECK(choose_root(chain) == 2);
    const auto rooted = root_at(chain, 2);
    CHECK(rooted.root() == 2);
    CHECK(rooted.parent(0) == 1);
    UnrootedSteinerTree none{{S, S}, {{0, 1}}, {}};
    CHECK(code_of([&] { choose_root(none); }) == ErrorCode::NoQualifyingRoot);
}

TEST_CASE("marking frequencies follow the terminal-favoring rule") {
    // Root r: t = 2. Node a: t = 1, s = 3. Node b: t = 0, s = 3.
    //   r(0) -> a(1), t, t ; a -> b(2), c(3), e(4), t ; b -> f(5), g(6), h(7)
    std::vector<NodeKind> kinds{S, S, S, S, S, S, S, S};
    std::vector<int> parents{-1, 0, 1, 1, 1, 2, 2, 2};
    auto add_terminals = [&](int node, int count) {
        for (int i = 0; i < count; ++i) kinds.push_back(T), parents.push_back(node);
    };
    add_terminals(0, 2);
    add_terminals(1, 1);
    for (int v = 3; v <= 7; ++v) add_terminals(v, 2);
    const auto tree = RootedSteinerTree::from_parents(kinds, parents);
    Rng rng(99);
    const int n = 100000;
    std::map<int, int> at_root, at_b;
    int a_terminal = 0;
    for (int i = 0; i < n; ++i) {
        const auto m = sample_marking(tree, rng);
        REQUIRE(is_valid_marking(tree, m));
        ++at_root[m.marked_child[0]];
        ++at_b[m.marked_child[2]];
        a_terminal += tree.is_terminal(m.marked_child[1]);
    }
    CHECK(a_terminal == n);
    CHECK(at_root.size() == 2);
    for (auto [child, count] : at_root) {
        CHECK(tree.is_terminal(child));
        CHECK(std::abs(count / double(n) - 0.5) < 3 * std::sqrt(0.25 / n));
    }
    CHECK(at_b.size() == 3);
    for (auto [child, count] : at_b)
        CHECK(std::abs(count / double(n) - 1.0 / 3) < 3 * std::sqrt((1.0 / 3) * (2.0 / 3) / n));
}

TEST_CASE("structural properties of random markings") {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto tree = random_general_tree(static_cast<int>(rng.uniform_int(1, 10)), rng);
        const auto m = sample_marking(tree, rng);
        int unmarked = 0;
        for (int v = 0; v < tree.size(); ++v)
            if (tree.parent(v) >= 0 && !m.edge_marked(tree, v)) ++unmarked;
        CHECK(unmarked == tree.terminal_count() - 1);
        for (int v : tree.steiner_nodes()) {
            int u = v, steps = 0;
            while (tree.is_steiner(u) && steps++ <= tree.size()) u = m.marked_child[u];
            CHECK(tree.is_terminal(u));
        }
        const auto sets = witness_sets(tree, m);
        const auto wt = witness_tree(tree, m);
        CHECK(wt.sets.pairs == sets.pairs);
        CHECK(wt.edges.size() == static_cast<std::size_t>(unmarked));
        for (int v = 0; v < tree.size(); ++v)
            if (tree.parent(v) >= 0 && !m.edge_marked(tree, v)) CHECK(sets.w(v) == 1);
    }
}

TEST_CASE("cost formula values") {
    CHECK(cost_formula_exact(std::vector<int>{2, 2}) == mpq_class(5, 3));
    for (int d = 1; d <= 20; ++d) CHECK(cost_formula_exact(std::vector<int>{d}) == harmonic_exact(d));
    CHECK(cost_formula(std::vector<int>{2, 2}) == doctest::Approx(5.0 / 3).epsilon(1e-15));
    Rng rng(8);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<int> d(static_cast<std::size_t>(rng.uniform_int(1, 8)));
        for (int& x : d) x = static_cast<int>(rng.uniform_int(1, 6));
        CHECK(cost_formula(d) <= h_hat(d[0]) + 1e-12);
    }
}

TEST_CASE("root and good-father children are deterministic") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto tree = random_general_tree(static_cast<int>(rng.uniform_int(1, 9)), rng);
        const int r = tree.root();
        CHECK(expected_cost_chain(tree, r) == harmonic_exact(tree.d(r) - 1));
        for (int v : tree.steiner_nodes()) {
            const int p = tree.parent(v);
            if (p >= 0 && tree.t(p) > 0) CHECK(expected_cost_chain(tree, v) == harmonic_exact(tree.d(v)));
            CHECK(expected_cost_chain(tree, v).get_d() <= h_hat(tree.d(v)) + 1e-12);
        }
    }
}

TEST_CASE("chain and enumeration agree with the definition oracle on small trees") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const auto tree = trial % 2 ? random_well_structured_tree(static_cast<int>(rng.uniform_int(1, 7)), rng)
                                    : random_general_tree(static_cast<int>(rng.uniform_int(1, 7)), rng);
        const auto oracle = expected_by_definition(tree);
        const auto enumerated = expected_costs_enumerated(tree);
        for (int v : tree.steiner_nodes()) {
            CHECK(enumerated[v] == oracle[v]);
            CHECK(expected_cost_chain(tree, v) == oracle[v]);
        }
    }
}

TEST_CASE("a second terminal child never lowers any cost") {
    Rng rng(77);
    int tested = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto tree = random_general_tree(static_cast<int>(rng.uniform_int(1, 10)), rng);
        for (int v : tree.steiner_nodes()) {
            if (tree.t(v) != 1) continue;
            const auto grown = add_terminal_child(tree, v);
            CHECK(grown.t(v) == 2);
            for (int u : tree.steiner_nodes()) CHECK(expected_cost_chain(grown, u) >= expected_cost_chain(tree, u));
            ++tested;
        }
    }
    CHECK(tested > 100);
}

TEST_CASE("Monte Carlo agrees with the exact expectation on figure 2") {
    const auto tree = fig2();
    const auto mc = monte_carlo_costs(tree, 100000, 1);
    CHECK(mc.samples == 100000);
    for (int v : tree.steiner_nodes()) {
        const double exact = expected_cost_exact(tree, v);
        if (mc.standard_error[v] == 0.0)
            CHECK(mc.mean[v] == doctest::Approx(exact).epsilon(1e-12));
        else
            CHECK(std::abs(mc.mean[v] - exact) < 4 * mc.standard_error[v]);
    }
    const auto again = monte_carlo_costs(tree, 100000, 1);
    CHECK(again.mean == mc.mean);
}

TEST_CASE("figure 2 grouping") {
    const auto tree = fig2();
    const auto g = build_groups(tree);
    CHECK(check_grouping(tree, g));
    const auto id = [&](const char* name) { return tree.find(name); };
    CHECK(g.groups.at(id("l1")) == std::vector<int>{id("l1"), id("l5")});
    CHECK(g.groups.at(id("l3")) == std::vector<int>{id("l3"), id("l6")});
    CHECK(g.leftover == id("l7"));

    // The published grouping is another valid choice.
    Grouping published;
    published.groups = {{id("l2"), {id("l2")}}, {id("l3"), {id("l3"), id("l7")}}, {id("l1"), {id("l1"), id("l6")}}, {id("l4"), {id("l4")}}};
    published.leftover = id("l5");
    CHECK(check_grouping(tree, published));
    published.leftover = id("l6");
    CHECK(!check_grouping(tree, published));
}

TEST_CASE("grouping properties on random well-structured trees") {
    Rng rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        const auto tree = random_well_structured_tree(static_cast<int>(rng.uniform_int(1, 25)), rng);
        const auto g = build_groups(tree);
        CHECK(check_grouping(tree, g));
        std::vector<int> seen(tree.size(), 0);
        for (const auto& [owner, members] : g.groups) {
            CHECK(static_cast<int>(members.size()) == tree.s(owner));
            for (int m : members) ++seen[m];
        }
        ++seen[g.leftover];
        for (int v : tree.steiner_nodes()) CHECK(seen[v] == 1);
    }
}

TEST_CASE("a chain of Steiner nodes groups into singletons") {
    // 0 -> 1 -> 2 -> 3, each with two terminals.
    std::vector<NodeKind> kinds{S, S, S, S};
    std::vector<int> parents{-1, 0, 1, 2};
    for (int v = 0; v < 4; ++v)
        for (int i = 0; i < 2; ++i) kinds.push_back(T), parents.push_back(v);
    const auto tree = RootedSteinerTree::from_parents(kinds, parents);
    const auto g = build_groups(tree);
    CHECK(g.groups.size() == 3);
    for (const auto& [owner, members] : g.groups) CHECK(members == std::vector<int>{owner});
    CHECK(g.leftover == 3);
}

TEST_CASE("presents move mass without creating it") {
    Rng rng(6);
    const double pmax = present_max();
    for (int trial = 0; trial < 300; ++trial) {
        const auto tree = random_well_structured_tree(static_cast<int>(rng.uniform_int(1, 20)), rng);
        const double p = rng.uniform_real() * pmax;
        const auto costs = modified_costs(tree, p);
        double a = 0.0, b = 0.0;
        for (int v : tree.steiner_nodes()) a += costs.c_prime[v], b += costs.c_double_prime[v];
        CHECK(b == doctest::Approx(a).epsilon(1e-12));
        const auto zero = modified_costs(tree, 0.0);
        CHECK(zero.c_prime == zero.c_double_prime);
    }
}

TEST_CASE("a good bad-father node with three Steiner children gets H3 + p") {
    // r has two terminals and child x; x has three Steiner children with two terminals each.
    std::vector<NodeKind> kinds{S, S, S, S, S, T, T};
    std::vector<int> parents{-1, 0, 1, 1, 1, 0, 0};
    for (int v = 2; v <= 4; ++v) kinds.push_back(T), kinds.push_back(T), parents.push_back(v), parents.push_back(v);
    const auto tree = RootedSteinerTree::from_parents(kinds, parents);
    REQUIRE(tree.d(1) == 3);
    REQUIRE(tree.s(1) == 3);
    const auto costs = modified_costs(tree, 0.1);
    CHECK(costs.c_double_prime[1] == doctest::Approx(harmonic(3) + 0.1).epsilon(1e-15));
}

TEST_CASE("tree bounds stay below the constant") {
    const double rho = optimal_p_and_constant().rho, p = optimal_p_and_constant().p_star;
    const auto fig = tree_bound(fig2(), p);
    CHECK(fig.bound <= rho + 1e-12);
    CHECK(fig.max_group_average <= fig.bound + 1e-12);

    const auto single = RootedSteinerTree::from_parents({S, T, T}, {-1, 0, 0});
    const auto sb = tree_bound(single, p);
    CHECK(sb.bound == h_hat(2));
    CHECK(sb.argmax_group == 0);

    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto tree = random_well_structured_tree(static_cast<int>(rng.uniform_int(1, 30)), rng);
        const auto b = tree_bound(tree, p);
        CHECK(b.bound <= rho + 1e-12);
        CHECK(b.max_group_average <= b.bound + 1e-12);
        CHECK(b.average <= b.max_group_average + 1e-12);
    }
}

TEST_CASE("tree construction errors") {
    CHECK(code_of([] { RootedSteinerTree::from_parents({S, T, T}, {-1, 0, 1}); }) == ErrorCode::TerminalWithChildren);
    CHECK(code_of([] { RootedSteinerTree::from_parents({S, T, T, T}, {-1, 0, 0, 0}); }) == ErrorCode::ThreeTerminalChildren);
    CHECK(code_of([] { RootedSteinerTree::from_parents({S, S, T}, {1, 0, 0}); }) == ErrorCode::CycleInParentArray);
    CHECK(code_of([] { RootedSteinerTree::from_parents({S, S, T}, {-1, 0, 1}); }) == ErrorCode::NoQualifyingRoot);
}

TEST_CASE("analysis errors") {
    Rng rng(1);
    const auto childless = RootedSteinerTree::from_parents({S, S, T}, {-1, 0, 0});
    CHECK(code_of([&] { sample_marking(childless, rng); }) == ErrorCode::ChildlessSteinerNode);
    const auto big = random_well_structured_tree(kEnumerationSteinerCap + 1, rng);
    CHECK(code_of([&] { expected_costs_enumerated(big); }) == ErrorCode::TooLargeForEnumeration);
    const auto general = RootedSteinerTree::from_parents({S, S, T, T}, {-1, 0, 0, 1});
    CHECK(!general.is_well_structured());
    CHECK(code_of([&] { build_groups(general); }) == ErrorCode::NotWellStructured);
    CHECK(code_of([&] { modified_costs(fig2(), -0.01); }) == ErrorCode::POutOfRange);
    CHECK(code_of([&] { modified_costs(fig2(), 0.3); }) == ErrorCode::POutOfRange);
}
