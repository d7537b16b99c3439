#include "doctest.h"

#include "cacaug/error.hpp"
#include "cacaug/exact.hpp"
#include "support.hpp"

using namespace cacaug;

namespace {

/// Minimum-edge tree spanning `required` by scanning every set of extra
/// vertices; a connected vertex set X admits a spanning tree of |X|-1 edges.
int steiner_by_vertex_subsets(const SteinerGraph& g, const std::vector<int>& required) {
    std::vector<int> others;
    std::vector<char> base(g.vertex_count(), 0);
    for (int v : required) base[v] = 1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!base[v]) others.push_back(v);
    int best = INT_MAX;
    for (std::uint32_t mask = 0; mask < (1U << others.size()); ++mask) {
        auto keep = base;
        int size = static_cast<int>(required.size());
        for (std::size_t i = 0; i < others.size(); ++i)
            if (mask >> i & 1U) keep[others[i]] = 1, ++size;
        if (size - 1 < best && support::bfs_connected(g, keep)) best = size - 1;
    }
    return best;
}

int terminal_index(const SteinerInstance& si, NodeId node) {
    for (int i = 0; i < si.terminal_count(); ++i)
        if (si.terminal_nodes[i] == node) return i;
    return -1;
}

}  // namespace

TEST_CASE("brute force on the two-cycle instance") {
    const auto inst = make_instance(validate_cactus(2, {{0, 1}, {0, 1}}), {{0, 1}});
    CHECK(brute_force_cacap(inst) == std::vector<LinkId>{0});
}

TEST_CASE("brute force on figure 1 finds a six-link optimum") {
    const auto inst = support::fig1();
    const auto opt = brute_force_cacap(inst);
    CHECK(opt == std::vector<LinkId>{0, 1, 2, 3, 4, 5});
    CHECK(support::three_edge_connected(inst, opt));
    // No five links suffice, checked by the min-cut oracle.
    for (std::uint32_t mask = 0; mask < 256; ++mask)
        if (std::popcount(mask) == 5) CHECK(!support::three_edge_connected(inst, support::subset_of(mask, 8)));
}

TEST_CASE("brute force matches the min-cut oracle and its tie-break") {
    for (const auto& inst : support::small_corpus(60, 99)) {
        const int L = inst.link_count();
        std::vector<int> best;
        bool found = false;
        for (int size = 0; size <= L && !found; ++size)
            for (std::uint32_t mask = 0; mask < (1U << L); ++mask) {
                if (std::popcount(mask) != size) continue;
                auto subset = support::subset_of(mask, L);
                if (!support::three_edge_connected(inst, subset)) continue;
                if (!found || subset < best) best = subset;
                found = true;
            }
        REQUIRE(found);
        CHECK(brute_force_cacap(inst) == best);
    }
}

TEST_CASE("brute force errors") {
    const auto g = validate_cactus(3, {{0, 1}, {1, 2}, {2, 0}});
    try {
        brute_force_cacap(make_instance(g, {{0, 1}}));
        FAIL("expected Infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Infeasible);
    }
    const auto big = gen_instance(6, 6, 30, 5);
    REQUIRE(big.link_count() > kBruteForceLinkCap);
    try {
        brute_force_cacap(big);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("Dreyfus-Wagner on figure 1") {
    const auto si = build_steiner_instance(support::fig1());
    const int v9 = terminal_index(si, 8), v10 = terminal_index(si, 9);
    const auto pair = dreyfus_wagner(si.graph, {v9, v10});
    CHECK(pair.cost() == 2);
    CHECK(std::find(pair.vertices.begin(), pair.vertices.end(), si.steiner_vertex(6)) != pair.vertices.end());
    CHECK(dreyfus_wagner(si.graph, si.all_terminals()).cost() == 15);
    CHECK(exact_steiner(si).cost() == 15);
    CHECK(steiner_by_vertex_subsets(si.graph, {v9, v10}) == 2);
}

TEST_CASE("Dreyfus-Wagner agrees with the vertex-subset oracle") {
    const auto si = build_steiner_instance(support::fig1());
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<int> terminals;
        for (int t = 0; t < si.terminal_count(); ++t)
            if (rng.uniform(3) == 0) terminals.push_back(t);
        if (terminals.size() < 3) continue;  // keeps the scan at most 2^15
        const auto tree = dreyfus_wagner(si.graph, terminals);
        CHECK(is_tree(tree));
        for (int t : terminals) CHECK(std::binary_search(tree.vertices.begin(), tree.vertices.end(), t));
        CHECK(tree.cost() == steiner_by_vertex_subsets(si.graph, terminals));
    }
}

TEST_CASE("Dreyfus-Wagner is monotone in the terminal set") {
    for (const auto& inst : support::small_corpus(30, 8, 14, 12)) {
        const auto si = build_steiner_instance(inst);
        std::vector<int> terminals;
        int previous = 0;
        for (int t = 0; t < std::min(si.terminal_count(), kDreyfusWagnerTerminalCap); ++t) {
            terminals.push_back(t);
            const int cost = dreyfus_wagner(si.graph, terminals).cost();
            CHECK(cost >= previous);
            previous = cost;
        }
    }
}

TEST_CASE("Dreyfus-Wagner errors") {
    SteinerGraph g(std::vector<VertexKind>(14, VertexKind::Terminal));
    for (int v = 1; v < 14; ++v) g.add_edge(0, v);
    std::vector<int> many(13);
    for (int i = 0; i < 13; ++i) many[i] = i + 1;
    try {
        dreyfus_wagner(g, many);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
    SteinerGraph split({VertexKind::Terminal, VertexKind::Terminal, VertexKind::Steiner});
    split.add_edge(0, 2);
    try {
        dreyfus_wagner(split, {0, 1});
        FAIL("expected Disconnected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Disconnected);
    }
    CHECK(!min_full_component(split, {0, 1}).has_value());
}

TEST_CASE("full components match the Steiner-subset oracle on figure 1") {
    const auto si = build_steiner_instance(support::fig1());
    const FullComponentTable table(si.graph, si.all_terminals(), 4);
    const int t = si.terminal_count();
    for (std::uint32_t mask = 1; mask < (1U << t); ++mask) {
        const int size = std::popcount(mask);
        if (size < 2 || size > 4) continue;
        const auto terminals = support::subset_of(mask, t);
        const auto expected = support::full_component_by_subsets(si, terminals);
        const auto got = table.cost(mask);
        REQUIRE(got.has_value() == expected.has_value());
        if (!got) continue;
        CHECK(*got == *expected);
        const auto tree = table.tree(mask);
        CHECK(tree.cost() == *got);
        CHECK(is_tree(tree));
        // Leaves are exactly the chosen terminals; no other terminal appears.
        std::vector<int> deg(si.graph.vertex_count(), 0);
        for (auto [a, b] : tree.edges) ++deg[a], ++deg[b];
        for (int v : tree.vertices) {
            const bool chosen = si.is_terminal(v) && (mask >> v & 1U);
            CHECK((deg[v] == 1) == chosen);
            if (si.is_terminal(v)) CHECK(chosen);
        }
    }
}
