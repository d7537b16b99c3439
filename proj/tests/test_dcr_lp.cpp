#include "doctest.h"

#include "cacaug/dcr_lp.hpp"
#include "cacaug/error.hpp"
#include "cacaug/exact.hpp"
#include "support.hpp"

#include <cmath>
#include <queue>
#include <set>

using namespace cacaug;

namespace {

int index_of(const std::vector<int>& terminals, int vertex) {
    return static_cast<int>(std::find(terminals.begin(), terminals.end(), vertex) - terminals.begin());
}

/// Membership recomputed from the column's terminal list rather than its mask.
bool crosses(const std::vector<int>& terminals, const DirectedComponent& c, std::uint32_t row) {
    if (row >> index_of(terminals, c.sink) & 1U) return false;
    for (int v : c.terminals)
        if (v != c.sink && (row >> index_of(terminals, v) & 1U)) return true;
    return false;
}

/// Optimum of the covering program via its packing dual
///   max sum_U y_U  s.t.  sum_{U : C crosses U} y_U <= c(C),  y >= 0,
/// solved by a textbook tableau simplex with Bland's rule from the slack basis.
double dual_optimum(const DcrProgram& program) {
    const auto rows = program.rows();
    const std::size_t m = program.columns.size(), n = rows.size();
    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            tab[i][j] = crosses(program.terminals, program.columns[i], rows[j]) ? 1.0 : 0.0;
        tab[i][n + i] = 1.0;
        tab[i][n + m] = program.columns[i].cost;
    }
    for (std::size_t j = 0; j < n; ++j) tab[m][j] = -1.0;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    const double eps = 1e-12;
    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (tab[m][j] < -eps) {
                enter = j;
                break;
            }
        if (enter == n + m) break;
        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= eps) continue;
            const double ratio = tab[i][n + m] / tab[i][enter];
            if (leave == m || ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        REQUIRE(leave < m);  // bounded: every y_U appears in some constraint
        const double pivot = tab[leave][enter];
        for (double& x : tab[leave]) x /= pivot;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || tab[i][enter] == 0.0) continue;
            const double f = tab[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }
    return tab[m][n + m];
}

/// Unit-weight distance through Steiner vertices only.
int steiner_distance(const SteinerGraph& g, int from, int to) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int u : g.neighbors(v)) {
            if (dist[u] >= 0) continue;
            dist[u] = dist[v] + 1;
            if (u == to) return dist[u];
            if (!g.is_terminal(u)) q.push(u);
        }
    }
    return -1;
}

double max_row_violation(const DcrProgram& program, const FractionalSolution& sol) {
    double worst = 0.0;
    for (std::uint32_t row : program.rows()) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < program.columns.size(); ++c)
            if (crosses(program.terminals, program.columns[c], row)) lhs += sol.x[c];
        worst = std::max(worst, 1.0 - lhs);
    }
    return worst;
}

CacapInstance two_cycle() { return make_instance(validate_cactus(2, {{0, 1}, {0, 1}}), {{0, 1}}); }

}  // namespace

TEST_CASE("figure 1 columns for k = 3") {
    const auto si = build_steiner_instance(support::fig1());
    const auto set = enumerate_components(si, 3);
    CHECK(set.components.size() <= 450);
    std::set<std::pair<std::uint32_t, int>> keys;
    for (const auto& c : set.components) {
        CHECK(keys.emplace(c.mask, c.sink).second);
        CHECK(std::popcount(c.mask) == static_cast<int>(c.terminals.size()));
        CHECK(std::find(c.terminals.begin(), c.terminals.end(), c.sink) != c.terminals.end());
        const auto expected = support::full_component_by_subsets(si, c.terminals);
        REQUIRE(expected.has_value());
        CHECK(c.cost == *expected);
        CHECK(set.tree_of(c).cost() == c.cost);
    }
    // {v9, v10} directed to v10 costs 2 via l7.
    const int v9 = 6, v10 = 7;
    REQUIRE(si.terminal_nodes[v9] == 8);
    REQUIRE(si.terminal_nodes[v10] == 9);
    bool found = false;
    for (const auto& c : set.components)
        if (c.terminals == std::vector<int>{v9, v10} && c.sink == v10) {
            found = true;
            CHECK(c.cost == 2);
        }
    CHECK(found);
}

TEST_CASE("k = 2 columns are shortest Steiner paths, one per direction") {
    for (const auto& inst : support::small_corpus(20, 41, 14, 14)) {
        const auto si = build_steiner_instance(inst);
        if (si.terminal_count() > kComponentTerminalCap) continue;
        const auto set = enumerate_components(si, 2);
        std::size_t expected_columns = 0;
        for (int a = 0; a < si.terminal_count(); ++a)
            for (int b = a + 1; b < si.terminal_count(); ++b)
                if (steiner_distance(si.graph, a, b) > 0) expected_columns += 2;
        CHECK(set.components.size() == expected_columns);
        for (const auto& c : set.components) CHECK(c.cost == steiner_distance(si.graph, c.terminals[0], c.terminals[1]));
    }
}

TEST_CASE("row counts") {
    const auto tiny = build_dcr_lp(enumerate_components(build_steiner_instance(two_cycle()), 2));
    CHECK(tiny.row_count() == 1);
    CHECK(tiny.rows() == std::vector<std::uint32_t>{2});

    const auto inst = make_instance(validate_cactus(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), {{0, 2}, {1, 3}});
    const auto four = build_dcr_lp(enumerate_components(build_steiner_instance(inst), 3));
    CHECK(four.terminal_count() == 4);
    CHECK(four.row_count() == 7);
    CHECK(four.rows().size() == 7);

    const auto fig = build_dcr_lp(enumerate_components(build_steiner_instance(support::fig1()), 3));
    CHECK(fig.row_count() == 511);
    for (std::uint32_t row : fig.rows()) CHECK((row & 1U) == 0);
    for (const auto& c : fig.columns)
        for (std::uint32_t row : {2U, 6U, 1022U, 512U}) CHECK(fig.in_cut(c, row) == crosses(fig.terminals, c, row));
}

TEST_CASE("program construction errors") {
    SteinerGraph split({VertexKind::Terminal, VertexKind::Terminal, VertexKind::Steiner});
    split.add_edge(0, 2);
    const auto empty = enumerate_components(std::make_shared<const SteinerGraph>(split), {0, 1}, 2);
    CHECK(empty.components.empty());
    try {
        build_dcr_lp(empty);
        FAIL("expected InfeasibleRow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleRow);
        CHECK(e.detail() == 2);
    }
    ComponentSet wide;
    for (int i = 0; i < 17; ++i) wide.terminals.push_back(i);
    wide.k = 2;
    try {
        build_dcr_lp(wide);
        FAIL("expected TooManyTerminals");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooManyTerminals);
    }
    const auto si = build_steiner_instance(support::fig1());
    try {
        enumerate_components(si, 6, 100);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("a single-row program puts x = 1 on its crossing column") {
    const auto program = build_dcr_lp(enumerate_components(build_steiner_instance(two_cycle()), 2));
    const auto sol = solve_lp(program);
    CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-12));
    double mass = 0.0;
    for (std::size_t c = 0; c < program.columns.size(); ++c) {
        if (program.columns[c].sink == program.root())
            CHECK(sol.x[c] == doctest::Approx(1.0));
        mass += sol.x[c];
    }
    CHECK(mass == doctest::Approx(1.0));
}

TEST_CASE("figure 1 LP: relaxation, monotonicity, feasibility, optimality") {
    const auto si = build_steiner_instance(support::fig1());
    const int exact = exact_steiner(si).cost();
    double previous = 1e300;
    for (int k : {2, 3, 4, 5, 10}) {
        const auto program = build_dcr_lp(enumerate_components(si, k));
        const auto sol = solve_lp(program);
        CHECK(sol.objective <= previous + 1e-9);
        previous = sol.objective;
        CHECK(max_row_violation(program, sol) <= 1e-9);
        double obj = 0.0;
        for (std::size_t c = 0; c < program.columns.size(); ++c) {
            CHECK(sol.x[c] >= -1e-12);
            obj += sol.x[c] * program.columns[c].cost;
        }
        CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-9));
        if (k == 10) CHECK(sol.objective <= exact + 1e-6);
        if (k <= 3) CHECK(sol.objective == doctest::Approx(dual_optimum(program)).epsilon(1e-9));
    }
}

TEST_CASE("LP optimum matches the dual oracle on small generated instances") {
    int checked = 0;
    for (const auto& inst : support::small_corpus(40, 555, 9, 8)) {
        const auto si = build_steiner_instance(inst);
        if (si.terminal_count() < 2 || si.terminal_count() > 7) continue;
        for (int k : {2, 3}) {
            const auto program = build_dcr_lp(enumerate_components(si, k));
            const auto sol = solve_lp(program);
            CHECK(max_row_violation(program, sol) <= 1e-9);
            CHECK(sol.objective == doctest::Approx(dual_optimum(program)).epsilon(1e-9));
            ++checked;
        }
        // With k = |T| the optimal tree, split into full components, is a
        // feasible integral point.
        const auto full = solve_lp(build_dcr_lp(enumerate_components(si, si.terminal_count())));
        CHECK(full.objective <= exact_steiner(si).cost() + 1e-9);
    }
    CHECK(checked >= 40);
}
