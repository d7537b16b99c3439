#pragma once

#include "cacaug/exact.hpp"
#include "cacaug/reduction.hpp"
#include "cacaug/steiner_graph.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace cacaug {

inline constexpr int kDefaultComponentSize = 3;
inline constexpr int kCliComponentSizeCap = 6;
inline constexpr std::size_t kDefaultColumnBudget = 200000;

/// An LP column: a cheapest full component on `terminals`, directed to `sink`.
struct DirectedComponent {
    std::uint32_t mask;          // bit i = terminal i of the owning ComponentSet
    std::vector<int> terminals;  // vertex ids, ascending
    int sink;                    // vertex id, one of `terminals`
    int cost;
};

/// All columns of DCR_k for one graph, plus the table that rebuilds trees.
struct ComponentSet {
    std::vector<int> terminals;  // vertex ids; index i <-> mask bit i
    int k = 0;
    std::vector<DirectedComponent> components;
    std::shared_ptr<const SteinerGraph> graph;
    std::shared_ptr<const FullComponentTable> table;

    SteinerTreeSolution tree_of(const DirectedComponent& c) const { return table->tree(c.mask); }
};

/// One column per terminal subset of size 2..k that admits a full component,
/// per sink choice, in (mask, sink) order. Throws TooLarge beyond 16
/// terminals or when the column count would exceed `column_budget`.
ComponentSet enumerate_components(std::shared_ptr<const SteinerGraph> graph, const std::vector<int>& terminals, int k,
                                  std::size_t column_budget = kDefaultColumnBudget);
ComponentSet enumerate_components(const SteinerInstance& si, int k, std::size_t column_budget = kDefaultColumnBudget);

/// min sum c(C) x_C  s.t.  sum_{C in delta+(U)} x_C >= 1 for all nonempty
/// U subset of T - {r}, x >= 0. Rows are masks over terminal indices with
/// the root bit clear.
struct DcrProgram {
    std::vector<int> terminals;
    int root_index = 0;
    std::vector<DirectedComponent> columns;

    int terminal_count() const { return static_cast<int>(terminals.size()); }
    int root() const { return terminals[root_index]; }
    std::size_t row_count() const { return (std::size_t{1} << (terminals.size() - 1)) - 1; }
    /// Every row as a terminal mask, ascending.
    std::vector<std::uint32_t> rows() const;
    /// C in delta+(U): some source in U and the sink outside U.
    bool in_cut(const DirectedComponent& c, std::uint32_t row) const;
};

/// Throws TooManyTerminals above 16 terminals and InfeasibleRow (detail =
/// row mask) when some row has no column.
DcrProgram build_dcr_lp(const ComponentSet& components, int root_index = 0);

struct FractionalSolution {
    std::vector<double> x;  // one per column
    double objective = 0.0;
    std::size_t rows_used = 0;  // rows that entered the working LP
    std::size_t pivots = 0;
    double max_violation = 0.0;  // over every row of the program
};

/// Optimal x via a dense simplex on the dual, adding primal rows on demand.
/// Throws Infeasible if some row cannot be covered.
FractionalSolution solve_lp(const DcrProgram& program);

}  // namespace cacaug
