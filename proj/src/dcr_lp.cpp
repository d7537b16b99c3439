#include "cacaug/dcr_lp.hpp"

#include "cacaug/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace cacaug {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kRowTol = 1e-9;
constexpr double kZeroClamp = 1e-12;
constexpr std::size_t kRowsPerRound = 32;
constexpr std::size_t kDegenerateBeforeBland = 50;

std::size_t column_count_bound(int t, int k) {
    std::size_t total = 0, choose = 1;  // choose = C(t, j)
    for (int j = 1; j <= k; ++j) {
        choose = choose * static_cast<std::size_t>(t - j + 1) / static_cast<std::size_t>(j);
        if (j >= 2) total += choose * static_cast<std::size_t>(j);
    }
    return total;
}

/// Condensed simplex tableau for  max 1'y  s.t.  A'y <= c, y >= 0, c > 0.
/// Rows hold basic variables, columns nonbasic ones, stored column-major:
/// basic_i = b_i - sum_j col_j[i] * nonbasic_j,  z = z0 + sum_j d_j * nonbasic_j.
/// Variable labels: slack i is i; the k-th added y is m + k.
class DualTableau {
public:
    explicit DualTableau(const std::vector<double>& costs)
        : m_(costs.size()), b_(costs), basic_(m_), slack_row_(m_), slack_col_(m_, -1) {
        std::iota(basic_.begin(), basic_.end(), 0);
        std::iota(slack_row_.begin(), slack_row_.end(), 0);
    }

    /// Adds a y variable whose constraint coefficients are 1 on `rows`.
    void add_variable(const std::vector<int>& rows) {
        std::vector<double> v(m_, 0.0);
        double d = 1.0;
        for (int i : rows) {
            if (slack_row_[i] >= 0) {
                v[slack_row_[i]] += 1.0;
            } else {
                const auto& c = cols_[slack_col_[i]];
                for (std::size_t r = 0; r < m_; ++r) v[r] += c[r];
                d += d_[slack_col_[i]];
            }
        }
        cols_.push_back(std::move(v));
        d_.push_back(d);
        nonbasic_.push_back(static_cast<int>(m_ + added_++));
    }

    /// False when the dual is unbounded, i.e. some primal row is uncoverable.
    bool optimize(std::size_t& pivots) {
        std::size_t stalled = 0;
        while (true) {
            const bool bland = stalled >= kDegenerateBeforeBland;
            int s = -1;
            for (std::size_t j = 0; j < d_.size(); ++j) {
                if (d_[j] <= kPivotTol) continue;
                if (s < 0 || (bland ? nonbasic_[j] < nonbasic_[s] : d_[j] > d_[s])) s = static_cast<int>(j);
            }
            if (s < 0) return true;
            const auto& cs = cols_[s];
            int r = -1;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (cs[i] <= kPivotTol) continue;
                const double ratio = b_[i] / cs[i];
                if (r < 0 || ratio < best - 1e-12 || (ratio <= best + 1e-12 && basic_[i] < basic_[r])) {
                    r = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (r < 0) return false;
            const double before = z_;
            pivot(r, s);
            ++pivots;
            stalled = z_ > before + 1e-12 ? 0 : stalled + 1;
        }
    }

    double objective() const { return z_; }

    /// Primal values: x_i = -d of slack i when nonbasic, else 0.
    std::vector<double> primal() const {
        std::vector<double> x(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (slack_col_[i] < 0) continue;
            const double v = -d_[slack_col_[i]];
            x[i] = v < kZeroClamp ? 0.0 : v;
        }
        return x;
    }

private:
    void pivot(int r, int s) {
        auto& cs = cols_[s];
        const double p = cs[r];
        b_[r] /= p;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (static_cast<int>(j) == s) continue;
            auto& cj = cols_[j];
            if (cj[r] == 0.0) continue;
            cj[r] /= p;
            const double f = cj[r];
            for (std::size_t i = 0; i < m_; ++i)
                if (static_cast<int>(i) != r && cs[i] != 0.0) cj[i] -= cs[i] * f;
            d_[j] -= d_[s] * f;
        }
        for (std::size_t i = 0; i < m_; ++i)
            if (static_cast<int>(i) != r && cs[i] != 0.0) b_[i] -= cs[i] * b_[r];
        z_ += d_[s] * b_[r];
        for (std::size_t i = 0; i < m_; ++i) cs[i] = static_cast<int>(i) == r ? 1.0 / p : -cs[i] / p;
        d_[s] = -d_[s] / p;

        const int leaving = basic_[r], entering = nonbasic_[s];
        basic_[r] = entering;
        nonbasic_[s] = leaving;
        if (leaving < static_cast<int>(m_)) {
            slack_row_[leaving] = -1;
            slack_col_[leaving] = s;
        }
        if (entering < static_cast<int>(m_)) {
            slack_col_[entering] = -1;
            slack_row_[entering] = r;
        }
    }

    std::size_t m_;
    std::size_t added_ = 0;
    std::vector<double> b_;
    std::vector<int> basic_;
    std::vector<int> nonbasic_;
    std::vector<std::vector<double>> cols_;
    std::vector<double> d_;
    double z_ = 0.0;
    std::vector<int> slack_row_;
    std::vector<int> slack_col_;
};

}  // namespace

ComponentSet enumerate_components(std::shared_ptr<const SteinerGraph> graph, const std::vector<int>& terminals, int k,
                                  std::size_t column_budget) {
    const int t = static_cast<int>(terminals.size());
    if (t > kComponentTerminalCap)
        throw Error(ErrorCode::TooLarge, "component enumeration is capped at " + std::to_string(kComponentTerminalCap) + " terminals", t);
    if (k < 2) throw Error(ErrorCode::InvalidInput, "k must be at least 2", k);
    const int kk = std::min(k, t);
    if (column_count_bound(t, kk) > column_budget)
        throw Error(ErrorCode::TooLarge, "DCR_k would exceed the column budget", static_cast<long>(column_count_bound(t, kk)));

    ComponentSet set;
    set.terminals = terminals;
    set.k = k;
    set.graph = std::move(graph);
    if (t < 2) return set;
    set.table = std::make_shared<const FullComponentTable>(*set.graph, terminals, kk);
    const std::uint32_t full = (1U << t) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int bits = std::popcount(mask);
        if (bits < 2 || bits > kk) continue;
        const auto cost = set.table->cost(mask);
        if (!cost) continue;
        std::vector<int> members;
        for (std::uint32_t m = mask; m; m &= m - 1) members.push_back(terminals[std::countr_zero(m)]);
        for (int sink : members) set.components.push_back({mask, members, sink, *cost});
    }
    return set;
}

ComponentSet enumerate_components(const SteinerInstance& si, int k, std::size_t column_budget) {
    return enumerate_components(std::make_shared<const SteinerGraph>(si.graph), si.all_terminals(), k, column_budget);
}

std::vector<std::uint32_t> DcrProgram::rows() const {
    const std::uint32_t free = ((1U << terminals.size()) - 1) & ~(1U << root_index);
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = free; u != 0; u = (u - 1) & free) out.push_back(u);
    std::reverse(out.begin(), out.end());
    return out;
}

bool DcrProgram::in_cut(const DirectedComponent& c, std::uint32_t row) const {
    const auto pos = std::find(terminals.begin(), terminals.end(), c.sink) - terminals.begin();
    const std::uint32_t sink_bit = 1U << pos;
    return (row & sink_bit) == 0 && (c.mask & row) != 0;
}

DcrProgram build_dcr_lp(const ComponentSet& components, int root_index) {
    const int t = static_cast<int>(components.terminals.size());
    if (t > kComponentTerminalCap)
        throw Error(ErrorCode::TooManyTerminals, "explicit DCR rows are capped at " + std::to_string(kComponentTerminalCap) + " terminals", t);
    if (t < 2) throw Error(ErrorCode::InvalidInput, "DCR needs at least 2 terminals", t);
    if (root_index < 0 || root_index >= t) throw Error(ErrorCode::InvalidInput, "root index out of range", root_index);

    // A row U has no column iff U is a union of classes of the hypergraph
    // formed by the column terminal sets (every set all sinks are present).
    std::vector<int> parent(t);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& c : components.components) {
        const int first = std::countr_zero(c.mask);
        for (std::uint32_t m = c.mask; m; m &= m - 1) parent[find(std::countr_zero(m))] = find(first);
    }
    std::uint32_t orphan = 0;
    for (int i = 0; i < t && orphan == 0; ++i) {
        if (find(i) == find(root_index)) continue;
        for (int j = 0; j < t; ++j)
            if (find(j) == find(i)) orphan |= 1U << j;
    }
    if (orphan != 0) throw Error(ErrorCode::InfeasibleRow, "no column crosses some terminal cut", static_cast<long>(orphan));

    DcrProgram program;
    program.terminals = components.terminals;
    program.root_index = root_index;
    program.columns = components.components;
    return program;
}

FractionalSolution solve_lp(const DcrProgram& program) {
    const std::size_t m = program.columns.size();
    const int t = program.terminal_count();
    std::vector<double> costs(m);
    std::vector<std::uint32_t> sink_bit(m);
    for (std::size_t j = 0; j < m; ++j) {
        costs[j] = program.columns[j].cost;
        const auto pos = std::find(program.terminals.begin(), program.terminals.end(), program.columns[j].sink) - program.terminals.begin();
        sink_bit[j] = 1U << pos;
    }
    auto covers = [&](std::size_t j, std::uint32_t row) { return (row & sink_bit[j]) == 0 && (program.columns[j].mask & row) != 0; };

    DualTableau tableau(costs);
    std::vector<char> active(std::size_t{1} << t, 0);
    auto add_row = [&](std::uint32_t row) {
        std::vector<int> members;
        for (std::size_t j = 0; j < m; ++j)
            if (covers(j, row)) members.push_back(static_cast<int>(j));
        if (members.empty()) throw Error(ErrorCode::Infeasible, "a DCR row has no column", static_cast<long>(row));
        tableau.add_variable(members);
        active[row] = 1;
    };

    FractionalSolution sol;
    for (int i = 0; i < t; ++i)
        if (i != program.root_index) add_row(1U << i);
    sol.rows_used = static_cast<std::size_t>(t - 1);

    const auto rows = program.rows();
    while (true) {
        if (!tableau.optimize(sol.pivots)) throw Error(ErrorCode::Infeasible, "DCR program is infeasible");
        sol.x = tableau.primal();
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < m; ++j)
            if (sol.x[j] > 0.0) support.push_back(j);
        std::vector<std::pair<double, std::uint32_t>> violated;
        sol.max_violation = 0.0;
        for (std::uint32_t row : rows) {
            double activity = 0.0;
            for (std::size_t j : support)
                if (covers(j, row)) activity += sol.x[j];
            const double gap = 1.0 - activity;
            sol.max_violation = std::max(sol.max_violation, gap);
            if (gap > kRowTol && !active[row]) violated.emplace_back(activity, row);
        }
        if (violated.empty()) break;
        std::sort(violated.begin(), violated.end());
        if (violated.size() > kRowsPerRound) violated.resize(kRowsPerRound);
        for (const auto& [activity, row] : violated) add_row(row);
        sol.rows_used += violated.size();
    }
    if (sol.max_violation > kRowTol) throw Error(ErrorCode::Infeasible, "simplex stalled on a violated DCR row");
    sol.max_violation = std::max(sol.max_violation, 0.0);
    sol.objective = 0.0;
    for (std::size_t j = 0; j < m; ++j) sol.objective += costs[j] * sol.x[j];
    return sol;
}

}  // namespace cacaug
