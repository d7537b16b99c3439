#pragma once

#include "cacaug/cactus.hpp"
#include "cacaug/reduction.hpp"
#include "cacaug/steiner_graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace cacaug {

inline constexpr int kBruteForceLinkCap = 25;
inline constexpr int kDreyfusWagnerTerminalCap = 12;
inline constexpr int kExhaustiveSteinerCap = 20;
inline constexpr int kComponentTerminalCap = 16;

/// Smallest feasible link subset; among equal sizes the lexicographically
/// first sorted id list. Throws Infeasible or TooLarge (> 25 links).
std::vector<LinkId> brute_force_cacap(const CacapInstance& instance);

/// Minimum-edge tree spanning `terminals` (any interior vertices allowed).
/// Throws TooLarge above 12 terminals, Disconnected if unreachable.
SteinerTreeSolution dreyfus_wagner(const SteinerGraph& graph, const std::vector<int>& terminals);

/// Global optimum over all terminals of the instance: Dreyfus-Wagner when
/// t <= 12, otherwise exhaustive over Steiner subsets when |S| <= 20.
SteinerTreeSolution exact_steiner(const SteinerInstance& si);

class SubsetSteinerDp;

/// Cheapest full components of a graph: trees whose leaves are exactly a
/// chosen terminal subset and whose interior vertices are all Steiner.
/// One dynamic program over subsets of `terminals` up to `max_terminals`
/// answers every subset at once.
class FullComponentTable {
public:
    FullComponentTable(const SteinerGraph& graph, std::vector<int> terminals, int max_terminals);

    const std::vector<int>& terminals() const;
    int max_terminals() const { return max_terminals_; }

    /// Cost of the cheapest full component on the terminals selected by
    /// `mask` (bit i = terminals()[i]); nullopt when none exists.
    std::optional<int> cost(std::uint32_t mask) const;
    /// The component itself; precondition: cost(mask) has a value.
    SteinerTreeSolution tree(std::uint32_t mask) const;

private:
    int max_terminals_;
    std::shared_ptr<const SubsetSteinerDp> dp_;
};

/// Cheapest full component on exactly `terminals` (leaves = terminals,
/// interior Steiner), or nullopt.
std::optional<SteinerTreeSolution> min_full_component(const SteinerGraph& graph, const std::vector<int>& terminals);

}  // namespace cacaug
