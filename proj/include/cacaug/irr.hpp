#pragma once

#include "cacaug/cactus.hpp"
#include "cacaug/dcr_lp.hpp"
#include "cacaug/reduction.hpp"
#include "cacaug/rng.hpp"
#include "cacaug/steiner_graph.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cacaug {

/// Index of a column drawn with probability x_C / sum x. Throws ZeroMass.
std::size_t sample_component(const FractionalSolution& solution, Rng& rng);

/// Residual instance after some contractions. Original vertices are
/// grouped into classes (union-find, canonical = smallest member); each
/// class holding a terminal is one residual terminal.
struct ContractionState {
    std::shared_ptr<const SteinerGraph> original;
    std::vector<int> class_of;                // original vertex -> canonical member
    std::shared_ptr<const SteinerGraph> residual;
    std::vector<int> residual_vertex;         // original vertex -> residual id
    std::vector<int> residual_members;        // residual id -> canonical member
    std::map<VertexEdge, VertexEdge> origin;  // residual edge -> lowest original edge
    std::vector<std::vector<VertexEdge>> sampled;  // per contraction, original ids
    int iterations = 0;

    std::vector<int> residual_terminals() const { return residual->terminals(); }
    int live_terminal_count() const { return static_cast<int>(residual_terminals().size()); }
};

ContractionState make_contraction_state(std::shared_ptr<const SteinerGraph> original);

/// Merges every vertex of `component` (a tree in the residual graph) into
/// one class and rebuilds the residual graph.
ContractionState contract_component(ContractionState state, const SteinerTreeSolution& component);

/// Solved DCR_k programs keyed by the contraction partition, shared across
/// repetitions of one instance. Thread-safe.
class IrrCache {
public:
    struct Entry {
        ComponentSet components;
        FractionalSolution solution;
    };
    std::shared_ptr<const Entry> get_or_solve(const ContractionState& state, int k, std::size_t column_budget);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const Entry>> entries_;
};

struct IrrResult {
    SteinerTreeSolution tree;
    int iterations = 0;
    std::vector<double> lp_values;  // DCR_k optimum of each iteration
};

/// Solve DCR_k, sample, contract, until one terminal class remains. The
/// sampled components' original edges are reduced to a spanning tree and
/// stripped of Steiner leaves.
IrrResult iterative_randomized_rounding(const SteinerInstance& si, int k, std::uint64_t seed, IrrCache* cache = nullptr,
                                        std::size_t column_budget = kDefaultColumnBudget);

/// Picks the link covering the most uncovered cuts (ties: lowest id) until
/// all are covered, then drops redundant links in reverse pick order.
/// Throws Infeasible.
std::vector<LinkId> greedy_cover(const CacapInstance& instance);

/// Removes links, highest id first, whose removal keeps every cut covered.
std::vector<LinkId> drop_redundant_links(const CacapInstance& instance, std::vector<LinkId> links);

struct SolveOptions {
    int k = kDefaultComponentSize;
    std::uint64_t seed = 1;
    int repetitions = 1;
    bool prune = false;
    std::size_t column_budget = kDefaultColumnBudget;
};

struct SolveReport {
    std::vector<LinkId> links;  // ascending
    std::string method;         // "irr" or "greedy"
    int terminals = 0;
    std::size_t cut_count = 0;
    std::vector<int> run_costs;  // Steiner tree cost of each repetition
    int best_run = -1;
    std::optional<int> optimum;  // brute-force |OPT| when within reach
    std::vector<std::string> warnings;
};

inline constexpr int kReportOptimumLinkCap = 20;

/// Reduce, run IRR `repetitions` times (run r uses stream_seed(seed, r)),
/// keep the cheapest tree, lift it, optionally prune. Falls back to
/// greedy_cover with a warning when the LP caps are exceeded.
SolveReport solve_cacap(const CacapInstance& instance, const SolveOptions& options);

}  // namespace cacaug
