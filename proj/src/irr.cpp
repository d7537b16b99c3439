#include "cacaug/irr.hpp"

#include "cacaug/error.hpp"
#include "cacaug/exact.hpp"
#include "cacaug/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace cacaug {

std::size_t sample_component(const FractionalSolution& solution, Rng& rng) {
    double total = 0.0;
    for (double v : solution.x) total += v;
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroMass, "fractional solution has no positive mass");
    const double u = rng.uniform_real() * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < solution.x.size(); ++j) {
        if (solution.x[j] <= 0.0) continue;
        acc += solution.x[j];
        last = j;
        if (u < acc) return j;
    }
    return last;
}

namespace {

void rebuild_residual(ContractionState& state) {
    const auto& g = *state.original;
    const int n = g.vertex_count();
    state.residual_members = state.class_of;
    std::sort(state.residual_members.begin(), state.residual_members.end());
    state.residual_members.erase(std::unique(state.residual_members.begin(), state.residual_members.end()),
                                 state.residual_members.end());
    std::vector<int> index_of(n, -1);
    for (std::size_t i = 0; i < state.residual_members.size(); ++i) index_of[state.residual_members[i]] = static_cast<int>(i);
    state.residual_vertex.assign(n, -1);
    std::vector<VertexKind> kinds(state.residual_members.size(), VertexKind::Steiner);
    for (int v = 0; v < n; ++v) {
        const int r = index_of[state.class_of[v]];
        state.residual_vertex[v] = r;
        if (g.is_terminal(v)) kinds[r] = VertexKind::Terminal;
    }
    auto residual = std::make_shared<SteinerGraph>(std::move(kinds));
    state.origin.clear();
    for (const auto& [a, b] : g.edges()) {
        const int ra = state.residual_vertex[a], rb = state.residual_vertex[b];
        if (ra == rb) continue;
        const VertexEdge key{std::min(ra, rb), std::max(ra, rb)};
        if (state.origin.emplace(key, VertexEdge{a, b}).second) residual->add_edge(ra, rb);
    }
    state.residual = std::move(residual);
}

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

std::shared_ptr<const IrrCache::Entry> solve_state(const ContractionState& state, int k, std::size_t column_budget) {
    auto components = enumerate_components(state.residual, state.residual_terminals(), k, column_budget);
    const auto program = build_dcr_lp(components, 0);
    auto solution = solve_lp(program);
    return std::make_shared<const IrrCache::Entry>(IrrCache::Entry{std::move(components), std::move(solution)});
}

}  // namespace

ContractionState make_contraction_state(std::shared_ptr<const SteinerGraph> original) {
    ContractionState state;
    state.class_of.resize(original->vertex_count());
    std::iota(state.class_of.begin(), state.class_of.end(), 0);
    state.original = std::move(original);
    rebuild_residual(state);
    return state;
}

ContractionState contract_component(ContractionState state, const SteinerTreeSolution& component) {
    std::vector<VertexEdge> recorded;
    for (const auto& [x, y] : component.edges) recorded.push_back(state.origin.at({std::min(x, y), std::max(x, y)}));
    std::sort(recorded.begin(), recorded.end());
    state.sampled.push_back(std::move(recorded));

    std::vector<char> merged(state.residual_members.size(), 0);
    int canonical = state.original->vertex_count();
    for (int r : component.vertices) {
        merged[r] = 1;
        canonical = std::min(canonical, state.residual_members[r]);
    }
    for (int v = 0; v < state.original->vertex_count(); ++v)
        if (merged[state.residual_vertex[v]]) state.class_of[v] = canonical;
    ++state.iterations;
    rebuild_residual(state);
    return state;
}

std::shared_ptr<const IrrCache::Entry> IrrCache::get_or_solve(const ContractionState& state, int k, std::size_t column_budget) {
    auto key = std::make_pair(k, state.class_of);
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto entry = solve_state(state, k, column_budget);
    std::lock_guard lock(mutex_);
    return entries_.emplace(std::move(key), std::move(entry)).first->second;
}

std::size_t IrrCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

IrrResult iterative_randomized_rounding(const SteinerInstance& si, int k, std::uint64_t seed, IrrCache* cache,
                                        std::size_t column_budget) {
    auto state = make_contraction_state(std::make_shared<const SteinerGraph>(si.graph));
    Rng rng(seed);
    IrrResult result;
    while (state.live_terminal_count() > 1) {
        const auto entry = cache ? cache->get_or_solve(state, k, column_budget) : solve_state(state, k, column_budget);
        const std::size_t pick = sample_component(entry->solution, rng);
        const auto tree = entry->components.tree_of(entry->components.components[pick]);
        result.lp_values.push_back(entry->solution.objective);
        state = contract_component(std::move(state), tree);
    }
    std::vector<VertexEdge> all;
    for (const auto& edges : state.sampled) all.insert(all.end(), edges.begin(), edges.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    auto tree = make_tree(forest_of(all, si.graph.vertex_count()), si.all_terminals());
    result.tree = prune_steiner_leaves(si.graph, std::move(tree));
    result.iterations = state.iterations;
    if (!is_tree(result.tree)) throw std::logic_error("rounding produced a disconnected terminal set");
    return result;
}

std::vector<LinkId> greedy_cover(const CacapInstance& instance) {
    const CutCoverage coverage(instance);
    if (!coverage.covers_all(all_links(instance))) throw Error(ErrorCode::Infeasible, "the links do not cover every 2-edge cut");
    std::vector<char> covered(coverage.cut_count(), 0), picked(instance.links.size(), 0);
    std::size_t remaining = coverage.cut_count();
    std::vector<LinkId> picks;
    while (remaining > 0) {
        LinkId best = -1;
        std::size_t best_gain = 0;
        for (LinkId l = 0; l < instance.link_count(); ++l) {
            if (picked[l]) continue;
            std::size_t gain = 0;
            for (std::size_t c = 0; c < coverage.cut_count(); ++c)
                if (!covered[c] && coverage.link_covers(l, c)) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = l;
            }
        }
        picked[best] = 1;
        picks.push_back(best);
        for (std::size_t c = 0; c < coverage.cut_count(); ++c)
            if (!covered[c] && coverage.link_covers(best, c)) {
                covered[c] = 1;
                --remaining;
            }
    }
    for (std::size_t i = picks.size(); i-- > 0;) {
        std::vector<LinkId> rest = picks;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (coverage.covers_all(rest)) picks = std::move(rest);
    }
    std::sort(picks.begin(), picks.end());
    return picks;
}

std::vector<LinkId> drop_redundant_links(const CacapInstance& instance, std::vector<LinkId> links) {
    const CutCoverage coverage(instance);
    std::sort(links.begin(), links.end());
    for (std::size_t i = links.size(); i-- > 0;) {
        std::vector<LinkId> rest = links;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (coverage.covers_all(rest)) links = std::move(rest);
    }
    return links;
}

SolveReport solve_cacap(const CacapInstance& instance, const SolveOptions& options) {
    require_feasible(instance);
    SolveReport report;
    report.terminals = static_cast<int>(instance.graph.terminals().size());
    report.cut_count = CutCoverage(instance).cut_count();
    if (instance.link_count() <= kReportOptimumLinkCap) report.optimum = static_cast<int>(brute_force_cacap(instance).size());
    if (options.repetitions < 1) throw Error(ErrorCode::InvalidInput, "repetitions must be positive", options.repetitions);

    const auto si = build_steiner_instance(instance);
    try {
        if (si.terminal_count() > kComponentTerminalCap)
            throw Error(ErrorCode::TooLarge, "too many terminals for DCR_k", si.terminal_count());
        IrrCache cache;
        std::vector<IrrResult> runs(static_cast<std::size_t>(options.repetitions));
        parallel_for(runs.size(), [&](std::size_t r) {
            runs[r] = iterative_randomized_rounding(si, options.k, Rng::stream_seed(options.seed, r), &cache, options.column_budget);
        });
        for (std::size_t r = 0; r < runs.size(); ++r) {
            report.run_costs.push_back(runs[r].tree.cost());
            if (report.best_run < 0 || runs[r].tree.cost() < report.run_costs[report.best_run]) report.best_run = static_cast<int>(r);
        }
        report.links = lift_solution(si, runs[report.best_run].tree.vertices);
        report.method = "irr";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge && e.code() != ErrorCode::TooManyTerminals) throw;
        report.warnings.push_back(std::string("LP caps exceeded, using greedy: ") + e.what());
        report.links = greedy_cover(instance);
        report.method = "greedy";
    }
    if (options.prune) report.links = drop_redundant_links(instance, report.links);
    if (!is_feasible_augmentation(instance, report.links)) throw std::logic_error("solver returned an infeasible link set");
    return report;
}

}  // namespace cacaug
