#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "cacaug/bounds.hpp"
#include "cacaug/cactus.hpp"
#include "cacaug/dcr_lp.hpp"
#include "cacaug/error.hpp"
#include "cacaug/exact.hpp"
#include "cacaug/io.hpp"
#include "cacaug/irr.hpp"
#include "cacaug/marking.hpp"
#include "cacaug/parallel.hpp"
#include "cacaug/reduction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>

namespace cacaug::cli {

namespace {

struct Options {
    std::string file;
    std::string out;
    std::string method;
    int k = kDefaultComponentSize;
    std::uint64_t seed = 1;
    int reps = 1;
    bool prune = false;
    std::size_t samples = 100000;
    std::optional<double> present;
    double grid_step = 1e-3;
    int imax = kHatCap;
    std::size_t f_samples = 10000;
    int cycles = 0;
    int max_cycle_len = 0;
    int links = 0;
    std::string dir;
    bool timing = false;
};

/// Writes to --out when given, otherwise to `out`.
void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty())
        out << text;
    else
        write_text_file(o.out, text);
}

std::string join(const std::vector<LinkId>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + std::to_string(ids[i]);
    return s;
}

CacapInstance load_instance(const std::string& path, std::ostream& err) {
    auto parsed = parse_instance(read_text_file(path));
    for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
    return std::move(parsed.instance);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(o.file, err);
    const auto& g = instance.graph;
    const CutCoverage coverage(instance);
    const auto uncovered = coverage.uncovered_count(all_links(instance));
    out << "nodes " << g.node_count() << "\nedges " << g.edge_count() << "\ncycles " << g.cycles().size() << "\nterminals "
        << g.terminals().size() << "\nlinks " << instance.link_count() << "\ncuts " << coverage.cut_count() << "\nuncovered "
        << uncovered << '\n';
    if (uncovered > 0) {
        const auto& cut = coverage.cuts()[coverage.first_uncovered(all_links(instance))];
        err << "infeasible: no link covers the cut {e" << cut.edge_a << ", e" << cut.edge_b << "}\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_cuts(const Options& o, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(o.file, err);
    const CutCoverage coverage(instance);
    out << "cuts " << coverage.cut_count() << '\n';
    for (std::size_t c = 0; c < coverage.cut_count(); ++c) {
        const auto& cut = coverage.cuts()[c];
        out << "cut " << c << " cycle " << cut.cycle << " edges " << cut.edge_a << ' ' << cut.edge_b << " side";
        for (NodeId v = 0; v < instance.graph.node_count(); ++v)
            if (cut.on_left(v)) out << ' ' << v;
        out << " covered_by";
        for (LinkId l = 0; l < instance.link_count(); ++l)
            if (coverage.link_covers(l, c)) out << ' ' << l;
        out << '\n';
    }
    return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(o.file, err);
    emit(o, out, write_steiner_instance(build_steiner_instance(instance)));
    return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(o.file, err);
    std::ostringstream os;
    if (o.method == "exact") {
        const auto links = brute_force_cacap(instance);
        os << "method exact\nsize " << links.size() << "\nlinks " << join(links) << '\n';
    } else if (o.method == "greedy") {
        auto links = greedy_cover(instance);
        if (o.prune) links = drop_redundant_links(instance, links);
        os << "method greedy\nsize " << links.size() << "\nlinks " << join(links) << '\n';
    } else {
        SolveOptions so;
        so.k = o.k;
        so.seed = o.seed;
        so.repetitions = o.reps;
        so.prune = o.prune;
        const auto report = solve_cacap(instance, so);
        for (const auto& w : report.warnings) err << "warning: " << w << '\n';
        os << "method " << report.method << "\nsize " << report.links.size() << "\nlinks " << join(report.links) << '\n';
        if (!report.run_costs.empty()) {
            os << "steiner_costs";
            for (int c : report.run_costs) os << ' ' << c;
            os << "\nbest_run " << report.best_run << '\n';
        }
        if (report.optimum) os << "opt " << *report.optimum << '\n';
    }
    out << os.str();
    return kExitOk;
}

int cmd_marking(const Options& o, std::ostream& out, std::ostream&) {
    using nlohmann::json;
    const auto tree = parse_tree(read_text_file(o.file));
    const auto cls = classify(tree);
    const double p = o.present ? *o.present : optimal_p_and_constant().p_star;

    std::optional<std::vector<mpq_class>> enumerated;
    std::string enumeration_note;
    try {
        enumerated = expected_costs_enumerated(tree);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLargeForEnumeration) throw;
        enumeration_note = e.what();
    }
    std::optional<MonteCarloCosts> mc;
    if (o.samples > 0) mc = monte_carlo_costs(tree, o.samples, o.seed);

    json nodes = json::array();
    bool consistent = true;
    for (int v : tree.steiner_nodes()) {
        const mpq_class chain = expected_cost_chain(tree, v);
        json node = {{"label", tree.label(v)},
                     {"id", v},
                     {"d", tree.d(v)},
                     {"s", tree.s(v)},
                     {"t", tree.t(v)},
                     {"good_father", static_cast<bool>(cls.good_father[v])},
                     {"good", static_cast<bool>(cls.good[v])},
                     {"leaf_steiner", static_cast<bool>(cls.leaf_steiner[v])},
                     {"cost", chain.get_d()},
                     {"cost_exact", chain.get_str()},
                     {"h_hat_bound", h_hat(tree.d(v))}};
        if (v != tree.root()) node["chain_degrees"] = chain_degrees(tree, v);
        if (enumerated) {
            node["enumerated"] = (*enumerated)[v].get_d();
            consistent = consistent && (*enumerated)[v] == chain;
        }
        if (mc) {
            node["monte_carlo"] = mc->mean[v];
            node["standard_error"] = mc->standard_error[v];
        }
        nodes.push_back(std::move(node));
    }
    json report = {{"steiner_nodes", tree.steiner_count()},
                   {"terminals", tree.terminal_count()},
                   {"root", tree.label(tree.root())},
                   {"well_structured", tree.is_well_structured()},
                   {"nodes", nodes},
                   {"enumeration_matches_chain", enumerated ? json(consistent) : json(nullptr)}};
    if (!enumeration_note.empty()) report["enumeration_skipped"] = enumeration_note;
    if (mc) report["samples"] = o.samples;

    if (tree.is_well_structured()) {
        const auto grouping = build_groups(tree);
        json groups = json::object();
        for (const auto& [owner, members] : grouping.groups) {
            json names = json::array();
            for (int m : members) names.push_back(tree.label(m));
            groups[tree.label(owner)] = names;
        }
        const auto bound = tree_bound(tree, p);
        report["groups"] = groups;
        report["leftover"] = tree.label(grouping.leftover);
        report["present"] = p;
        report["tree_bound"] = {{"bound", bound.bound},
                                {"max_group_average", bound.max_group_average},
                                {"average", bound.average},
                                {"argmax_group", tree.label(bound.argmax_group)}};
    }
    out << report.dump(2) << '\n';
    return consistent ? kExitOk : kExitFailure;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream&) {
    const auto report = bounds_report(o.grid_step, o.imax, o.f_samples, o.seed);
    emit(o, out, report.dump(2) + "\n");
    return report["pass"].get<bool>() ? kExitOk : kExitFailure;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream&) {
    emit(o, out, write_instance(gen_instance(o.cycles, o.max_cycle_len, o.links, o.seed)));
    return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cacap") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<std::vector<BenchRow>> per_file(files.size());
    std::vector<std::string> problems(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        try {
            const auto instance = parse_instance(read_text_file(files[i].string())).instance;
            require_feasible(instance);
            BenchRow base;
            base.instance = files[i].stem().string();
            base.nodes = instance.graph.node_count();
            base.terminals = static_cast<int>(instance.graph.terminals().size());
            base.links = instance.link_count();
            base.cuts = CutCoverage(instance).cut_count();
            base.seed = o.seed;
            if (instance.link_count() <= kReportOptimumLinkCap) base.opt = static_cast<int>(brute_force_cacap(instance).size());

            auto timed = [&](const std::string& method, auto&& run) {
                const auto start = std::chrono::steady_clock::now();
                const std::vector<LinkId> links = run();
                BenchRow row = base;
                row.method = method;
                row.cost = static_cast<int>(links.size());
                if (o.timing)
                    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                per_file[i].push_back(std::move(row));
            };
            timed("greedy", [&] { return greedy_cover(instance); });
            timed("irr", [&] {
                SolveOptions so;
                so.k = o.k;
                so.seed = o.seed;
                so.repetitions = o.reps;
                so.prune = o.prune;
                return solve_cacap(instance, so).links;
            });
            if (base.opt) timed("exact", [&] { return brute_force_cacap(instance); });
        } catch (const std::exception& e) {
            problems[i] = files[i].filename().string() + ": " + e.what();
        }
    });

    std::vector<BenchRow> rows;
    for (auto& r : per_file) rows.insert(rows.end(), r.begin(), r.end());
    for (const auto& p : problems)
        if (!p.empty()) err << "skipped " << p << '\n';
    emit(o, out, bench_csv(rows));
    return kExitOk;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidInput:
        case ErrorCode::POutOfRange:
            return kExitUsage;
        default:
            return kExitFailure;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cactus augmentation: reduction, LP rounding, marking analysis and bound checks", "cacaug"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Check a cactus instance and its coverage");
    validate->add_option("file", o.file, "Instance file")->required();

    auto* cuts = app.add_subcommand("cuts", "List all 2-edge cuts with their covering links");
    cuts->add_option("file", o.file, "Instance file")->required();

    auto* reduce = app.add_subcommand("reduce", "Write the Steiner tree instance of a cactus instance");
    reduce->add_option("file", o.file, "Instance file")->required();
    reduce->add_option("--out", o.out, "Output file (default stdout)");

    auto* solve = app.add_subcommand("solve", "Solve a cactus instance");
    solve->add_option("file", o.file, "Instance file")->required();
    solve->add_option("--method", o.method, "exact, irr or greedy")->required()->check(CLI::IsMember({"exact", "irr", "greedy"}));
    solve->add_option("--k", o.k, "Component size for the LP")->check(CLI::Range(2, kCliComponentSizeCap));
    solve->add_option("--seed", o.seed, "Random seed");
    solve->add_option("--reps", o.reps, "Independent rounding runs")->check(CLI::Range(1, 100000));
    solve->add_flag("--prune", o.prune, "Drop redundant links afterwards");

    auto* marking = app.add_subcommand("marking", "Marking scheme analysis");
    marking->require_subcommand(1);
    auto* analyze = marking->add_subcommand("analyze", "Expected costs, classes, groups and bound of a rooted tree");
    analyze->add_option("treefile", o.file, "Tree file")->required();
    analyze->add_option("--samples", o.samples, "Monte-Carlo samples (0 disables)");
    analyze->add_option("--seed", o.seed, "Random seed");
    analyze->add_option("--p", o.present, "Present (default: the equalizing value)");

    auto* bounds = app.add_subcommand("bounds", "Numeric bound checks");
    bounds->require_subcommand(1);
    auto* verify = bounds->add_subcommand("verify", "Verify every bound and constant, print a JSON report");
    verify->add_option("--grid-step", o.grid_step, "Grid step for the present")->check(CLI::Range(1e-9, 1e-3));
    verify->add_option("--imax", o.imax, "Largest group size scanned")->check(CLI::Range(9, kHatCap));
    verify->add_option("--samples", o.f_samples, "Random sequences for the f(S) checks");
    verify->add_option("--seed", o.seed, "Seed for the sequences");
    verify->add_option("--out", o.out, "Output file (default stdout)");

    auto* gen = app.add_subcommand("gen", "Generate a random feasible instance");
    gen->add_option("--cycles", o.cycles, "Number of cycles")->required()->check(CLI::PositiveNumber);
    gen->add_option("--max-cycle-len", o.max_cycle_len, "Longest cycle")->required()->check(CLI::Range(2, 1000000));
    gen->add_option("--links", o.links, "Random links before repair")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", o.seed, "Random seed")->required();
    gen->add_option("--out", o.out, "Output file (default stdout)");

    auto* bench = app.add_subcommand("bench", "Run greedy, IRR and exact on every .cacap file of a directory");
    bench->add_option("--dir", o.dir, "Instance directory")->required()->check(CLI::ExistingDirectory);
    bench->add_option("--out", o.out, "CSV file (default stdout)");
    bench->add_option("--seed", o.seed, "Random seed");
    bench->add_option("--reps", o.reps, "IRR runs per instance")->check(CLI::Range(1, 100000));
    bench->add_option("--k", o.k, "Component size for the LP")->check(CLI::Range(2, kCliComponentSizeCap));
    bench->add_flag("--prune", o.prune, "Drop redundant links from IRR output");
    bench->add_flag("--timing", o.timing, "Fill the wall_ms column");
    o.reps = 1;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (bench->parsed() && bench->count("--reps") == 0) o.reps = 20;

    try {
        if (validate->parsed()) return cmd_validate(o, out, err);
        if (cuts->parsed()) return cmd_cuts(o, out, err);
        if (reduce->parsed()) return cmd_reduce(o, out, err);
        if (solve->parsed()) return cmd_solve(o, out, err);
        if (analyze->parsed()) return cmd_marking(o, out, err);
        if (verify->parsed()) return cmd_bounds(o, out, err);
        if (gen->parsed()) return cmd_gen(o, out, err);
        if (bench->parsed()) return cmd_bench(o, out, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace cacaug::cli
