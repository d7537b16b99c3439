#include "cacaug/io.hpp"

#include "cacaug/error.hpp"
#include "cacaug/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cacaug {

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

/// Calls fn(line_number, tokens) for every non-blank, non-comment line.
template <typename Fn>
void for_records(std::string_view text, Fn&& fn) {
    long number = 0;
    while (!text.empty()) {
        const std::size_t end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tokens = tokens_of(line);
        if (tokens.empty() || tokens[0] == "c") continue;
        fn(number, tokens);
    }
}

[[noreturn]] void syntax(long line, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what, line);
}

long to_long(std::string_view token, long line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) syntax(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

}  // namespace

ParsedInstance parse_instance(std::string_view text) {
    bool header = false;
    long n = 0, m = 0, l = 0;
    std::vector<Edge> edges;
    std::vector<Link> links;
    std::vector<std::string> warnings;
    std::set<std::pair<long, long>> seen_links;
    long link_records = 0;

    for_records(text, [&](long line, const std::vector<std::string_view>& tok) {
        if (tok[0] == "p") {
            if (header) syntax(line, "second header");
            if (tok.size() != 5 || tok[1] != "cacap") syntax(line, "header must be 'p cacap <nodes> <edges> <links>'");
            n = to_long(tok[2], line);
            m = to_long(tok[3], line);
            l = to_long(tok[4], line);
            if (n < 1 || m < 0 || l < 0) syntax(line, "header counts must be non-negative with at least one node");
            header = true;
            return;
        }
        if (tok[0] != "e" && tok[0] != "l") syntax(line, "unknown record '" + std::string(tok[0]) + "'");
        if (!header) syntax(line, "record before the header");
        if (tok.size() != 3) syntax(line, "expected '" + std::string(tok[0]) + " <u> <v>'");
        const long u = to_long(tok[1], line), v = to_long(tok[2], line);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error(ErrorCode::SemanticError, "line " + std::to_string(line) + ": node id out of range", line);
        if (tok[0] == "e") {
            edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        } else {
            if (u == v) throw Error(ErrorCode::SemanticError, "line " + std::to_string(line) + ": link is a loop", line);
            ++link_records;
            if (seen_links.emplace(std::min(u, v), std::max(u, v)).second)
                links.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
            else
                warnings.push_back("line " + std::to_string(line) + ": repeated link " + std::to_string(u) + "-" +
                                   std::to_string(v) + " dropped");
        }
    });

    if (!header) throw Error(ErrorCode::SyntaxError, "missing 'p cacap' header", 0);
    if (static_cast<long>(edges.size()) != m)
        throw Error(ErrorCode::SemanticError, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    if (link_records != l)
        throw Error(ErrorCode::SemanticError, "header declares " + std::to_string(l) + " links, found " + std::to_string(link_records));

    try {
        auto graph = validate_cactus(static_cast<int>(n), std::move(edges));
        return {make_instance(std::move(graph), std::move(links)), std::move(warnings)};
    } catch (const Error& e) {
        throw Error(ErrorCode::SemanticError, std::string("not a valid cactus instance: ") + e.what(), e.detail());
    }
}

std::string write_instance(const CacapInstance& instance) {
    std::ostringstream os;
    const auto& g = instance.graph;
    os << "p cacap " << g.node_count() << ' ' << g.edge_count() << ' ' << instance.link_count() << '\n';
    for (const auto& e : g.edges()) os << "e " << e.u << ' ' << e.v << '\n';
    for (const auto& l : instance.links) os << "l " << l.u << ' ' << l.v << '\n';
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + path);
}

RootedSteinerTree parse_tree(std::string_view text) {
    struct Row {
        long line;
        long id;
        NodeKind kind;
        long parent;
        std::string label;
    };
    std::vector<Row> rows;
    for_records(text, [&](long line, const std::vector<std::string_view>& tok) {
        if (tok.size() < 3 || tok.size() > 4) syntax(line, "expected '<id> <s|t> <parent> [label]'");
        Row row{line, to_long(tok[0], line), NodeKind::Steiner, to_long(tok[2], line), {}};
        if (tok[1] == "t" || tok[1] == "terminal")
            row.kind = NodeKind::Terminal;
        else if (tok[1] != "s" && tok[1] != "steiner")
            syntax(line, "node kind must be 's' or 't'");
        if (tok.size() == 4) row.label = std::string(tok[3]);
        rows.push_back(std::move(row));
    });
    const long n = static_cast<long>(rows.size());
    if (n == 0) throw Error(ErrorCode::SyntaxError, "tree file has no nodes", 0);
    std::vector<NodeKind> kinds(n);
    std::vector<int> parents(n);
    std::vector<std::string> labels(n);
    std::vector<char> seen(n, 0);
    for (const auto& row : rows) {
        if (row.id < 0 || row.id >= n) syntax(row.line, "node id must lie in [0, " + std::to_string(n) + ")");
        if (seen[row.id]) syntax(row.line, "node id " + std::to_string(row.id) + " repeated");
        if (row.parent < -1 || row.parent >= n) syntax(row.line, "parent id out of range");
        seen[row.id] = 1;
        kinds[row.id] = row.kind;
        parents[row.id] = static_cast<int>(row.parent);
        labels[row.id] = row.label.empty() ? std::to_string(row.id) : row.label;
    }
    return RootedSteinerTree::from_parents(std::move(kinds), std::move(parents), std::move(labels));
}

std::string write_tree(const RootedSteinerTree& tree) {
    std::ostringstream os;
    for (int v = 0; v < tree.size(); ++v)
        os << v << ' ' << (tree.is_terminal(v) ? 't' : 's') << ' ' << tree.parent(v) << ' ' << tree.label(v) << '\n';
    return os.str();
}

std::string write_steiner_instance(const SteinerInstance& si) {
    std::ostringstream os;
    auto edges = si.graph.edges();
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    os << "p steiner " << si.graph.vertex_count() << ' ' << edges.size() << ' ' << si.terminal_count() << '\n';
    for (int i = 0; i < si.terminal_count(); ++i) os << "t " << i << ' ' << si.terminal_nodes[i] << '\n';
    for (int l = 0; l < si.link_count(); ++l)
        os << "s " << si.steiner_vertex(l) << ' ' << l << ' ' << si.back_map[l].u << ' ' << si.back_map[l].v << '\n';
    for (const auto& [a, b] : edges) os << "e " << a << ' ' << b << '\n';
    return os.str();
}

CacapInstance gen_instance(int cycle_count, int max_cycle_len, int link_count, std::uint64_t seed) {
    if (cycle_count < 1 || max_cycle_len < 2 || link_count < 0)
        throw Error(ErrorCode::InvalidInput, "need cycles >= 1, max cycle length >= 2, links >= 0");
    Rng rng(seed);
    int n = 1;
    std::vector<Edge> edges;
    for (int c = 0; c < cycle_count; ++c) {
        const NodeId anchor = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n)));
        const int len = static_cast<int>(rng.uniform_int(2, max_cycle_len));
        NodeId prev = anchor;
        for (int i = 1; i < len; ++i) {
            edges.push_back({prev, n});
            prev = n++;
        }
        edges.push_back({prev, anchor});
    }
    // Repeated pairs are redrawn so that files round-trip through the parser.
    std::vector<Link> links;
    std::set<std::pair<NodeId, NodeId>> used;
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    while (static_cast<long>(links.size()) < std::min<long>(link_count, pairs)) {
        const NodeId u = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n)));
        NodeId v = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n - 1)));
        if (v >= u) ++v;
        if (used.emplace(std::min(u, v), std::max(u, v)).second) links.push_back({u, v});
    }
    auto instance = make_instance(validate_cactus(n, std::move(edges)), std::move(links));
    for (;;) {
        const CutCoverage coverage(instance);
        const auto cut = coverage.first_uncovered(all_links(instance));
        if (cut == coverage.cut_count()) break;
        std::vector<NodeId> left, right;
        for (NodeId v = 0; v < n; ++v) (coverage.cuts()[cut].on_left(v) ? left : right).push_back(v);
        const NodeId u = left[rng.uniform(left.size())];
        const NodeId v = right[rng.uniform(right.size())];
        instance.links.push_back({u, v});
    }
    return instance;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << kBenchHeader << '\n';
    char buf[64];
    for (const auto& r : rows) {
        os << r.instance << ',' << r.nodes << ',' << r.terminals << ',' << r.links << ',' << r.cuts << ',' << r.method << ','
           << r.cost << ',';
        if (r.opt) {
            std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(r.cost) / *r.opt);
            os << *r.opt << ',' << buf;
        } else {
            os << ',';
        }
        os << ',';
        if (r.wall_ms) {
            std::snprintf(buf, sizeof buf, "%.3f", *r.wall_ms);
            os << buf;
        }
        os << ',' << r.seed << '\n';
    }
    return os.str();
}

}  // namespace cacaug
