#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cacaug/cactus.hpp"
#include "cacaug/marking.hpp"
#include "cacaug/reduction.hpp"

namespace cacaug {

// Instance format, one record per line; `c` and `#` start comments:
//   p cacap <nodes> <edges> <links>
//   e <u> <v>      (exactly <edges> of these; node ids 0-based)
//   l <u> <v>      (exactly <links> of these)
// Records may interleave after the header. Link ids follow file order;
// a repeated link is dropped with a warning.

struct ParsedInstance {
    CacapInstance instance;
    std::vector<std::string> warnings;  // e.g. repeated links, which are dropped
};

/// Throws SyntaxError (detail = 1-based line) or SemanticError.
ParsedInstance parse_instance(std::string_view text);
std::string write_instance(const CacapInstance& instance);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// Tree format, one node per line: `<id> <s|t> <parent> [label]`, root
/// parent -1, ids 0..n-1 each once. Throws SyntaxError, plus the tree
/// construction errors (TerminalWithChildren, ThreeTerminalChildren,
/// CycleInParentArray, NoQualifyingRoot).
RootedSteinerTree parse_tree(std::string_view text);
std::string write_tree(const RootedSteinerTree& tree);

/// Reduced instance as text:
///   p steiner <vertices> <edges> <terminals>
///   t <vertex> <cactus node>
///   s <vertex> <link id> <u> <v>
///   e <a> <b>                       (a < b, ascending)
std::string write_steiner_instance(const SteinerInstance& si);

/// Cactus grown from node 0 by attaching `cycle_count` cycles of length
/// uniform in [2, max_cycle_len] at uniformly chosen existing nodes, then
/// `link_count` distinct links between uniform distinct nodes (capped at the
/// number of node pairs). While some cut is uncovered, the first one gets a
/// link with one uniform endpoint per side.
CacapInstance gen_instance(int cycle_count, int max_cycle_len, int link_count, std::uint64_t seed);

/// One benchmark row. `opt` and `ratio` are empty when brute force is out
/// of reach; `wall_ms` is empty unless timing was requested.
struct BenchRow {
    std::string instance;
    int nodes = 0;
    int terminals = 0;
    int links = 0;
    std::size_t cuts = 0;
    std::string method;
    int cost = 0;
    std::optional<int> opt;
    std::optional<double> wall_ms;
    std::uint64_t seed = 0;
};

inline constexpr std::string_view kBenchHeader = "instance,n,t,links,cuts,method,cost,opt,ratio,wall_ms,seed";

/// Header line plus one line per row; ratio = cost/opt with 6 decimals.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace cacaug
