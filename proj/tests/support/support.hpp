// Shared helpers for the unit and acceptance tests: reference programs,
// random instances and independent oracles.

#pragma once

#include "splopt/analysis.hpp"
#include "splopt/bankselect.hpp"
#include "splopt/generate.hpp"
#include "splopt/lospre.hpp"
#include "splopt/pcsp.hpp"

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace splopt;

inline const char *kGcdProgram =
    "while x >= 1 { if x >= y { x = x - y; break } else { y = y - x; continue } }";

inline const char *kRegisterProgram =
    "while * { a = b + c; d = -a; e = d + f; if * { f = 2 * e } else { b = d + e; e = e - 1 }; b = f + c }";

// Eight named vertices: 1 -> 2 -> 3 -> {4, 5} -> 6 -> 7 -> 8.
inline const char *kDiamondProgram = "skip; skip; if c { skip; skip } else { skip; skip }; skip; skip";

std::string data_path(const std::string &file);

/// A random composition of atomic graphs under series, parallel and loop.
SplGraph random_spl(std::mt19937_64 &rng, IdSource &ids, int depth);

/// Random closed program whose CFG has at most `max_vertices` vertices.
StmtPtr small_program(std::mt19937_64 &rng, std::size_t max_vertices = 14);

/// Dense random costs in [0, max_cost]; `inf_percent` of the edge entries
/// become infinite. Domain sizes are drawn from [1, max_domain].
PcspInstance<IntCost> random_int_pcsp(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, std::size_t max_domain,
                                      int max_cost, bool node_costs, int inf_percent = 0);
PcspInstance<Lex2Cost> random_lex2_pcsp(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg,
                                        std::size_t max_domain, int max_cost, bool node_costs);

LospreInstance<IntCost> random_lospre(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, int max_cost);

BankInstance random_bank(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, int banks);

/// Live ranges of each variable and the graph of ranges sharing a vertex.
struct RangeGraph {
  std::vector<std::string> var; // by range
  std::vector<std::vector<char>> adjacent;
};
RangeGraph live_ranges(const Cfg &cfg, const LiveMap &live);

/// True if the ranges not in `removed` can be colored with r colors.
bool colorable(const RangeGraph &g, int r, const std::vector<char> &removed);

/// Smallest number of ranges whose removal leaves an r-colorable graph.
int min_spilled_ranges(const RangeGraph &g, int r);

/// Smallest r for which the whole range graph is r-colorable.
int chromatic_number(const RangeGraph &g);

} // namespace testsupport
