/// \file
/// Register allocation as a PCSP: each vertex chooses an allocation of the
/// variables live there to registers 0..r-1 or to the spill slot.

#pragma once

#include "splopt/analysis.hpp"
#include "splopt/pcsp.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace splopt {

constexpr int kSpilled = -1;

/// Registers for the variables live at one vertex, aligned with that
/// vertex's live variables in name order; kSpilled marks a spill.
using PartialAllocation = std::vector<int>;

using AllocationCost =
    std::function<IntCost(std::size_t edge, const PartialAllocation &src, const PartialAllocation &dst)>;

struct RegAllocOptions {
  int registers = 0;
  bool allow_spill = false;
  /// Prices compatible endpoint allocations. Empty means zero everywhere.
  AllocationCost cost;
  /// Refuse to build domains larger than this.
  std::size_t max_domain = 4'000'000;
};

/// The allocations available at each vertex plus the encoded PCSP.
struct RegAllocProblem {
  std::shared_ptr<const Cfg> cfg;
  std::vector<std::vector<std::string>> vars;                // live variables by vertex, sorted
  std::shared_ptr<std::vector<std::vector<PartialAllocation>>> domains; // by vertex
  PcspInstance<IntCost> pcsp;
};

/// Domains enumerate variables in name order, registers ascending, spill
/// last. Edge cost is infinite when the endpoints disagree on a variable
/// live at both, otherwise `options.cost`.
RegAllocProblem build_regalloc_pcsp(std::shared_ptr<const Cfg> cfg, const LiveMap &live,
                                    const RegAllocOptions &options);

/// Cost hook that charges 1 for each spilled live range of a variable. A
/// live range is a maximal set of vertices where the variable is live,
/// connected by edges live at both ends; it is charged on its
/// lowest-numbered incident edge.
AllocationCost unit_spill_cost(const Cfg &cfg, const LiveMap &live);

struct RegAllocResult {
  IntCost cost = IntCost::infinity();
  std::vector<PartialAllocation> allocation; // by vertex; empty when infeasible
  std::set<std::string> spilled;             // variables spilled somewhere

  bool feasible() const { return !cost.is_infinite(); }
};

RegAllocResult solve_regalloc(const SplDecomposition &d, const LiveMap &live, const RegAllocOptions &options,
                              SolveStats *stats = nullptr);

/// Smallest r <= r_max admitting a spill-free allocation, or nullopt.
/// Starts at the largest live set, gallops upward and bisects.
std::optional<int> min_spill_free_registers(const SplDecomposition &d, const LiveMap &live, int r_max = 20);

struct InterferenceGraph {
  std::vector<std::string> vars;                         // sorted
  std::set<std::pair<std::string, std::string>> edges;   // (u, v) with u < v

  bool adjacent(const std::string &a, const std::string &b) const {
    return a < b ? edges.count({a, b}) > 0 : edges.count({b, a}) > 0;
  }
};

/// u and v interfere when some vertex has both live.
InterferenceGraph build_interference(const LiveMap &live);

} // namespace splopt
