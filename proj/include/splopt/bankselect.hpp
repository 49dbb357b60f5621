/// \file
/// Placement of bank selection instructions. Each vertex is assigned the
/// bank known to be active there, or "unknown"; a switch is paid on every
/// edge whose destination needs a bank different from the source's.

#pragma once

#include "splopt/pcsp.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace splopt {

constexpr int kUnknownBank = -1;

struct BankInstance {
  std::shared_ptr<const Cfg> cfg;
  std::vector<std::string> banks;
  std::vector<std::optional<int>> precolor; // by vertex: required bank index
  IntCost c0{3};                            // switch on a fall-through edge
  IntCost c1{6};                            // switch on a taken branch edge
  std::vector<char> taken;                  // by edge
  /// The active bank is unknown on entry unless S is precolored.
  bool entry_unknown = true;
};

struct BankSolution {
  IntCost cost = IntCost::infinity();
  std::vector<int> bank; // by vertex; kUnknownBank for unknown
  std::vector<std::pair<std::size_t, int>> switches; // (edge, bank selected on it)
};

/// Throws Error on a precolor outside `banks`, c0 >= c1 or size mismatches.
void check_instance(const BankInstance &inst);

/// Domain value 0 is "unknown" and values 1.. are banks, except that a
/// precolored vertex has the single value of its bank.
struct BankPcsp {
  PcspInstance<IntCost> pcsp;
  std::shared_ptr<std::vector<std::vector<int>>> values; // by vertex: domain index -> bank
};

BankPcsp build_bank_pcsp(const BankInstance &inst);

BankSolution solve_bank(const BankInstance &inst, const SplDecomposition &d, SolveStats *stats = nullptr);

/// Price of switch edges under a given per-vertex bank choice.
IntCost bank_cost(const BankInstance &inst, const std::vector<int> &bank);

/// Cost of switching on every edge that enters a precolored vertex.
IntCost naive_bank_cost(const BankInstance &inst);

/// Edges that start the else branch of a conditional.
std::vector<char> default_taken_edges(const Cfg &cfg);

} // namespace splopt
