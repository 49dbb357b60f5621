/// \file
/// Backward liveness over CFG edges and derivation of LOSPRE use and
/// invalidating sets from source programs.

#pragma once

#include "splopt/decompose.hpp"

#include <set>
#include <string>
#include <vector>

namespace splopt {

using VarSet = std::set<std::string>;

/// Variables read by an edge: its guards and the right-hand side.
VarSet uses(const Payload &p);
/// Variables written by an edge (at most one).
VarSet defs(const Payload &p);

struct LiveMap {
  std::vector<VarSet> at_vertex; // by Cfg vertex index
  std::vector<VarSet> at_edge;   // by Cfg edge index: live at either endpoint
  std::size_t iterations = 0;    // worklist pops until the fixpoint
};

/// Least fixpoint of live(u) = U over edges e=(u,v) of use(e) | (live(v) - def(e)).
LiveMap liveness(const Cfg &cfg);

/// Every program variable mentioned on some edge.
VarSet program_vars(const Cfg &cfg);

struct LospreSets {
  std::vector<std::size_t> use;          // sorted vertex indices
  std::vector<std::size_t> invalidating; // sorted vertex indices
};

/// A vertex uses `expr` when one of its outgoing edges computes it (in a
/// right-hand side or a guard); it invalidates when one of its incoming edges
/// assigns an operand. S and T are always invalidating.
LospreSets derive_lospre_sets(const Cfg &cfg, const Expr &expr);

} // namespace splopt
