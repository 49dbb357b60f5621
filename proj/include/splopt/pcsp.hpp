/// \file
/// Binary partial constraint satisfaction over CFGs, solved exactly by
/// bottom-up dynamic programming on an SPL decomposition.

#pragma once

#include "splopt/cost.hpp"
#include "splopt/decompose.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace splopt {

/// Domain values are indices 0..domain_size[v]-1 per vertex; clients keep the
/// mapping to their own value type. An empty domain makes the instance
/// infeasible.
template <CostMonoid C> struct PcspInstance {
  std::shared_ptr<const Cfg> cfg;
  std::vector<std::size_t> domain_size; // by Cfg vertex index
  /// Cost of edge `e` (Cfg edge index) with value `a` at its source and `b` at
  /// its destination.
  std::function<C(std::size_t e, std::size_t a, std::size_t b)> edge_cost;
  /// Optional; zero when empty.
  std::function<C(std::size_t v, std::size_t a)> node_cost;
  /// Optional; renders a domain value for reports.
  std::function<std::string(std::size_t v, std::size_t a)> value_name;

  C node(std::size_t v, std::size_t a) const { return node_cost ? node_cost(v, a) : C::zero(); }
};

using Assignment = std::vector<std::size_t>; // by Cfg vertex index

template <CostMonoid C> struct Solution {
  C cost = C::infinity();
  Assignment assignment; // empty when infeasible

  bool feasible() const { return !cost.is_infinite(); }
};

struct SolveStats {
  std::size_t total_work = 0;    // combinations examined over all nodes
  std::size_t max_node_work = 0; // largest count at a single node
  std::size_t max_domain = 0;
  std::size_t table_entries = 0; // finite entries stored over all nodes
};

/// Exact optimum of sum of edge costs plus node costs. Ties go to the
/// assignment whose root tuple, then internal choices, come first in domain
/// order. Throws Error if `d` does not describe `instance.cfg`.
template <CostMonoid C>
Solution<C> solve(const PcspInstance<C> &instance, const SplDecomposition &d, SolveStats *stats = nullptr);

/// The objective for a total assignment. Throws Error on a value outside its
/// vertex's domain or an assignment of the wrong length.
template <CostMonoid C> C eval_cost(const PcspInstance<C> &instance, const Assignment &a);

/// Checks that the domain sizes cover the CFG's vertices.
template <CostMonoid C> void check_instance(const PcspInstance<C> &instance);

extern template Solution<IntCost> solve(const PcspInstance<IntCost> &, const SplDecomposition &, SolveStats *);
extern template Solution<Lex2Cost> solve(const PcspInstance<Lex2Cost> &, const SplDecomposition &, SolveStats *);
extern template IntCost eval_cost(const PcspInstance<IntCost> &, const Assignment &);
extern template Lex2Cost eval_cost(const PcspInstance<Lex2Cost> &, const Assignment &);
extern template void check_instance(const PcspInstance<IntCost> &);
extern template void check_instance(const PcspInstance<Lex2Cost> &);

} // namespace splopt
