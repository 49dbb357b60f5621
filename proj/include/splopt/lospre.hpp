/// \file
/// Lifetime-optimal speculative partial redundancy elimination. A solution
/// is a life set L of vertices where a temporary holds the expression; the
/// expression is computed on the calculating set of edges.

#pragma once

#include "splopt/pcsp.hpp"

#include <memory>
#include <vector>

namespace splopt {

using VertexSet = std::vector<std::size_t>; // sorted Cfg vertex indices
using EdgeSet = std::vector<std::size_t>;   // sorted Cfg edge indices

template <CostMonoid C> struct LospreInstance {
  std::shared_ptr<const Cfg> cfg;
  VertexSet use;          // U
  VertexSet invalidating; // I
  std::vector<C> edge_cost; // c, by edge: price of computing on that edge
  std::vector<C> live_cost; // l, by vertex: price of keeping the temporary live there
};

template <CostMonoid C> struct LospreSolution {
  C cost = C::infinity();
  VertexSet life;
  EdgeSet calc;
};

/// Throws Error unless the sets are in range, S and T are invalidating and
/// the cost vectors have the right lengths.
template <CostMonoid C> void check_instance(const LospreInstance<C> &inst);

/// Edges (x, y) with x not in L \ I and y in U | L.
EdgeSet calc_set(const Cfg &cfg, const VertexSet &use, const VertexSet &life, const VertexSet &invalidating);

/// Sum of c over the calculating set plus sum of l over L.
template <CostMonoid C> C lospre_cost(const LospreInstance<C> &inst, const VertexSet &life);

/// Encodes the instance with per-vertex domain {0: outside L, 1: inside L}.
template <CostMonoid C> PcspInstance<C> build_lospre_pcsp(const LospreInstance<C> &inst);

template <CostMonoid C>
LospreSolution<C> solve_lospre(const LospreInstance<C> &inst, const SplDecomposition &d, SolveStats *stats = nullptr);

extern template void check_instance(const LospreInstance<IntCost> &);
extern template void check_instance(const LospreInstance<Lex2Cost> &);
extern template IntCost lospre_cost(const LospreInstance<IntCost> &, const VertexSet &);
extern template Lex2Cost lospre_cost(const LospreInstance<Lex2Cost> &, const VertexSet &);
extern template PcspInstance<IntCost> build_lospre_pcsp(const LospreInstance<IntCost> &);
extern template PcspInstance<Lex2Cost> build_lospre_pcsp(const LospreInstance<Lex2Cost> &);
extern template LospreSolution<IntCost> solve_lospre(const LospreInstance<IntCost> &, const SplDecomposition &,
                                                     SolveStats *);
extern template LospreSolution<Lex2Cost> solve_lospre(const LospreInstance<Lex2Cost> &, const SplDecomposition &,
                                                      SolveStats *);

} // namespace splopt
