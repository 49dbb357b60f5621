/// \file
/// Exhaustive reference solvers. They enumerate assignments directly and
/// share only the objective with the DP.

#pragma once

#include "splopt/lospre.hpp"
#include "splopt/pcsp.hpp"

namespace splopt {

/// Enumerates every assignment in domain order (vertex 0 varies slowest);
/// the first optimum found wins. Throws Error if the number of assignments
/// exceeds `limit`.
template <CostMonoid C> Solution<C> brute_force(const PcspInstance<C> &instance, std::size_t limit = 10'000'000);

/// Minimum of lospre_cost over all 2^|V| life sets. Throws Error beyond 24 vertices.
template <CostMonoid C> LospreSolution<C> brute_force_lospre(const LospreInstance<C> &inst);

extern template Solution<IntCost> brute_force(const PcspInstance<IntCost> &, std::size_t);
extern template Solution<Lex2Cost> brute_force(const PcspInstance<Lex2Cost> &, std::size_t);
extern template LospreSolution<IntCost> brute_force_lospre(const LospreInstance<IntCost> &);
extern template LospreSolution<Lex2Cost> brute_force_lospre(const LospreInstance<Lex2Cost> &);

} // namespace splopt
