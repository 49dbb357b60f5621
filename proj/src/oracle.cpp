#include "splopt/oracle.hpp"

#include <algorithm>
#include <functional>

namespace splopt {

template <CostMonoid C> Solution<C> brute_force(const PcspInstance<C> &instance, std::size_t limit) {
  check_instance(instance);
  const Cfg &cfg = *instance.cfg;
  const std::size_t n = cfg.num_vertices();
  std::size_t combos = 1;
  for (std::size_t s : instance.domain_size) {
    if (s == 0)
      return {};
    if (combos > limit / s)
      throw Error("brute force would enumerate more than " + std::to_string(limit) + " assignments");
    combos *= s;
  }

  // Edges are charged once both endpoints are assigned.
  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    closing[std::max(cfg.src(e), cfg.dst(e))].push_back(e);

  Solution<C> best;
  Assignment cur(n, 0);
  std::function<void(std::size_t, C)> visit = [&](std::size_t v, C partial) {
    if (v == n) {
      if (partial < best.cost) {
        best.cost = partial;
        best.assignment = cur;
      }
      return;
    }
    for (std::size_t a = 0; a < instance.domain_size[v]; ++a) {
      cur[v] = a;
      C c = partial + instance.node(v, a);
      for (std::size_t e : closing[v])
        c = c + instance.edge_cost(e, cur[cfg.src(e)], cur[cfg.dst(e)]);
      if (!c.is_infinite())
        visit(v + 1, c);
    }
  };
  visit(0, C::zero());
  if (best.feasible() && !(eval_cost(instance, best.assignment) == best.cost))
    throw Error("internal error: brute force objective disagrees with eval_cost");
  return best;
}

template <CostMonoid C> LospreSolution<C> brute_force_lospre(const LospreInstance<C> &inst) {
  check_instance(inst);
  const std::size_t n = inst.cfg->num_vertices();
  if (n > 24)
    throw Error("LOSPRE brute force is limited to 24 vertices");
  LospreSolution<C> best;
  bool found = false;
  // Visit subsets in lexicographic order of their indicator vectors.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet life;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> (n - 1 - v) & 1u)
        life.push_back(v);
    C c = C::zero();
    for (std::size_t e : calc_set(*inst.cfg, inst.use, life, inst.invalidating))
      c = c + inst.edge_cost[e];
    for (std::size_t v : life)
      c = c + inst.live_cost[v];
    if (!found || c < best.cost) {
      found = true;
      best.cost = c;
      best.life = std::move(life);
    }
  }
  best.calc = calc_set(*inst.cfg, inst.use, best.life, inst.invalidating);
  return best;
}

template Solution<IntCost> brute_force(const PcspInstance<IntCost> &, std::size_t);
template Solution<Lex2Cost> brute_force(const PcspInstance<Lex2Cost> &, std::size_t);
template LospreSolution<IntCost> brute_force_lospre(const LospreInstance<IntCost> &);
template LospreSolution<Lex2Cost> brute_force_lospre(const LospreInstance<Lex2Cost> &);

} // namespace splopt
