#include "splopt/lospre.hpp"

#include <algorithm>

namespace splopt {

namespace {

std::vector<char> indicator(const VertexSet &s, std::size_t n, const char *what) {
  std::vector<char> out(n, 0);
  for (std::size_t v : s) {
    if (v >= n)
      throw Error(std::string(what) + " set names vertex " + std::to_string(v) + " outside the CFG");
    out[v] = 1;
  }
  return out;
}

} // namespace

template <CostMonoid C> void check_instance(const LospreInstance<C> &inst) {
  if (!inst.cfg)
    throw Error("LOSPRE instance has no CFG");
  const Cfg &cfg = *inst.cfg;
  auto inv = indicator(inst.invalidating, cfg.num_vertices(), "invalidating");
  indicator(inst.use, cfg.num_vertices(), "use");
  if (!inv[cfg.special(Role::S)] || !inv[cfg.special(Role::T)])
    throw Error("entry and exit vertices must be invalidating");
  if (inst.edge_cost.size() != cfg.num_edges())
    throw Error("LOSPRE edge costs cover " + std::to_string(inst.edge_cost.size()) + " of " +
                std::to_string(cfg.num_edges()) + " edges");
  if (inst.live_cost.size() != cfg.num_vertices())
    throw Error("LOSPRE live costs cover " + std::to_string(inst.live_cost.size()) + " of " +
                std::to_string(cfg.num_vertices()) + " vertices");
}

EdgeSet calc_set(const Cfg &cfg, const VertexSet &use, const VertexSet &life, const VertexSet &invalidating) {
  const std::size_t n = cfg.num_vertices();
  auto u = indicator(use, n, "use");
  auto l = indicator(life, n, "life");
  auto inv = indicator(invalidating, n, "invalidating");
  EdgeSet out;
  for (std::size_t e = 0; e < cfg.num_edges(); ++e) {
    std::size_t x = cfg.src(e), y = cfg.dst(e);
    bool holds = l[x] && !inv[x];
    if (!holds && (u[y] || l[y]))
      out.push_back(e);
  }
  return out;
}

template <CostMonoid C> C lospre_cost(const LospreInstance<C> &inst, const VertexSet &life) {
  check_instance(inst);
  C total = C::zero();
  for (std::size_t e : calc_set(*inst.cfg, inst.use, life, inst.invalidating))
    total = total + inst.edge_cost[e];
  for (std::size_t v : life)
    total = total + inst.live_cost[v];
  return total;
}

template <CostMonoid C> PcspInstance<C> build_lospre_pcsp(const LospreInstance<C> &inst) {
  check_instance(inst);
  const std::size_t n = inst.cfg->num_vertices();
  auto u = std::make_shared<std::vector<char>>(indicator(inst.use, n, "use"));
  auto inv = std::make_shared<std::vector<char>>(indicator(inst.invalidating, n, "invalidating"));
  auto cfg = inst.cfg;
  auto c = std::make_shared<std::vector<C>>(inst.edge_cost);
  auto l = std::make_shared<std::vector<C>>(inst.live_cost);
  PcspInstance<C> p;
  p.cfg = cfg;
  p.domain_size.assign(n, 2);
  p.edge_cost = [cfg, u, inv, c](std::size_t e, std::size_t ax, std::size_t ay) {
    std::size_t x = cfg->src(e), y = cfg->dst(e);
    bool holds = ax == 1 && !(*inv)[x];
    return !holds && ((*u)[y] || ay == 1) ? (*c)[e] : C::zero();
  };
  p.node_cost = [l](std::size_t v, std::size_t a) { return a == 1 ? (*l)[v] : C::zero(); };
  p.value_name = [](std::size_t, std::size_t a) { return std::string(a == 1 ? "live" : "-"); };
  return p;
}

template <CostMonoid C>
LospreSolution<C> solve_lospre(const LospreInstance<C> &inst, const SplDecomposition &d, SolveStats *stats) {
  PcspInstance<C> p = build_lospre_pcsp(inst);
  Solution<C> sol = solve(p, d, stats);
  LospreSolution<C> out;
  out.cost = sol.cost;
  if (!sol.feasible())
    return out;
  for (std::size_t v = 0; v < sol.assignment.size(); ++v)
    if (sol.assignment[v] == 1)
      out.life.push_back(v);
  out.calc = calc_set(*inst.cfg, inst.use, out.life, inst.invalidating);
  return out;
}

template void check_instance(const LospreInstance<IntCost> &);
template void check_instance(const LospreInstance<Lex2Cost> &);
template IntCost lospre_cost(const LospreInstance<IntCost> &, const VertexSet &);
template Lex2Cost lospre_cost(const LospreInstance<Lex2Cost> &, const VertexSet &);
template PcspInstance<IntCost> build_lospre_pcsp(const LospreInstance<IntCost> &);
template PcspInstance<Lex2Cost> build_lospre_pcsp(const LospreInstance<Lex2Cost> &);
template LospreSolution<IntCost> solve_lospre(const LospreInstance<IntCost> &, const SplDecomposition &, SolveStats *);
template LospreSolution<Lex2Cost> solve_lospre(const LospreInstance<Lex2Cost> &, const SplDecomposition &,
                                               SolveStats *);

} // namespace splopt
