#include "splopt/bankselect.hpp"

namespace splopt {

void check_instance(const BankInstance &inst) {
  if (!inst.cfg)
    throw Error("bank instance has no CFG");
  const Cfg &cfg = *inst.cfg;
  if (inst.precolor.size() != cfg.num_vertices())
    throw Error("bank precoloring covers " + std::to_string(inst.precolor.size()) + " of " +
                std::to_string(cfg.num_vertices()) + " vertices");
  if (inst.taken.size() != cfg.num_edges())
    throw Error("taken flags cover " + std::to_string(inst.taken.size()) + " of " +
                std::to_string(cfg.num_edges()) + " edges");
  for (std::size_t v = 0; v < inst.precolor.size(); ++v)
    if (inst.precolor[v] && (*inst.precolor[v] < 0 || *inst.precolor[v] >= static_cast<int>(inst.banks.size())))
      throw Error("vertex " + cfg.name(v) + " is precolored with an unknown bank");
  if (inst.c0.is_infinite() || inst.c1.is_infinite() || inst.c0.value <= 0 || !(inst.c0 < inst.c1))
    throw Error("bank switch costs must satisfy 0 < c0 < c1");
}

namespace {

IntCost switch_cost(const BankInstance &inst, std::size_t e, int from, int to) {
  if (to == kUnknownBank || to == from)
    return IntCost::zero();
  return inst.taken[e] ? inst.c1 : inst.c0;
}

} // namespace

BankPcsp build_bank_pcsp(const BankInstance &inst) {
  check_instance(inst);
  const Cfg &cfg = *inst.cfg;
  BankPcsp out;
  out.values = std::make_shared<std::vector<std::vector<int>>>(cfg.num_vertices());
  const std::size_t entry = cfg.special(Role::S);
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
    auto &vals = (*out.values)[v];
    if (inst.precolor[v]) {
      vals.push_back(*inst.precolor[v]);
    } else {
      vals.push_back(kUnknownBank);
      if (!(inst.entry_unknown && v == entry))
        for (int b = 0; b < static_cast<int>(inst.banks.size()); ++b)
          vals.push_back(b);
    }
    out.pcsp.domain_size.push_back(vals.size());
  }
  auto shared = std::make_shared<BankInstance>(inst);
  auto values = out.values;
  out.pcsp.cfg = inst.cfg;
  out.pcsp.edge_cost = [shared, values](std::size_t e, std::size_t a, std::size_t b) {
    const Cfg &g = *shared->cfg;
    return switch_cost(*shared, e, (*values)[g.src(e)][a], (*values)[g.dst(e)][b]);
  };
  out.pcsp.value_name = [shared, values](std::size_t v, std::size_t a) {
    int b = (*values)[v][a];
    return b == kUnknownBank ? std::string("?") : shared->banks[static_cast<std::size_t>(b)];
  };
  return out;
}

BankSolution solve_bank(const BankInstance &inst, const SplDecomposition &d, SolveStats *stats) {
  BankPcsp p = build_bank_pcsp(inst);
  Solution<IntCost> sol = solve(p.pcsp, d, stats);
  BankSolution out;
  out.cost = sol.cost;
  if (!sol.feasible())
    return out;
  for (std::size_t v = 0; v < sol.assignment.size(); ++v)
    out.bank.push_back((*p.values)[v][sol.assignment[v]]);
  const Cfg &cfg = *inst.cfg;
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    if (switch_cost(inst, e, out.bank[cfg.src(e)], out.bank[cfg.dst(e)]) > IntCost::zero())
      out.switches.emplace_back(e, out.bank[cfg.dst(e)]);
  return out;
}

IntCost bank_cost(const BankInstance &inst, const std::vector<int> &bank) {
  check_instance(inst);
  const Cfg &cfg = *inst.cfg;
  if (bank.size() != cfg.num_vertices())
    throw Error("bank choice covers the wrong number of vertices");
  IntCost total = IntCost::zero();
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    total += switch_cost(inst, e, bank[cfg.src(e)], bank[cfg.dst(e)]);
  return total;
}

IntCost naive_bank_cost(const BankInstance &inst) {
  check_instance(inst);
  const Cfg &cfg = *inst.cfg;
  IntCost total = IntCost::zero();
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    if (inst.precolor[v])
      for (std::size_t e : cfg.in_edges(v))
        total += inst.taken[e] ? inst.c1 : inst.c0;
  return total;
}

std::vector<char> default_taken_edges(const Cfg &cfg) {
  std::vector<char> taken(cfg.num_edges(), 0);
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    for (const Guard &g : cfg.edge(e).payload.guards)
      if (g.origin == Guard::Origin::If && g.negated)
        taken[e] = 1;
  return taken;
}

} // namespace splopt
