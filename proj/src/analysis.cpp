#include "splopt/analysis.hpp"

#include <algorithm>
#include <deque>

namespace splopt {

VarSet uses(const Payload &p) {
  VarSet out;
  for (const Guard &g : p.guards)
    collect_vars(*g.cond, out);
  if (p.action == Payload::Action::Assign && p.expr)
    collect_vars(*p.expr, out);
  return out;
}

VarSet defs(const Payload &p) {
  if (p.action == Payload::Action::Assign)
    return {p.name};
  return {};
}

LiveMap liveness(const Cfg &cfg) {
  const std::size_t n = cfg.num_vertices();
  const std::size_t m = cfg.num_edges();
  std::vector<VarSet> use(m), def(m);
  for (std::size_t e = 0; e < m; ++e) {
    use[e] = uses(cfg.edge(e).payload);
    def[e] = defs(cfg.edge(e).payload);
  }

  LiveMap live;
  live.at_vertex.assign(n, {});
  std::deque<std::size_t> work;
  std::vector<char> queued(n, 1);
  for (std::size_t v = n; v-- > 0;)
    work.push_back(v);
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop_front();
    queued[v] = 0;
    ++live.iterations;
    VarSet next;
    for (std::size_t e : cfg.out_edges(v)) {
      next.insert(use[e].begin(), use[e].end());
      for (const std::string &x : live.at_vertex[cfg.dst(e)])
        if (!def[e].count(x))
          next.insert(x);
    }
    if (next == live.at_vertex[v])
      continue;
    live.at_vertex[v] = std::move(next);
    for (std::size_t e : cfg.in_edges(v)) {
      std::size_t u = cfg.src(e);
      if (!queued[u]) {
        queued[u] = 1;
        work.push_back(u);
      }
    }
  }

  live.at_edge.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    live.at_edge[e] = live.at_vertex[cfg.src(e)];
    live.at_edge[e].insert(live.at_vertex[cfg.dst(e)].begin(), live.at_vertex[cfg.dst(e)].end());
  }
  return live;
}

VarSet program_vars(const Cfg &cfg) {
  VarSet out;
  for (std::size_t e = 0; e < cfg.num_edges(); ++e) {
    VarSet u = uses(cfg.edge(e).payload);
    VarSet d = defs(cfg.edge(e).payload);
    out.insert(u.begin(), u.end());
    out.insert(d.begin(), d.end());
  }
  return out;
}

LospreSets derive_lospre_sets(const Cfg &cfg, const Expr &expr) {
  VarSet operands;
  collect_vars(expr, operands);
  std::vector<char> in_use(cfg.num_vertices(), 0), in_inv(cfg.num_vertices(), 0);
  for (std::size_t e = 0; e < cfg.num_edges(); ++e) {
    const Payload &p = cfg.edge(e).payload;
    bool computes = p.action == Payload::Action::Assign && p.expr && contains_subexpr(*p.expr, expr);
    for (const Guard &g : p.guards)
      computes = computes || contains_subexpr(*g.cond, expr);
    if (computes)
      in_use[cfg.src(e)] = 1;
    if (p.action == Payload::Action::Assign && operands.count(p.name))
      in_inv[cfg.dst(e)] = 1;
  }
  in_inv[cfg.special(Role::S)] = 1;
  in_inv[cfg.special(Role::T)] = 1;
  LospreSets sets;
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
    if (in_use[v])
      sets.use.push_back(v);
    if (in_inv[v])
      sets.invalidating.push_back(v);
  }
  return sets;
}

} // namespace splopt
