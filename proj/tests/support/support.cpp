#include "support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#ifndef SPLOPT_DATA_DIR
#define SPLOPT_DATA_DIR "data"
#endif

namespace testsupport {

std::string data_path(const std::string &file) { return std::string(SPLOPT_DATA_DIR) + "/" + file; }

namespace {

int pick(std::mt19937_64 &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

} // namespace

SplGraph random_spl(std::mt19937_64 &rng, IdSource &ids, int depth) {
  int roll = depth <= 0 ? 0 : pick(rng, 0, 5);
  switch (roll) {
  case 0:
  case 1: {
    int kind = pick(rng, 0, 3);
    if (kind == 1)
      return atomic(AtomKind::Break, Payload::of(Payload::Action::Break), ids);
    if (kind == 2)
      return atomic(AtomKind::Continue, Payload::of(Payload::Action::Continue), ids);
    return atomic(AtomKind::Epsilon, Payload::skip(), ids);
  }
  case 2:
  case 3: {
    SplGraph a = random_spl(rng, ids, depth - 1);
    return series(a, random_spl(rng, ids, depth - 1));
  }
  case 4: {
    SplGraph a = random_spl(rng, ids, depth - 1);
    return parallel(a, random_spl(rng, ids, depth - 1));
  }
  default:
    return loop(random_spl(rng, ids, depth - 1), ids);
  }
}

StmtPtr small_program(std::mt19937_64 &rng, std::size_t max_vertices) {
  ProgramOptions opts;
  opts.max_statements = 5;
  opts.max_depth = 2;
  opts.num_vars = 3;
  opts.jump_percent = 25;
  for (;;) {
    StmtPtr p = random_program(rng, opts);
    SplDecomposition d = decompose(*p);
    if (cfg_of(d)->num_vertices() <= max_vertices)
      return p;
  }
}

namespace {

template <class C, class Draw>
PcspInstance<C> random_pcsp(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, std::size_t max_domain,
                            bool node_costs, Draw draw) {
  PcspInstance<C> inst;
  inst.cfg = cfg;
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v)
    inst.domain_size.push_back(static_cast<std::size_t>(pick(rng, 1, static_cast<int>(max_domain))));
  auto edge_table = std::make_shared<std::vector<std::vector<C>>>();
  for (std::size_t e = 0; e < cfg->num_edges(); ++e) {
    std::size_t n = inst.domain_size[cfg->src(e)] * inst.domain_size[cfg->dst(e)];
    std::vector<C> row;
    for (std::size_t i = 0; i < n; ++i)
      row.push_back(draw(true));
    edge_table->push_back(std::move(row));
  }
  auto dom = inst.domain_size;
  inst.edge_cost = [edge_table, cfg, dom](std::size_t e, std::size_t a, std::size_t b) {
    return (*edge_table)[e][a * dom[cfg->dst(e)] + b];
  };
  if (node_costs) {
    auto node_table = std::make_shared<std::vector<std::vector<C>>>();
    for (std::size_t v = 0; v < cfg->num_vertices(); ++v) {
      std::vector<C> row;
      for (std::size_t a = 0; a < dom[v]; ++a)
        row.push_back(draw(false));
      node_table->push_back(std::move(row));
    }
    inst.node_cost = [node_table](std::size_t v, std::size_t a) { return (*node_table)[v][a]; };
  }
  return inst;
}

} // namespace

PcspInstance<IntCost> random_int_pcsp(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, std::size_t max_domain,
                                      int max_cost, bool node_costs, int inf_percent) {
  return random_pcsp<IntCost>(rng, cfg, max_domain, node_costs, [&](bool edge) {
    if (edge && inf_percent > 0 && pick(rng, 0, 99) < inf_percent)
      return IntCost::infinity();
    return IntCost(pick(rng, 0, max_cost));
  });
}

PcspInstance<Lex2Cost> random_lex2_pcsp(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg,
                                        std::size_t max_domain, int max_cost, bool node_costs) {
  return random_pcsp<Lex2Cost>(rng, cfg, max_domain, node_costs,
                               [&](bool) { return Lex2Cost(pick(rng, 0, max_cost), pick(rng, 0, max_cost)); });
}

LospreInstance<IntCost> random_lospre(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, int max_cost) {
  LospreInstance<IntCost> inst;
  inst.cfg = cfg;
  std::size_t s = cfg->special(Role::S), t = cfg->special(Role::T);
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v) {
    if (pick(rng, 0, 2) == 0)
      inst.use.push_back(v);
    if (v == s || v == t || pick(rng, 0, 3) == 0)
      inst.invalidating.push_back(v);
    inst.live_cost.push_back(IntCost(pick(rng, 0, max_cost)));
  }
  for (std::size_t e = 0; e < cfg->num_edges(); ++e)
    inst.edge_cost.push_back(IntCost(pick(rng, 0, max_cost)));
  return inst;
}

BankInstance random_bank(std::mt19937_64 &rng, std::shared_ptr<const Cfg> cfg, int banks) {
  BankInstance inst;
  inst.cfg = cfg;
  for (int b = 0; b < banks; ++b)
    inst.banks.push_back("bank" + std::to_string(b));
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v) {
    if (pick(rng, 0, 2) == 0)
      inst.precolor.push_back(pick(rng, 0, banks - 1));
    else
      inst.precolor.push_back(std::nullopt);
  }
  for (std::size_t e = 0; e < cfg->num_edges(); ++e)
    inst.taken.push_back(static_cast<char>(pick(rng, 0, 3) == 0));
  return inst;
}

RangeGraph live_ranges(const Cfg &cfg, const LiveMap &live) {
  // Union-find over (vertex, variable) pairs joined along edges live at both ends.
  std::map<std::pair<std::size_t, std::string>, std::size_t> id;
  std::vector<std::size_t> parent;
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    for (const std::string &x : live.at_vertex[v]) {
      id[{v, x}] = parent.size();
      parent.push_back(parent.size());
    }
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t e = 0; e < cfg.num_edges(); ++e) {
    std::size_t u = cfg.src(e), w = cfg.dst(e);
    for (const std::string &x : live.at_vertex[u])
      if (live.at_vertex[w].count(x))
        parent[find(id[{u, x}])] = find(id[{w, x}]);
  }
  std::map<std::size_t, std::size_t> range_of_root;
  RangeGraph g;
  std::vector<std::size_t> range(parent.size());
  for (const auto &[key, i] : id) {
    auto [it, fresh] = range_of_root.try_emplace(find(i), g.var.size());
    if (fresh)
      g.var.push_back(key.second);
    range[i] = it->second;
  }
  g.adjacent.assign(g.var.size(), std::vector<char>(g.var.size(), 0));
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    for (const std::string &x : live.at_vertex[v])
      for (const std::string &y : live.at_vertex[v])
        if (x != y)
          g.adjacent[range[id[{v, x}]]][range[id[{v, y}]]] = 1;
  return g;
}

bool colorable(const RangeGraph &g, int r, const std::vector<char> &removed) {
  std::size_t n = g.var.size();
  std::vector<int> color(n, -1);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == n)
      return true;
    if (removed[i])
      return go(i + 1);
    for (int c = 0; c < r; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = !(g.adjacent[i][j] && color[j] == c);
      if (!ok)
        continue;
      color[i] = c;
      if (go(i + 1))
        return true;
      color[i] = -1;
    }
    return false;
  };
  return go(0);
}

int min_spilled_ranges(const RangeGraph &g, int r) {
  std::size_t n = g.var.size();
  for (std::size_t k = 0; k <= n; ++k) {
    // Every subset of exactly k ranges, via a selection mask.
    std::vector<char> removed(n, 0);
    std::fill(removed.end() - static_cast<long>(k), removed.end(), 1);
    do {
      if (colorable(g, r, removed))
        return static_cast<int>(k);
    } while (std::next_permutation(removed.begin(), removed.end()));
  }
  return static_cast<int>(n);
}

int chromatic_number(const RangeGraph &g) {
  std::vector<char> none(g.var.size(), 0);
  int r = 0;
  while (!colorable(g, r, none))
    ++r;
  return r;
}

} // namespace testsupport
