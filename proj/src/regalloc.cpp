#include "splopt/regalloc.hpp"

#include <algorithm>
#include <numeric>

namespace splopt {

namespace {

// All partial allocations of k variables: registers ascending, spill last,
// distinct registers.
std::vector<PartialAllocation> enumerate_allocations(std::size_t k, int r, bool allow_spill, std::size_t cap) {
  std::vector<PartialAllocation> out;
  PartialAllocation cur(k, kSpilled);
  std::vector<int> options;
  for (int reg = 0; reg < r; ++reg)
    options.push_back(reg);
  if (allow_spill)
    options.push_back(kSpilled);
  std::vector<char> used(options.size(), 0);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) {
      out.push_back(cur);
      if (out.size() > cap)
        throw Error("register allocation domain exceeds " + std::to_string(cap) + " allocations");
      return;
    }
    for (int choice : options) {
      if (choice != kSpilled && used[static_cast<std::size_t>(choice)])
        continue;
      cur[i] = choice;
      if (choice != kSpilled)
        used[static_cast<std::size_t>(choice)] = 1;
      extend(i + 1);
      if (choice != kSpilled)
        used[static_cast<std::size_t>(choice)] = 0;
    }
  };
  extend(0);
  return out;
}

std::vector<std::vector<std::string>> sorted_vars(const LiveMap &live) {
  std::vector<std::vector<std::string>> vars;
  for (const VarSet &s : live.at_vertex)
    vars.emplace_back(s.begin(), s.end());
  return vars;
}

} // namespace

RegAllocProblem build_regalloc_pcsp(std::shared_ptr<const Cfg> cfg, const LiveMap &live,
                                    const RegAllocOptions &options) {
  if (options.registers < 0)
    throw Error("register count must be non-negative");
  if (live.at_vertex.size() != cfg->num_vertices())
    throw Error("live map does not match the CFG");
  RegAllocProblem p;
  p.cfg = cfg;
  p.vars = sorted_vars(live);
  p.domains = std::make_shared<std::vector<std::vector<PartialAllocation>>>();
  std::vector<std::vector<PartialAllocation>> by_size;
  for (const auto &vs : p.vars) {
    std::size_t k = vs.size();
    while (by_size.size() <= k)
      by_size.push_back(
          enumerate_allocations(by_size.size(), options.registers, options.allow_spill, options.max_domain));
    p.domains->push_back(by_size[k]);
  }

  // Positions of the variables shared by the endpoints of each edge.
  auto shared = std::make_shared<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>(cfg->num_edges());
  for (std::size_t e = 0; e < cfg->num_edges(); ++e) {
    const auto &a = p.vars[cfg->src(e)];
    const auto &b = p.vars[cfg->dst(e)];
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto it = std::lower_bound(b.begin(), b.end(), a[i]);
      if (it != b.end() && *it == a[i])
        (*shared)[e].emplace_back(i, static_cast<std::size_t>(it - b.begin()));
    }
  }

  p.pcsp.cfg = cfg;
  for (const auto &dom : *p.domains)
    p.pcsp.domain_size.push_back(dom.size());
  auto domains = p.domains;
  AllocationCost hook = options.cost;
  p.pcsp.edge_cost = [cfg, domains, shared, hook](std::size_t e, std::size_t a, std::size_t b) {
    const PartialAllocation &fa = (*domains)[cfg->src(e)][a];
    const PartialAllocation &fb = (*domains)[cfg->dst(e)][b];
    for (auto [i, j] : (*shared)[e])
      if (fa[i] != fb[j])
        return IntCost::infinity();
    return hook ? hook(e, fa, fb) : IntCost::zero();
  };
  auto vars = std::make_shared<std::vector<std::vector<std::string>>>(p.vars);
  p.pcsp.value_name = [domains, vars](std::size_t v, std::size_t a) {
    const PartialAllocation &f = (*domains)[v][a];
    std::string out = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i)
        out += ", ";
      out += (*vars)[v][i] + ": " + (f[i] == kSpilled ? std::string("spill") : "r" + std::to_string(f[i]));
    }
    return out + "}";
  };
  return p;
}

AllocationCost unit_spill_cost(const Cfg &cfg, const LiveMap &live) {
  const std::size_t n = cfg.num_vertices();
  auto vars = sorted_vars(live);
  // charges[e] = (endpoint is destination, position of the variable there)
  auto charges = std::make_shared<std::vector<std::vector<std::pair<bool, std::size_t>>>>(cfg.num_edges());
  std::set<std::string> all;
  for (const auto &vs : vars)
    all.insert(vs.begin(), vs.end());
  auto position = [&](std::size_t v, const std::string &x) -> std::optional<std::size_t> {
    auto it = std::lower_bound(vars[v].begin(), vars[v].end(), x);
    if (it == vars[v].end() || *it != x)
      return std::nullopt;
    return static_cast<std::size_t>(it - vars[v].begin());
  };
  for (const std::string &x : all) {
    // Union-find over vertices where x is live.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a)
        a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t e = 0; e < cfg.num_edges(); ++e)
      if (position(cfg.src(e), x) && position(cfg.dst(e), x))
        parent[find(cfg.src(e))] = find(cfg.dst(e));
    std::vector<char> charged(n, 0);
    for (std::size_t e = 0; e < cfg.num_edges(); ++e) {
      for (bool at_dst : {false, true}) {
        std::size_t v = at_dst ? cfg.dst(e) : cfg.src(e);
        auto pos = position(v, x);
        if (!pos)
          continue;
        std::size_t root = find(v);
        if (charged[root])
          continue;
        charged[root] = 1;
        (*charges)[e].emplace_back(at_dst, *pos);
      }
    }
  }
  return [charges](std::size_t e, const PartialAllocation &src, const PartialAllocation &dst) {
    std::int64_t count = 0;
    for (auto [at_dst, pos] : (*charges)[e])
      count += (at_dst ? dst[pos] : src[pos]) == kSpilled;
    return IntCost(count);
  };
}

RegAllocResult solve_regalloc(const SplDecomposition &d, const LiveMap &live, const RegAllocOptions &options,
                              SolveStats *stats) {
  RegAllocProblem p = build_regalloc_pcsp(cfg_of(d), live, options);
  Solution<IntCost> sol = solve(p.pcsp, d, stats);
  RegAllocResult result;
  result.cost = sol.cost;
  if (!sol.feasible())
    return result;
  for (std::size_t v = 0; v < sol.assignment.size(); ++v) {
    result.allocation.push_back((*p.domains)[v][sol.assignment[v]]);
    for (std::size_t i = 0; i < p.vars[v].size(); ++i)
      if (result.allocation.back()[i] == kSpilled)
        result.spilled.insert(p.vars[v][i]);
  }
  return result;
}

std::optional<int> min_spill_free_registers(const SplDecomposition &d, const LiveMap &live, int r_max) {
  std::size_t widest = 0;
  for (const VarSet &s : live.at_vertex)
    widest = std::max(widest, s.size());
  int lb = static_cast<int>(widest);
  if (lb > r_max)
    return std::nullopt;
  auto feasible = [&](int r) {
    RegAllocOptions o;
    o.registers = r;
    return solve_regalloc(d, live, o).feasible();
  };
  if (feasible(lb))
    return lb;
  int bad = lb, good = -1;
  for (int step = 1;; step *= 2) {
    int r = std::min(lb + step, r_max);
    if (feasible(r)) {
      good = r;
      break;
    }
    bad = r;
    if (r == r_max)
      return std::nullopt;
  }
  while (good - bad > 1) {
    int mid = bad + (good - bad) / 2;
    (feasible(mid) ? good : bad) = mid;
  }
  return good;
}

InterferenceGraph build_interference(const LiveMap &live) {
  InterferenceGraph g;
  std::set<std::string> all;
  for (const VarSet &s : live.at_vertex) {
    all.insert(s.begin(), s.end());
    for (auto a = s.begin(); a != s.end(); ++a)
      for (auto b = std::next(a); b != s.end(); ++b)
        g.edges.emplace(*a, *b);
  }
  g.vars.assign(all.begin(), all.end());
  return g;
}

} // namespace splopt
