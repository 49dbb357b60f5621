#include "splopt/pcsp.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

namespace splopt {

template <CostMonoid C> void check_instance(const PcspInstance<C> &instance) {
  if (!instance.cfg)
    throw Error("PCSP instance has no CFG");
  if (instance.domain_size.size() != instance.cfg->num_vertices())
    throw Error("PCSP instance has " + std::to_string(instance.domain_size.size()) + " domains for " +
                std::to_string(instance.cfg->num_vertices()) + " vertices");
  if (!instance.edge_cost)
    throw Error("PCSP instance has no edge cost function");
  for (std::size_t s : instance.domain_size)
    if (s >= UINT32_MAX)
      throw Error("PCSP domain too large");
}

template <CostMonoid C> C eval_cost(const PcspInstance<C> &instance, const Assignment &a) {
  check_instance(instance);
  const Cfg &cfg = *instance.cfg;
  if (a.size() != cfg.num_vertices())
    throw Error("assignment covers " + std::to_string(a.size()) + " of " + std::to_string(cfg.num_vertices()) +
                " vertices");
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v] >= instance.domain_size[v])
      throw Error("value " + std::to_string(a[v]) + " is outside the domain of vertex " + cfg.name(v));
  C total = C::zero();
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    total = total + instance.edge_cost(e, a[cfg.src(e)], a[cfg.dst(e)]);
  for (std::size_t v = 0; v < a.size(); ++v)
    total = total + instance.node(v, a[v]);
  return total;
}

namespace {

constexpr std::uint32_t kUnbound = UINT32_MAX;
using Key = std::array<std::uint32_t, 4>;

struct KeyHash {
  std::size_t operator()(const Key &k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t x : k) {
      h ^= x;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

// Series: a = left entry, b = right entry, x = middle value.
// Parallel: a, b = child entries.
// Loop: a = body entry, x/y/z = values of the body's T, C and B.
struct Choice {
  std::uint32_t a = 0, b = 0, x = 0, y = 0, z = 0;
};

template <class C> struct Entry {
  Key key;
  C cost;
  Choice choice;
};

template <class C> struct Table {
  unsigned mask = 0; // bit r set when special r has an incident edge in the subgraph
  std::vector<Entry<C>> entries;
};

template <class C> class Accumulator {
public:
  void offer(const Key &key, C cost, const Choice &choice) {
    if (cost.is_infinite())
      return;
    auto [it, fresh] = pos_.try_emplace(key, static_cast<std::uint32_t>(out_.size()));
    if (fresh)
      out_.push_back(Entry<C>{key, cost, choice});
    else if (cost < out_[it->second].cost)
      out_[it->second] = Entry<C>{key, cost, choice};
  }

  std::vector<Entry<C>> finish() {
    std::sort(out_.begin(), out_.end(), [](const Entry<C> &a, const Entry<C> &b) { return a.key < b.key; });
    return std::move(out_);
  }

private:
  std::unordered_map<Key, std::uint32_t, KeyHash> pos_;
  std::vector<Entry<C>> out_;
};

template <CostMonoid C> class Dp {
public:
  Dp(const PcspInstance<C> &inst, const SplDecomposition &d, SolveStats *stats)
      : inst_(inst), cfg_(*inst.cfg), d_(d), stats_(stats) {
    check_instance(inst);
    const SplGraph &g = d.graph();
    if (g.vertices().size() != cfg_.num_vertices() || g.edges().size() != cfg_.num_edges())
      throw Error("decomposition does not match the instance's CFG");
    for (VertexId v : g.vertices())
      if (!cfg_.find(v))
        throw Error("decomposition vertex " + std::to_string(v.value) + " is not in the instance's CFG");
    for (const Edge &e : g.edges()) {
      std::size_t k = cfg_.edge_index(e.id);
      if (cfg_.vertex(cfg_.src(k)) != e.src || cfg_.vertex(cfg_.dst(k)) != e.dst)
        throw Error("decomposition edge " + std::to_string(e.id.value) + " differs from the instance's CFG");
    }
    if (stats_)
      for (std::size_t s : inst.domain_size)
        stats_->max_domain = std::max(stats_->max_domain, s);
  }

  Solution<C> run() {
    const auto &nodes = d_.nodes();
    tables_.assign(nodes.size(), {});
    for (std::size_t i = nodes.size(); i-- > 0;) {
      work_ = 0;
      switch (nodes[i].kind) {
      case NodeKind::Atom:
        atom(i);
        break;
      case NodeKind::Series:
        series(i);
        break;
      case NodeKind::Parallel:
        parallel(i);
        break;
      case NodeKind::Loop:
        loop(i);
        break;
      }
      if (stats_) {
        stats_->total_work += work_;
        stats_->max_node_work = std::max(stats_->max_node_work, work_);
        stats_->table_entries += tables_[i].entries.size();
      }
    }
    return finish();
  }

private:
  std::size_t vtx(VertexId v) const { return cfg_.index_of(v); }
  std::size_t dom(std::size_t v) const { return inst_.domain_size[v]; }
  std::array<std::size_t, 4> specials(std::size_t i) const {
    const Specials &sp = d_.node(i).specials;
    return {vtx(sp.v[0]), vtx(sp.v[1]), vtx(sp.v[2]), vtx(sp.v[3])};
  }
  C edge(std::size_t e, std::size_t a, std::size_t b) const { return inst_.edge_cost(e, a, b); }
  C node(std::size_t v, std::size_t a) const { return inst_.node(v, a); }

  // Cheapest value for a vertex that no edge of the current subgraph touches.
  std::pair<C, std::uint32_t> free_min(std::size_t v) const {
    C best = C::infinity();
    std::uint32_t arg = 0;
    for (std::size_t a = 0; a < dom(v); ++a) {
      C c = node(v, a);
      if (c < best) {
        best = c;
        arg = static_cast<std::uint32_t>(a);
      }
    }
    return {best, arg};
  }

  void atom(std::size_t i) {
    const DecompNode &n = d_.node(i);
    auto sp = specials(i);
    int target = n.atom == AtomKind::Epsilon ? 1 : n.atom == AtomKind::Break ? 2 : 3;
    std::size_t e = cfg_.edge_index(n.edges[0]);
    Table<C> &t = tables_[i];
    t.mask = 1u | (1u << target);
    for (std::size_t a = 0; a < dom(sp[0]); ++a) {
      for (std::size_t b = 0; b < dom(sp[target]); ++b) {
        ++work_;
        C c = edge(e, a, b);
        if (c.is_infinite())
          continue;
        Key key{static_cast<std::uint32_t>(a), kUnbound, kUnbound, kUnbound};
        key[target] = static_cast<std::uint32_t>(b);
        t.entries.push_back(Entry<C>{key, c, {}});
      }
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const auto &x, const auto &y) { return x.key < y.key; });
  }

  // Calls f(left_index, right_index) for every pair of entries agreeing on the
  // given (left position, right position) pairs where both sides are bound.
  template <class F>
  void join(const Table<C> &left, const Table<C> &right, std::vector<std::pair<int, int>> pairs, F &&f) {
    std::erase_if(pairs, [&](auto p) { return !((left.mask >> p.first) & 1u) || !((right.mask >> p.second) & 1u); });
    auto project = [&](const Key &k, bool is_left) {
      Key out{0, 0, 0, 0};
      for (std::size_t j = 0; j < pairs.size(); ++j)
        out[j] = k[is_left ? pairs[j].first : pairs[j].second];
      return out;
    };
    std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> index;
    for (std::uint32_t r = 0; r < right.entries.size(); ++r)
      index[project(right.entries[r].key, false)].push_back(r);
    for (std::uint32_t l = 0; l < left.entries.size(); ++l) {
      auto it = index.find(project(left.entries[l].key, true));
      if (it == index.end())
        continue;
      for (std::uint32_t r : it->second) {
        ++work_;
        f(l, r);
      }
    }
  }

  void series(std::size_t i) {
    const DecompNode &n = d_.node(i);
    const Table<C> &left = tables_[static_cast<std::size_t>(n.first)];
    const Table<C> &right = tables_[static_cast<std::size_t>(n.second)];
    std::size_t mid = vtx(d_.node(static_cast<std::size_t>(n.first)).specials.t());
    bool mid_left = (left.mask >> 1) & 1u;
    Table<C> &t = tables_[i];
    t.mask = (left.mask & 1u) | (right.mask & 2u) | ((left.mask | right.mask) & 12u);
    Accumulator<C> acc;
    join(left, right, {{1, 0}, {2, 2}, {3, 3}}, [&](std::uint32_t li, std::uint32_t ri) {
      const Entry<C> &l = left.entries[li];
      const Entry<C> &r = right.entries[ri];
      std::uint32_t m = mid_left ? l.key[1] : r.key[0];
      Key key{l.key[0], r.key[1], l.key[2] != kUnbound ? l.key[2] : r.key[2],
              l.key[3] != kUnbound ? l.key[3] : r.key[3]};
      acc.offer(key, l.cost + r.cost + node(mid, m), Choice{li, ri, m, 0, 0});
    });
    t.entries = acc.finish();
  }

  void parallel(std::size_t i) {
    const DecompNode &n = d_.node(i);
    const Table<C> &left = tables_[static_cast<std::size_t>(n.first)];
    const Table<C> &right = tables_[static_cast<std::size_t>(n.second)];
    Table<C> &t = tables_[i];
    t.mask = left.mask | right.mask;
    Accumulator<C> acc;
    join(left, right, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}, [&](std::uint32_t li, std::uint32_t ri) {
      const Entry<C> &l = left.entries[li];
      const Entry<C> &r = right.entries[ri];
      Key key;
      for (int p = 0; p < 4; ++p)
        key[p] = l.key[p] != kUnbound ? l.key[p] : r.key[p];
      acc.offer(key, l.cost + r.cost, Choice{li, ri, 0, 0, 0});
    });
    t.entries = acc.finish();
  }

  // The five loop edges are priced with independently chosen endpoint
  // values. For each head value s the body is first reduced to a function of
  // its break vertex's value, then the exit value is chosen.
  void loop(std::size_t i) {
    const DecompNode &n = d_.node(i);
    const std::size_t body_index = static_cast<std::size_t>(n.first);
    const Table<C> &body = tables_[body_index];
    auto sp = specials(i);
    auto in = specials(body_index);
    const std::size_t s_v = sp[0], t_v = sp[1], s1 = in[0], t1 = in[1], b1 = in[2], c1 = in[3];
    const std::size_t e_enter = cfg_.edge_index(n.edges[0]);
    const std::size_t e_exit = cfg_.edge_index(n.edges[1]);
    const std::size_t e_back = cfg_.edge_index(n.edges[2]);
    const std::size_t e_cont = cfg_.edge_index(n.edges[3]);
    const std::size_t e_brk = cfg_.edge_index(n.edges[4]);
    const bool t1_bound = (body.mask >> 1) & 1u;
    const bool b1_bound = (body.mask >> 2) & 1u;
    const bool c1_bound = (body.mask >> 3) & 1u;

    Table<C> &t = tables_[i];
    t.mask = 3u;
    Accumulator<C> acc;

    struct Arg {
      std::uint32_t entry = 0, t1 = 0, c1 = 0;
    };
    std::vector<C> g(dom(b1));
    std::vector<Arg> garg(dom(b1));

    // Best value of a body special that only loop edges into the head touch.
    auto detached = [&](std::size_t v, std::size_t e, std::size_t s) {
      C best = C::infinity();
      std::uint32_t arg = 0;
      for (std::size_t a = 0; a < dom(v); ++a) {
        ++work_;
        C c = edge(e, a, s) + node(v, a);
        if (c < best) {
          best = c;
          arg = static_cast<std::uint32_t>(a);
        }
      }
      return std::make_pair(best, arg);
    };

    for (std::size_t s = 0; s < dom(s_v); ++s) {
      std::fill(g.begin(), g.end(), C::infinity());
      auto t1_free = t1_bound ? std::make_pair(C::zero(), 0u) : detached(t1, e_back, s);
      auto c1_free = c1_bound ? std::make_pair(C::zero(), 0u) : detached(c1, e_cont, s);
      C best = C::infinity();
      Arg best_arg;
      for (std::uint32_t k = 0; k < body.entries.size(); ++k) {
        ++work_;
        const Entry<C> &en = body.entries[k];
        C c = en.cost + edge(e_enter, s, en.key[0]) + node(s1, en.key[0]);
        Arg arg{k, t1_free.second, c1_free.second};
        if (t1_bound) {
          arg.t1 = en.key[1];
          c = c + edge(e_back, en.key[1], s) + node(t1, en.key[1]);
        } else {
          c = c + t1_free.first;
        }
        if (c1_bound) {
          arg.c1 = en.key[3];
          c = c + edge(e_cont, en.key[3], s) + node(c1, en.key[3]);
        } else {
          c = c + c1_free.first;
        }
        if (b1_bound) {
          if (c < g[en.key[2]]) {
            g[en.key[2]] = c;
            garg[en.key[2]] = arg;
          }
        } else if (c < best) {
          best = c;
          best_arg = arg;
        }
      }
      if (!b1_bound) {
        std::fill(g.begin(), g.end(), best);
        std::fill(garg.begin(), garg.end(), best_arg);
      }
      for (std::size_t tv = 0; tv < dom(t_v); ++tv) {
        C exit_cost = edge(e_exit, s, tv);
        if (exit_cost.is_infinite())
          continue;
        C best_t = C::infinity();
        std::uint32_t best_b = 0;
        for (std::size_t b = 0; b < g.size(); ++b) {
          ++work_;
          if (g[b].is_infinite())
            continue;
          C c = g[b] + edge(e_brk, b, tv) + node(b1, b);
          if (c < best_t) {
            best_t = c;
            best_b = static_cast<std::uint32_t>(b);
          }
        }
        if (best_t.is_infinite())
          continue;
        const Arg &a = garg[best_b];
        acc.offer(Key{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(tv), kUnbound, kUnbound},
                  best_t + exit_cost, Choice{a.entry, 0, a.t1, a.c1, best_b});
      }
    }
    t.entries = acc.finish();
  }

  Solution<C> finish() {
    Solution<C> sol;
    const Table<C> &root = tables_[0];
    auto sp = specials(0);
    std::array<std::pair<C, std::uint32_t>, 4> free;
    for (int p = 0; p < 4; ++p)
      if (!((root.mask >> p) & 1u))
        free[p] = free_min(sp[p]);
    std::uint32_t best_entry = 0;
    C best = C::infinity();
    for (std::uint32_t k = 0; k < root.entries.size(); ++k) {
      const Entry<C> &en = root.entries[k];
      C c = en.cost;
      for (int p = 0; p < 4; ++p)
        c = c + ((root.mask >> p) & 1u ? node(sp[p], en.key[p]) : free[p].first);
      if (c < best) {
        best = c;
        best_entry = k;
      }
    }
    if (best.is_infinite())
      return sol;
    sol.cost = best;

    Assignment &a = sol.assignment;
    a.assign(cfg_.num_vertices(), SIZE_MAX);
    const Key &root_key = root.entries[best_entry].key;
    for (int p = 0; p < 4; ++p)
      a[sp[p]] = (root.mask >> p) & 1u ? root_key[p] : free[p].second;

    const auto &nodes = d_.nodes();
    std::vector<std::uint32_t> chosen(nodes.size(), 0);
    chosen[0] = best_entry;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const DecompNode &n = nodes[i];
      const Choice &ch = tables_[i].entries[chosen[i]].choice;
      switch (n.kind) {
      case NodeKind::Atom:
        break;
      case NodeKind::Series:
        chosen[static_cast<std::size_t>(n.first)] = ch.a;
        chosen[static_cast<std::size_t>(n.second)] = ch.b;
        a[vtx(nodes[static_cast<std::size_t>(n.first)].specials.t())] = ch.x;
        break;
      case NodeKind::Parallel:
        chosen[static_cast<std::size_t>(n.first)] = ch.a;
        chosen[static_cast<std::size_t>(n.second)] = ch.b;
        break;
      case NodeKind::Loop: {
        std::size_t body = static_cast<std::size_t>(n.first);
        chosen[body] = ch.a;
        auto in = specials(body);
        a[in[0]] = tables_[body].entries[ch.a].key[0];
        a[in[1]] = ch.x;
        a[in[3]] = ch.y;
        a[in[2]] = ch.z;
        break;
      }
      }
    }
    for (std::size_t v = 0; v < a.size(); ++v)
      if (a[v] == SIZE_MAX)
        throw Error("internal error: vertex " + cfg_.name(v) + " left unassigned");
    return sol;
  }

  const PcspInstance<C> &inst_;
  const Cfg &cfg_;
  const SplDecomposition &d_;
  SolveStats *stats_;
  std::vector<Table<C>> tables_;
  std::size_t work_ = 0;
};

} // namespace

template <CostMonoid C> Solution<C> solve(const PcspInstance<C> &instance, const SplDecomposition &d, SolveStats *stats) {
  Dp<C> dp(instance, d, stats);
  return dp.run();
}

template Solution<IntCost> solve(const PcspInstance<IntCost> &, const SplDecomposition &, SolveStats *);
template Solution<Lex2Cost> solve(const PcspInstance<Lex2Cost> &, const SplDecomposition &, SolveStats *);
template IntCost eval_cost(const PcspInstance<IntCost> &, const Assignment &);
template Lex2Cost eval_cost(const PcspInstance<Lex2Cost> &, const Assignment &);
template void check_instance(const PcspInstance<IntCost> &);
template void check_instance(const PcspInstance<Lex2Cost> &);

std::string to_string(IntCost c) { return c.is_infinite() ? "inf" : std::to_string(c.value); }

std::string to_string(Lex2Cost c) {
  return c.is_infinite() ? "inf" : "(" + std::to_string(c.first) + ", " + std::to_string(c.second) + ")";
}

} // namespace splopt
