#include "splopt/decompose.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace splopt {

SplDecomposition::SplDecomposition(std::vector<DecompNode> nodes, SplGraph graph,
                                   std::unordered_map<VertexId, std::string> names)
    : nodes_(std::move(nodes)), graph_(std::move(graph)), names_(std::move(names)) {
  if (nodes_.empty())
    throw Error("decomposition has no nodes");
  if (nodes_.front().specials != graph_.specials())
    throw Error("decomposition root specials differ from the graph's");
}

SplGraph SplDecomposition::graph_of(std::size_t i) const {
  if (i == 0)
    return graph_;
  std::unordered_map<EdgeId, std::size_t> position;
  for (std::size_t k = 0; k < graph_.edges().size(); ++k)
    position.emplace(graph_.edges()[k].id, k);
  std::set<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<std::size_t> stack{i};
  while (!stack.empty()) {
    const DecompNode &n = nodes_[stack.back()];
    stack.pop_back();
    vertices.insert(n.specials.v.begin(), n.specials.v.end());
    for (EdgeId id : n.edges)
      edges.push_back(graph_.edges()[position.at(id)]);
    if (n.first >= 0)
      stack.push_back(static_cast<std::size_t>(n.first));
    if (n.second >= 0)
      stack.push_back(static_cast<std::size_t>(n.second));
  }
  std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) { return a.id < b.id; });
  return SplGraph({vertices.begin(), vertices.end()}, std::move(edges), nodes_[i].specials);
}

void SplDecomposition::validate() const {
  auto fail = [](std::size_t i, const std::string &what) {
    throw Error("decomposition node " + std::to_string(i) + ": " + what);
  };
  std::unordered_map<EdgeId, const Edge *> edge_by_id;
  for (const Edge &e : graph_.edges())
    edge_by_id.emplace(e.id, &e);
  std::unordered_set<EdgeId> owned;
  std::unordered_set<VertexId> introduced;
  auto introduce = [&](std::size_t i, VertexId v) {
    if (!graph_.contains(v))
      fail(i, "vertex " + std::to_string(v.value) + " is not in the graph");
    if (!introduced.insert(v).second)
      fail(i, "vertex " + std::to_string(v.value) + " is introduced twice");
  };
  auto own_edge = [&](std::size_t i, EdgeId id, VertexId src, VertexId dst) {
    auto it = edge_by_id.find(id);
    if (it == edge_by_id.end())
      fail(i, "edge " + std::to_string(id.value) + " is not in the graph");
    if (!owned.insert(id).second)
      fail(i, "edge " + std::to_string(id.value) + " is owned twice");
    if (it->second->src != src || it->second->dst != dst)
      fail(i, "edge " + std::to_string(id.value) + " has the wrong endpoints");
  };
  auto child = [&](std::size_t i, int c) -> const DecompNode & {
    if (c <= static_cast<int>(i) || c >= static_cast<int>(nodes_.size()))
      fail(i, "child index out of order");
    return nodes_[static_cast<std::size_t>(c)];
  };

  for (VertexId v : nodes_[0].specials.v)
    introduce(0, v);
  std::vector<int> parents(nodes_.size(), -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const DecompNode &n = nodes_[i];
    if (i > 0 && parents[i] < 0)
      fail(i, "node is unreachable from the root");
    const Specials &sp = n.specials;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < a; ++b)
        if (sp.v[a] == sp.v[b])
          fail(i, "special vertices are not distinct");
    auto adopt = [&](int c) {
      const DecompNode &ch = child(i, c);
      if (parents[static_cast<std::size_t>(c)] >= 0)
        fail(i, "child has two parents");
      parents[static_cast<std::size_t>(c)] = static_cast<int>(i);
      return std::cref(ch);
    };
    switch (n.kind) {
    case NodeKind::Atom: {
      if (n.first >= 0 || n.second >= 0 || n.edges.size() != 1)
        fail(i, "an atom has no children and exactly one edge");
      VertexId target = n.atom == AtomKind::Epsilon ? sp.t() : n.atom == AtomKind::Break ? sp.b() : sp.c();
      own_edge(i, n.edges[0], sp.s(), target);
      break;
    }
    case NodeKind::Series: {
      if (n.first < 0 || n.second < 0 || !n.edges.empty())
        fail(i, "a series node has two children and no own edges");
      const Specials &a = adopt(n.first).get().specials;
      const Specials &b = adopt(n.second).get().specials;
      if (a.s() != sp.s() || b.t() != sp.t() || a.t() != b.s() || a.b() != sp.b() || b.b() != sp.b() ||
          a.c() != sp.c() || b.c() != sp.c())
        fail(i, "series children do not compose to the node's specials");
      introduce(i, a.t());
      break;
    }
    case NodeKind::Parallel: {
      if (n.first < 0 || n.second < 0 || !n.edges.empty())
        fail(i, "a parallel node has two children and no own edges");
      if (adopt(n.first).get().specials != sp || adopt(n.second).get().specials != sp)
        fail(i, "parallel children do not share the node's specials");
      break;
    }
    case NodeKind::Loop: {
      if (n.first < 0 || n.second >= 0 || n.edges.size() != 5)
        fail(i, "a loop node has one child and five own edges");
      const Specials &in = adopt(n.first).get().specials;
      for (VertexId v : in.v)
        introduce(i, v);
      own_edge(i, n.edges[0], sp.s(), in.s());
      own_edge(i, n.edges[1], sp.s(), sp.t());
      own_edge(i, n.edges[2], in.t(), sp.s());
      own_edge(i, n.edges[3], in.c(), sp.s());
      own_edge(i, n.edges[4], in.b(), sp.t());
      break;
    }
    }
  }
  if (introduced.size() != graph_.vertices().size())
    throw Error("decomposition does not cover every vertex of the graph");
  if (owned.size() != graph_.edges().size())
    throw Error("decomposition does not cover every edge of the graph");
}

// ---------------------------------------------------------------------------
// Programs to decompositions

SplDecomposition decompose(const Stmt &program, DecomposeStats *stats) {
  IdSource ids;
  std::vector<DecompNode> nodes;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  nodes.reserve(program.counts.statements);
  vertices.reserve(4 + program.counts.seqs + 4 * std::size_t{program.counts.loops});
  edges.reserve(program.counts.statements + 5 * std::size_t{program.counts.loops});

  struct Task {
    const Stmt *stmt;
    Specials specials;
    GuardList guards; // go on the first edge of this subgraph
    int parent;
    bool second;
    bool in_loop;
  };

  Specials root{{ids.vertex(), ids.vertex(), ids.vertex(), ids.vertex()}};
  vertices.assign(root.v.begin(), root.v.end());
  std::vector<Task> stack;
  stack.push_back(Task{&program, root, {}, -1, false, false});

  auto add_edge = [&](VertexId src, VertexId dst, Payload payload) {
    EdgeId id = ids.edge();
    edges.push_back(Edge{id, src, dst, std::move(payload)});
    return id;
  };

  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const Stmt &s = *task.stmt;
    if (stats)
      ++stats->steps;
    int index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (task.parent >= 0) {
      DecompNode &p = nodes[static_cast<std::size_t>(task.parent)];
      (task.second ? p.second : p.first) = index;
    }
    DecompNode &node = nodes.back();
    node.specials = task.specials;
    const Specials sp = task.specials;

    switch (s.kind) {
    case Stmt::Kind::Skip:
    case Stmt::Kind::Assign:
    case Stmt::Kind::Break:
    case Stmt::Kind::Continue: {
      node.kind = NodeKind::Atom;
      Payload payload;
      VertexId target = sp.t();
      if (s.kind == Stmt::Kind::Skip) {
        payload = Payload::skip();
      } else if (s.kind == Stmt::Kind::Assign) {
        payload = Payload::assign(s.var, s.expr);
      } else if (!task.in_loop) {
        // Tasks are taken in source order, so this is the first offender.
        throw Error(std::string(s.kind == Stmt::Kind::Break ? "break" : "continue") + " outside of a loop at " +
                    std::to_string(s.loc.line) + ":" + std::to_string(s.loc.column));
      } else if (s.kind == Stmt::Kind::Break) {
        node.atom = AtomKind::Break;
        payload = Payload::of(Payload::Action::Break);
        target = sp.b();
      } else {
        node.atom = AtomKind::Continue;
        payload = Payload::of(Payload::Action::Continue);
        target = sp.c();
      }
      payload.guards = std::move(task.guards);
      node.edges.push_back(add_edge(sp.s(), target, std::move(payload)));
      break;
    }
    case Stmt::Kind::Seq: {
      node.kind = NodeKind::Series;
      VertexId m = ids.vertex();
      vertices.push_back(m);
      stack.push_back(Task{s.second.get(), Specials{{m, sp.t(), sp.b(), sp.c()}}, {}, index, true, task.in_loop});
      stack.push_back(
          Task{s.first.get(), Specials{{sp.s(), m, sp.b(), sp.c()}}, std::move(task.guards), index, false, task.in_loop});
      break;
    }
    case Stmt::Kind::If: {
      node.kind = NodeKind::Parallel;
      GuardList then_guards = task.guards;
      then_guards.push_back(Guard{s.cond, false, Guard::Origin::If});
      GuardList else_guards = std::move(task.guards);
      else_guards.push_back(Guard{s.cond, true, Guard::Origin::If});
      stack.push_back(Task{s.second.get(), sp, std::move(else_guards), index, true, task.in_loop});
      stack.push_back(Task{s.first.get(), sp, std::move(then_guards), index, false, task.in_loop});
      break;
    }
    case Stmt::Kind::While: {
      node.kind = NodeKind::Loop;
      Specials in{{ids.vertex(), ids.vertex(), ids.vertex(), ids.vertex()}};
      vertices.insert(vertices.end(), in.v.begin(), in.v.end());
      LoopPayloads lp;
      lp.enter.guards = task.guards;
      lp.enter.guards.push_back(Guard{s.cond, false, Guard::Origin::While});
      lp.exit.guards.push_back(Guard{s.cond, true, Guard::Origin::While});
      node.edges.push_back(add_edge(sp.s(), in.s(), std::move(lp.enter)));
      node.edges.push_back(add_edge(sp.s(), sp.t(), std::move(lp.exit)));
      node.edges.push_back(add_edge(in.t(), sp.s(), std::move(lp.loopback)));
      node.edges.push_back(add_edge(in.c(), sp.s(), std::move(lp.continue_dispatch)));
      node.edges.push_back(add_edge(in.b(), sp.t(), std::move(lp.break_dispatch)));
      stack.push_back(Task{s.first.get(), in, {}, index, false, true});
      break;
    }
    }
  }

  std::unordered_map<VertexId, std::string> names{
      {root.s(), "S"}, {root.t(), "T"}, {root.b(), "B"}, {root.c(), "C"}};
  // Fresh ids are handed out in increasing order, so `vertices` is sorted.
  SplGraph graph(SplGraph::Unchecked{}, std::move(vertices), std::move(edges), root);
  return SplDecomposition(std::move(nodes), std::move(graph), std::move(names));
}

// ---------------------------------------------------------------------------
// Cfg

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
std::size_t dense_limit(std::size_t count) { return 4 * count + 1024; }
} // namespace

Cfg::Cfg(SplGraph graph, const std::unordered_map<VertexId, std::string> &names)
    : graph_(std::move(graph)), vertices_(graph_.vertices()) {
  const std::size_t n = vertices_.size();
  const auto &edges = graph_.edges();
  names_.resize(n);
  out_.resize(n);
  in_.resize(n);
  if (n > 0 && vertices_.back().value <= dense_limit(n))
    index_.assign(std::size_t{vertices_.back().value} + 1, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    if (index_.empty())
      sparse_index_.emplace(vertices_[i], i);
    else
      index_[vertices_[i].value] = i;
    auto it = names.find(vertices_[i]);
    names_[i] = it != names.end() ? it->second : "v" + std::to_string(vertices_[i].value);
  }
  std::uint32_t max_edge = 0;
  for (const Edge &e : edges)
    max_edge = std::max(max_edge, e.id.value);
  if (!edges.empty() && max_edge <= dense_limit(edges.size()))
    edge_index_.assign(std::size_t{max_edge} + 1, kNone);
  edge_src_.resize(edges.size());
  edge_dst_.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edge_index_.empty())
      sparse_edge_index_.emplace(edges[e].id, e);
    else
      edge_index_[edges[e].id.value] = e;
    edge_src_[e] = index_of(edges[e].src);
    edge_dst_[e] = index_of(edges[e].dst);
    out_[edge_src_[e]].push_back(e);
    in_[edge_dst_[e]].push_back(e);
  }
}

std::size_t Cfg::index_of(VertexId v) const {
  if (auto i = find(v))
    return *i;
  throw Error("vertex " + std::to_string(v.value) + " is not in the CFG");
}

std::optional<std::size_t> Cfg::find(VertexId v) const {
  if (index_.empty()) {
    auto it = sparse_index_.find(v);
    if (it == sparse_index_.end())
      return std::nullopt;
    return it->second;
  }
  if (v.value >= index_.size() || index_[v.value] == kNone)
    return std::nullopt;
  return index_[v.value];
}

std::optional<std::size_t> Cfg::find_by_name(const std::string &name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return i;
  return std::nullopt;
}

std::size_t Cfg::edge_index(EdgeId id) const {
  if (edge_index_.empty()) {
    auto it = sparse_edge_index_.find(id);
    if (it != sparse_edge_index_.end())
      return it->second;
  } else if (id.value < edge_index_.size() && edge_index_[id.value] != kNone) {
    return edge_index_[id.value];
  }
  throw Error("edge " + std::to_string(id.value) + " is not in the CFG");
}

std::shared_ptr<const Cfg> cfg_of(const SplDecomposition &d) {
  return std::make_shared<const Cfg>(d.graph(), d.names());
}

// ---------------------------------------------------------------------------
// Recognition of SPL graphs given without a program

namespace {

struct RNode {
  NodeKind kind = NodeKind::Atom;
  AtomKind atom = AtomKind::Epsilon;
  Specials specials;
  std::vector<EdgeId> edges;
  std::unique_ptr<RNode> first;
  std::unique_ptr<RNode> second;
};

class Recognizer {
public:
  Recognizer(const SplGraph &g, std::size_t budget) : g_(g), budget_(budget) {}

  std::unique_ptr<RNode> run() {
    std::vector<std::size_t> all(g_.edges().size());
    std::iota(all.begin(), all.end(), 0);
    // Every vertex must be a special or an edge endpoint.
    std::unordered_set<VertexId> touched(g_.specials().v.begin(), g_.specials().v.end());
    for (const Edge &e : g_.edges()) {
      touched.insert(e.src);
      touched.insert(e.dst);
    }
    if (touched.size() != g_.vertices().size())
      return nullptr;
    return solve(all, g_.specials());
  }

private:
  using EdgeSet = std::vector<std::size_t>; // sorted indices into g_.edges()

  const Edge &edge(std::size_t i) const { return g_.edges()[i]; }

  static bool is_special(const Specials &sp, VertexId v) {
    return std::find(sp.v.begin(), sp.v.end(), v) != sp.v.end();
  }

  std::unique_ptr<RNode> solve(const EdgeSet &es, const Specials &sp) {
    if (es.empty() || budget_ == 0)
      return nullptr;
    // T, B and C are sinks in every SPL graph, and each loop headed at S
    // adds two edges into S.
    std::size_t into_s = 0;
    for (std::size_t id : es) {
      const Edge &e = edge(id);
      if (e.src == sp.t() || e.src == sp.b() || e.src == sp.c())
        return nullptr;
      into_s += e.dst == sp.s();
    }
    if (into_s % 2 != 0)
      return nullptr;
    --budget_;
    auto key = std::make_pair(es, sp.v);
    if (failed_.count(key))
      return nullptr;
    std::unique_ptr<RNode> result;
    if (es.size() == 1)
      result = atom(es[0], sp);
    if (!result)
      result = as_loop(es, sp);
    if (!result)
      result = as_series(es, sp);
    if (!result)
      result = as_parallel(es, sp);
    if (!result)
      failed_.insert(std::move(key));
    return result;
  }

  std::unique_ptr<RNode> atom(std::size_t ei, const Specials &sp) {
    const Edge &e = edge(ei);
    if (e.src != sp.s())
      return nullptr;
    auto node = std::make_unique<RNode>();
    node->specials = sp;
    node->edges.push_back(e.id);
    if (e.dst == sp.t())
      node->atom = AtomKind::Epsilon;
    else if (e.dst == sp.b())
      node->atom = AtomKind::Break;
    else if (e.dst == sp.c())
      node->atom = AtomKind::Continue;
    else
      return nullptr;
    return node;
  }

  std::unique_ptr<RNode> as_loop(const EdgeSet &es, const Specials &sp) {
    std::vector<std::size_t> s_out, s_in, t_in;
    for (std::size_t i : es) {
      const Edge &e = edge(i);
      if (e.src == sp.b() || e.dst == sp.b() || e.src == sp.c() || e.dst == sp.c() || e.src == sp.t())
        return nullptr;
      if (e.src == sp.s())
        s_out.push_back(i);
      if (e.dst == sp.s())
        s_in.push_back(i);
      if (e.dst == sp.t())
        t_in.push_back(i);
    }
    if (s_out.size() != 2 || s_in.size() != 2 || t_in.size() != 2)
      return nullptr;
    if (edge(s_out[0]).dst != sp.t())
      std::swap(s_out[0], s_out[1]);
    std::size_t exit = s_out[0], enter = s_out[1];
    if (edge(exit).dst != sp.t() || edge(enter).dst == sp.t())
      return nullptr;
    std::size_t brk = t_in[0] == exit ? t_in[1] : t_in[0];
    if (brk == exit || edge(brk).src == sp.s())
      return nullptr;
    for (int order = 0; order < 2; ++order) {
      std::size_t back = s_in[order], cont = s_in[1 - order];
      Specials in{{edge(enter).dst, edge(back).src, edge(brk).src, edge(cont).src}};
      bool distinct = true;
      for (int a = 0; a < 4; ++a) {
        if (is_special(sp, in.v[a]))
          distinct = false;
        for (int b = 0; b < a; ++b)
          distinct = distinct && in.v[a] != in.v[b];
      }
      if (!distinct)
        continue;
      EdgeSet body;
      for (std::size_t i : es)
        if (i != enter && i != exit && i != back && i != cont && i != brk)
          body.push_back(i);
      bool leaks = false;
      for (std::size_t i : body)
        leaks = leaks || is_special(sp, edge(i).src) || is_special(sp, edge(i).dst);
      if (leaks || body.empty())
        continue;
      if (auto child = solve(body, in)) {
        auto node = std::make_unique<RNode>();
        node->kind = NodeKind::Loop;
        node->specials = sp;
        node->edges = {edge(enter).id, edge(exit).id, edge(back).id, edge(cont).id, edge(brk).id};
        node->first = std::move(child);
        return node;
      }
    }
    return nullptr;
  }

  // Groups the edges of `es` into classes connected through vertices that are
  // neither special nor in `extra_cut`.
  std::vector<EdgeSet> groups(const EdgeSet &es, const Specials &sp, std::optional<VertexId> extra_cut) const {
    std::unordered_map<VertexId, std::size_t> owner;
    std::vector<std::size_t> parent(es.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t k = 0; k < es.size(); ++k) {
      for (VertexId v : {edge(es[k]).src, edge(es[k]).dst}) {
        if (is_special(sp, v) || (extra_cut && v == *extra_cut))
          continue;
        auto [it, fresh] = owner.emplace(v, k);
        if (!fresh)
          parent[find(k)] = find(it->second);
      }
    }
    std::map<std::size_t, EdgeSet> by_root;
    for (std::size_t k = 0; k < es.size(); ++k)
      by_root[find(k)].push_back(es[k]);
    std::vector<EdgeSet> out;
    for (auto &[root, members] : by_root)
      out.push_back(std::move(members));
    return out;
  }

  // Visits count vectors c with c[k] <= sizes[k] by increasing total until
  // `visit` returns true.
  static bool for_each_count(const std::vector<std::size_t> &sizes,
                             const std::function<bool(const std::vector<std::size_t> &)> &visit) {
    std::size_t sum = 0;
    for (std::size_t n : sizes)
      sum += n;
    std::vector<std::size_t> c(sizes.size(), 0);
    std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t k, std::size_t left) {
      if (k == sizes.size())
        return left == 0 && visit(c);
      for (std::size_t n = 0; n <= std::min(left, sizes[k]); ++n) {
        c[k] = n;
        if (fill(k + 1, left - n))
          return true;
      }
      c[k] = 0;
      return false;
    };
    for (std::size_t total = 0; total <= sum; ++total)
      if (fill(0, total))
        return true;
    return false;
  }

  // Groups that could go to either operand. A single edge from an otherwise
  // unused vertex (a dispatch edge, or dead code after a jump) is
  // interchangeable with any other such edge into the same vertex, so these
  // are pooled by target and only counted. Larger groups are few and are
  // enumerated as subsets.
  struct Floating {
    std::vector<std::vector<std::size_t>> pools; // group indices by target
    std::vector<VertexId> targets;
    std::vector<std::size_t> others;             // group indices
  };

  Floating floating(const std::vector<EdgeSet> &grps, const std::vector<std::size_t> &candidates,
                    const Specials &sp, std::optional<VertexId> cut) const {
    Floating f;
    for (std::size_t g : candidates) {
      const Edge &e = edge(grps[g][0]);
      bool lone = grps[g].size() == 1 && !is_special(sp, e.src) && (!cut || e.src != *cut);
      if (!lone) {
        f.others.push_back(g);
        continue;
      }
      auto it = std::find(f.targets.begin(), f.targets.end(), e.dst);
      if (it == f.targets.end()) {
        f.targets.push_back(e.dst);
        f.pools.emplace_back();
        it = f.targets.end() - 1;
      }
      f.pools[static_cast<std::size_t>(it - f.targets.begin())].push_back(g);
    }
    return f;
  }

  // Calls `visit` with the groups sent to the first operand, over every
  // subset of `f.others` and every count from each pool.
  static bool for_each_split(const Floating &f, const std::function<bool(const std::vector<std::size_t> &)> &visit) {
    if (f.others.size() > 6)
      return false;
    std::vector<std::size_t> sizes;
    for (const auto &pool : f.pools)
      sizes.push_back(pool.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << f.others.size()); ++mask) {
      std::vector<std::size_t> chosen;
      for (std::size_t k = 0; k < f.others.size(); ++k)
        if ((mask >> k) & 1)
          chosen.push_back(f.others[k]);
      bool done = for_each_count(sizes, [&](const std::vector<std::size_t> &counts) {
        std::vector<std::size_t> side = chosen;
        for (std::size_t k = 0; k < counts.size(); ++k)
          side.insert(side.end(), f.pools[k].begin(), f.pools[k].begin() + static_cast<long>(counts[k]));
        return visit(side);
      });
      if (done)
        return true;
    }
    return false;
  }

  std::unique_ptr<RNode> as_series(const EdgeSet &es, const Specials &sp) {
    // The middle vertex is an internal vertex with an outgoing edge.
    std::vector<VertexId> candidates;
    std::unordered_set<VertexId> seen;
    for (std::size_t i : es) {
      VertexId v = edge(i).src;
      if (!is_special(sp, v) && seen.insert(v).second)
        candidates.push_back(v);
    }
    std::unordered_map<VertexId, std::vector<VertexId>> succ;
    for (std::size_t i : es)
      succ[edge(i).src].push_back(edge(i).dst);
    // Vertices reachable from `from` without passing through `stop`, B or C.
    auto reach = [&](VertexId from, VertexId stop) {
      std::unordered_set<VertexId> out{from};
      std::vector<VertexId> work{from};
      while (!work.empty()) {
        VertexId v = work.back();
        work.pop_back();
        if (v == stop || v == sp.b() || v == sp.c())
          continue;
        for (VertexId w : succ[v])
          if (out.insert(w).second)
            work.push_back(w);
      }
      return out;
    };
    for (VertexId m : candidates) {
      // Every path from S to T passes the middle vertex, and nothing after it
      // leads back before it.
      auto before = reach(sp.s(), m);
      if (before.count(sp.t()))
        continue;
      auto after = reach(m, sp.s());
      bool crossing = false;
      for (VertexId v : after)
        crossing = crossing || (v != m && v != sp.b() && v != sp.c() && before.count(v));
      if (crossing || after.count(sp.s()))
        continue;
      std::vector<EdgeSet> grps = groups(es, sp, m);
      std::vector<char> fixed_right(grps.size(), 0);
      std::vector<std::size_t> left_fixed, either;
      bool ok = true;
      for (std::size_t g = 0; g < grps.size() && ok; ++g) {
        bool touches_s = false, to_right = false;
        for (std::size_t i : grps[g]) {
          const Edge &e = edge(i);
          touches_s = touches_s || e.dst == sp.s() || (e.src != m && before.count(e.src));
          to_right = to_right || e.dst == sp.t() || after.count(e.src);
        }
        ok = !(touches_s && to_right);
        if (touches_s)
          left_fixed.push_back(g);
        else if (!to_right)
          either.push_back(g);
      }
      if (!ok || left_fixed.empty())
        continue;
      std::unique_ptr<RNode> found;
      for_each_split(floating(grps, either, sp, m), [&](const std::vector<std::size_t> &extra) {
        std::vector<char> in_left(grps.size(), 0);
        for (std::size_t g : left_fixed)
          in_left[g] = 1;
        for (std::size_t g : extra)
          in_left[g] = 1;
        EdgeSet l, r;
        for (std::size_t g = 0; g < grps.size(); ++g)
          (in_left[g] ? l : r).insert((in_left[g] ? l : r).end(), grps[g].begin(), grps[g].end());
        if (r.empty())
          return false;
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        auto a = solve(l, Specials{{sp.s(), m, sp.b(), sp.c()}});
        if (!a)
          return false;
        auto b = solve(r, Specials{{m, sp.t(), sp.b(), sp.c()}});
        if (!b)
          return false;
        found = std::make_unique<RNode>();
        found->kind = NodeKind::Series;
        found->specials = sp;
        found->first = std::move(a);
        found->second = std::move(b);
        return true;
      });
      if (found)
        return found;
    }
    return nullptr;
  }

  std::unique_ptr<RNode> as_parallel(const EdgeSet &es, const Specials &sp) {
    std::vector<EdgeSet> grps = groups(es, sp, std::nullopt);
    if (grps.size() < 2)
      return nullptr;
    // Every nonempty operand has an edge out of S. Groups without one
    // cannot stand alone and float to whichever operand needs them; direct
    // S->T edges are pooled like them since loop exits are interchangeable.
    std::vector<std::size_t> mains, loose;
    for (std::size_t g = 0; g < grps.size(); ++g) {
      bool from_s = false;
      for (std::size_t i : grps[g])
        from_s = from_s || edge(i).src == sp.s();
      bool direct = grps[g].size() == 1 && edge(grps[g][0]).src == sp.s() && edge(grps[g][0]).dst == sp.t();
      (from_s && !direct ? mains : loose).push_back(g);
    }
    std::vector<std::size_t> directs;
    std::vector<std::size_t> rest;
    for (std::size_t g : loose)
      (edge(grps[g][0]).src == sp.s() ? directs : rest).push_back(g);
    Floating f = floating(grps, rest, sp, std::nullopt);
    f.targets.push_back(sp.t());
    f.pools.push_back(directs);

    auto attempt = [&](const std::vector<std::size_t> &side) -> std::unique_ptr<RNode> {
      EdgeSet left, right;
      std::vector<char> in_left(grps.size(), 0);
      for (std::size_t g : side)
        in_left[g] = 1;
      for (std::size_t g = 0; g < grps.size(); ++g) {
        EdgeSet &dst = in_left[g] ? left : right;
        dst.insert(dst.end(), grps[g].begin(), grps[g].end());
      }
      if (left.empty() || right.empty())
        return nullptr;
      // Edges into S come in pairs, one pair per loop headed at S.
      std::size_t into_s = 0;
      for (std::size_t i : left)
        into_s += edge(i).dst == sp.s();
      if (into_s % 2 != 0)
        return nullptr;
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      auto a = solve(left, sp);
      if (!a)
        return nullptr;
      auto b = solve(right, sp);
      if (!b)
        return nullptr;
      auto node = std::make_unique<RNode>();
      node->kind = NodeKind::Parallel;
      node->specials = sp;
      node->first = std::move(a);
      node->second = std::move(b);
      return node;
    };
    // A lone direct edge is an epsilon operand.
    if (!directs.empty())
      if (auto node = attempt({directs.front()}))
        return node;
    if (mains.empty())
      return nullptr;
    // Operands are interchangeable, so the first main group goes left. A
    // loop without a break splits into a body group and an exit group, so
    // an operand may need several main groups; beyond a dozen groups only
    // pairs are tried.
    std::vector<std::vector<std::size_t>> extra_sets;
    std::size_t others = mains.size() - 1;
    if (others <= 12) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << others); ++mask) {
        std::vector<std::size_t> set;
        for (std::size_t k = 0; k < others; ++k)
          if ((mask >> k) & 1)
            set.push_back(mains[k + 1]);
        extra_sets.push_back(std::move(set));
      }
      std::stable_sort(extra_sets.begin(), extra_sets.end(),
                       [](const auto &a, const auto &b) { return a.size() < b.size(); });
    } else {
      extra_sets.push_back({});
      for (std::size_t k = 1; k < mains.size(); ++k)
        extra_sets.push_back({mains[k]});
    }
    for (const auto &extra : extra_sets) {
      std::unique_ptr<RNode> found;
      for_each_split(f, [&](const std::vector<std::size_t> &floating_side) {
        std::vector<std::size_t> side{mains[0]};
        side.insert(side.end(), extra.begin(), extra.end());
        side.insert(side.end(), floating_side.begin(), floating_side.end());
        found = attempt(side);
        return found != nullptr;
      });
      if (found)
        return found;
    }
    return nullptr;
  }

  const SplGraph &g_;
  std::size_t budget_;
  std::set<std::pair<EdgeSet, std::array<VertexId, 4>>> failed_;
};

} // namespace

std::optional<SplDecomposition> recognize(const SplGraph &graph,
                                          std::unordered_map<VertexId, std::string> names,
                                          std::size_t budget) {
  Recognizer rec(graph, budget);
  std::unique_ptr<RNode> tree = rec.run();
  if (!tree)
    return std::nullopt;
  std::vector<DecompNode> nodes;
  std::vector<std::pair<const RNode *, std::pair<int, bool>>> stack{{tree.get(), {-1, false}}};
  while (!stack.empty()) {
    auto [r, link] = stack.back();
    stack.pop_back();
    int index = static_cast<int>(nodes.size());
    if (link.first >= 0)
      (link.second ? nodes[static_cast<std::size_t>(link.first)].second
                   : nodes[static_cast<std::size_t>(link.first)].first) = index;
    DecompNode n;
    n.kind = r->kind;
    n.atom = r->atom;
    n.specials = r->specials;
    for (EdgeId e : r->edges)
      n.edges.push_back(e);
    nodes.push_back(std::move(n));
    if (r->second)
      stack.push_back({r->second.get(), {index, true}});
    if (r->first)
      stack.push_back({r->first.get(), {index, false}});
  }
  SplDecomposition d(std::move(nodes), graph, std::move(names));
  d.validate();
  return d;
}

} // namespace splopt
