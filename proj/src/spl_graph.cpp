#include "splopt/spl_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace splopt {

Payload Payload::skip() { return of(Action::Skip); }

Payload Payload::assign(std::string var, ExprPtr expr) {
  Payload p;
  p.action = Action::Assign;
  p.name = std::move(var);
  p.expr = std::move(expr);
  return p;
}

Payload Payload::of(Action action) {
  Payload p;
  p.action = action;
  return p;
}

Payload Payload::opaque(std::string text) {
  Payload p;
  p.action = Action::Opaque;
  p.name = std::move(text);
  return p;
}

std::string describe(const Payload &p) {
  std::vector<std::string> parts;
  for (const Guard &g : p.guards)
    parts.push_back(g.negated ? negated_source(*g.cond) : to_source(*g.cond));
  switch (p.action) {
  case Payload::Action::None:
    break;
  case Payload::Action::Skip:
    parts.emplace_back("skip");
    break;
  case Payload::Action::Assign:
    parts.push_back(p.name + " = " + to_source(*p.expr));
    break;
  case Payload::Action::Break:
    parts.emplace_back("break");
    break;
  case Payload::Action::Continue:
    parts.emplace_back("continue");
    break;
  case Payload::Action::Loopback:
    parts.emplace_back("loopback");
    break;
  case Payload::Action::ContinueDispatch:
    parts.emplace_back("continue-dispatch");
    break;
  case Payload::Action::BreakDispatch:
    parts.emplace_back("break-dispatch");
    break;
  case Payload::Action::Opaque:
    parts.push_back(p.name);
    break;
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += ", ";
    out += parts[i];
  }
  return out;
}

SplGraph::SplGraph(std::vector<VertexId> vertices, std::vector<Edge> edges, Specials specials)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), specials_(specials) {
  if (!std::is_sorted(vertices_.begin(), vertices_.end()))
    std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw Error("SPL graph has duplicate vertex ids");
  for (int i = 0; i < 4; ++i) {
    if (!contains(specials_.v[i]))
      throw Error("SPL graph special vertex is not a member of the vertex set");
    for (int j = 0; j < i; ++j)
      if (specials_.v[i] == specials_.v[j])
        throw Error("SPL graph special vertices must be pairwise distinct");
  }
  // Ids are usually dense, which allows a flat membership table.
  std::vector<char> member;
  if (!vertices_.empty() && vertices_.back().value <= 4 * vertices_.size() + 1024) {
    member.assign(std::size_t{vertices_.back().value} + 1, 0);
    for (VertexId v : vertices_)
      member[v.value] = 1;
  }
  auto known = [&](VertexId v) { return member.empty() ? contains(v) : v.value < member.size() && member[v.value]; };
  std::vector<EdgeId> ids;
  ids.reserve(edges_.size());
  for (const Edge &e : edges_) {
    if (!known(e.src) || !known(e.dst))
      throw Error("SPL graph edge " + std::to_string(e.id.value) + " has a dangling endpoint");
    ids.push_back(e.id);
  }
  if (!std::is_sorted(ids.begin(), ids.end()))
    std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end())
    throw Error("SPL graph has duplicate edge id " + std::to_string(dup->value));
}

bool SplGraph::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t SplGraph::in_degree(VertexId v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge &e) { return e.dst == v; }));
}

std::size_t SplGraph::out_degree(VertexId v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge &e) { return e.src == v; }));
}

SplGraph atomic(AtomKind kind, Payload payload, IdSource &ids) {
  Specials sp{{ids.vertex(), ids.vertex(), ids.vertex(), ids.vertex()}};
  VertexId target = kind == AtomKind::Epsilon ? sp.t() : kind == AtomKind::Break ? sp.b() : sp.c();
  std::vector<Edge> edges{Edge{ids.edge(), sp.s(), target, std::move(payload)}};
  return SplGraph({sp.v.begin(), sp.v.end()}, std::move(edges), sp);
}

namespace {

void require_disjoint(const SplGraph &g1, const SplGraph &g2) {
  for (VertexId v : g2.vertices())
    if (g1.contains(v))
      throw Error("SPL operands share vertex id " + std::to_string(v.value));
  std::unordered_set<EdgeId> ids;
  for (const Edge &e : g1.edges())
    ids.insert(e.id);
  for (const Edge &e : g2.edges())
    if (ids.count(e.id))
      throw Error("SPL operands share edge id " + std::to_string(e.id.value));
}

// Union of g1 and g2 where each vertex of g2 found in `merge` is replaced by
// its image in g1.
SplGraph merge_into(const SplGraph &g1, const SplGraph &g2,
                    const std::unordered_map<VertexId, VertexId> &merge, Specials specials) {
  auto image = [&](VertexId v) {
    auto it = merge.find(v);
    return it == merge.end() ? v : it->second;
  };
  std::vector<VertexId> vertices = g1.vertices();
  for (VertexId v : g2.vertices())
    if (!merge.count(v))
      vertices.push_back(v);
  std::vector<Edge> edges = g1.edges();
  edges.reserve(g1.edges().size() + g2.edges().size());
  for (const Edge &e : g2.edges())
    edges.push_back(Edge{e.id, image(e.src), image(e.dst), e.payload});
  return SplGraph(std::move(vertices), std::move(edges), specials);
}

} // namespace

SplGraph series(const SplGraph &g1, const SplGraph &g2) {
  require_disjoint(g1, g2);
  const Specials &a = g1.specials();
  const Specials &b = g2.specials();
  std::unordered_map<VertexId, VertexId> merge{{b.s(), a.t()}, {b.b(), a.b()}, {b.c(), a.c()}};
  return merge_into(g1, g2, merge, Specials{{a.s(), b.t(), a.b(), a.c()}});
}

SplGraph parallel(const SplGraph &g1, const SplGraph &g2) {
  require_disjoint(g1, g2);
  const Specials &a = g1.specials();
  const Specials &b = g2.specials();
  std::unordered_map<VertexId, VertexId> merge{
      {b.s(), a.s()}, {b.t(), a.t()}, {b.b(), a.b()}, {b.c(), a.c()}};
  return merge_into(g1, g2, merge, a);
}

SplGraph loop(const SplGraph &g1, IdSource &ids, const LoopPayloads &payloads) {
  const Specials &in = g1.specials();
  Specials out{{ids.vertex(), ids.vertex(), ids.vertex(), ids.vertex()}};
  for (VertexId v : out.v)
    if (g1.contains(v))
      throw Error("loop: fresh vertex id collides with operand");
  std::vector<VertexId> vertices = g1.vertices();
  vertices.insert(vertices.end(), out.v.begin(), out.v.end());
  std::vector<Edge> edges = g1.edges();
  edges.push_back(Edge{ids.edge(), out.s(), in.s(), payloads.enter});
  edges.push_back(Edge{ids.edge(), out.s(), out.t(), payloads.exit});
  edges.push_back(Edge{ids.edge(), in.t(), out.s(), payloads.loopback});
  edges.push_back(Edge{ids.edge(), in.c(), out.s(), payloads.continue_dispatch});
  edges.push_back(Edge{ids.edge(), in.b(), out.t(), payloads.break_dispatch});
  return SplGraph(std::move(vertices), std::move(edges), out);
}

bool is_closed(const SplGraph &g) {
  return g.in_degree(g.specials().b()) == 0 && g.in_degree(g.specials().c()) == 0;
}

CanonicalForm canonical_form(const SplGraph &g, bool with_labels) {
  struct Arc {
    bool outgoing;
    std::string label;
    VertexId other;
  };
  std::unordered_map<VertexId, std::vector<Arc>> adj;
  for (const Edge &e : g.edges()) {
    std::string label = with_labels ? describe(e.payload) : std::string();
    adj[e.src].push_back(Arc{true, label, e.dst});
    adj[e.dst].push_back(Arc{false, label, e.src});
  }
  std::unordered_map<VertexId, std::size_t> number;
  std::deque<VertexId> queue;
  auto visit = [&](VertexId v) {
    if (number.emplace(v, number.size()).second)
      queue.push_back(v);
  };
  for (VertexId v : g.specials().v)
    visit(v);
  auto drain = [&] {
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      auto &arcs = adj[v];
      // Already-numbered neighbours sort by their number; the rest by label.
      std::stable_sort(arcs.begin(), arcs.end(), [&](const Arc &x, const Arc &y) {
        if (x.outgoing != y.outgoing)
          return x.outgoing;
        if (x.label != y.label)
          return x.label < y.label;
        auto nx = number.find(x.other);
        auto ny = number.find(y.other);
        std::size_t kx = nx == number.end() ? SIZE_MAX : nx->second;
        std::size_t ky = ny == number.end() ? SIZE_MAX : ny->second;
        return kx < ky;
      });
      for (const Arc &a : arcs)
        visit(a.other);
    }
  };
  drain();
  // Pieces not connected to any special vertex are visited in id order.
  for (VertexId v : g.vertices()) {
    if (!number.count(v)) {
      visit(v);
      drain();
    }
  }
  CanonicalForm form;
  form.vertex_count = g.vertices().size();
  for (const Edge &e : g.edges())
    form.edges.emplace_back(number.at(e.src), number.at(e.dst),
                            with_labels ? describe(e.payload) : std::string());
  std::sort(form.edges.begin(), form.edges.end());
  return form;
}

} // namespace splopt
