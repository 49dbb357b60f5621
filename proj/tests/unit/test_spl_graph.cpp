#include "doctest.h"
#include "support.hpp"

#include "splopt/spl_graph.hpp"

#include <algorithm>
#include <set>

using namespace splopt;

namespace {

using EdgePairs = std::multiset<std::pair<std::uint32_t, std::uint32_t>>;

EdgePairs edge_pairs(const SplGraph &g) {
  EdgePairs out;
  for (const Edge &e : g.edges())
    out.insert({e.src.value, e.dst.value});
  return out;
}

SplGraph eps(IdSource &ids) { return atomic(AtomKind::Epsilon, Payload::skip(), ids); }
SplGraph brk(IdSource &ids) { return atomic(AtomKind::Break, Payload::of(Payload::Action::Break), ids); }
SplGraph cont(IdSource &ids) { return atomic(AtomKind::Continue, Payload::of(Payload::Action::Continue), ids); }

std::set<std::uint32_t> edge_ids(const SplGraph &g) {
  std::set<std::uint32_t> out;
  for (const Edge &e : g.edges())
    out.insert(e.id.value);
  return out;
}

} // namespace

TEST_CASE("atomic graphs") {
  IdSource ids;
  SplGraph e = eps(ids), b = brk(ids), c = cont(ids);
  CHECK(e.vertices().size() == 4);
  CHECK(edge_pairs(e) == EdgePairs{{e.specials().s().value, e.specials().t().value}});
  CHECK(edge_pairs(b) == EdgePairs{{b.specials().s().value, b.specials().b().value}});
  CHECK(edge_pairs(c) == EdgePairs{{c.specials().s().value, c.specials().c().value}});
}

TEST_CASE("series merges the first terminal with the second start") {
  IdSource ids;
  // G1 has edges S1->T1 and S1->B1.
  SplGraph g1 = parallel(eps(ids), brk(ids));
  SplGraph g2 = eps(ids);
  SplGraph g = series(g1, g2);
  auto [s, t, b, c] = g.specials().v;
  VertexId m = g1.specials().t();
  CHECK(g.specials().s() == g1.specials().s());
  CHECK(g.specials().t() == g2.specials().t());
  CHECK(g.specials().b() == g1.specials().b());
  CHECK(edge_pairs(g) == EdgePairs{{s.value, m.value}, {s.value, b.value}, {m.value, t.value}});
  CHECK(g.vertices().size() == 5);
}

TEST_CASE("series of two epsilons") {
  IdSource ids;
  SplGraph g = series(eps(ids), eps(ids));
  CHECK(g.vertices().size() == 5);
  CHECK(g.edges().size() == 2);
}

TEST_CASE("parallel merges all four specials") {
  IdSource ids;
  SplGraph g = parallel(eps(ids), eps(ids));
  CHECK(g.vertices().size() == 4);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].id != g.edges()[1].id);
  CHECK(edge_pairs(g).count({g.specials().s().value, g.specials().t().value}) == 2);
}

TEST_CASE("parallel of two branch graphs") {
  // First operand: S->M1->T plus S->B. Second: S->M2->T plus M2->C.
  IdSource ids;
  SplGraph g1 = series(parallel(eps(ids), brk(ids)), eps(ids));
  SplGraph g2 = series(eps(ids), parallel(eps(ids), cont(ids)));
  CHECK(g1.vertices().size() == 5);
  CHECK(g2.vertices().size() == 5);
  SplGraph g = parallel(g1, g2);
  CHECK(g.vertices().size() == 6);
  CHECK(g.edges().size() == 6);
  auto sp = g.specials();
  std::vector<std::uint32_t> mids;
  for (VertexId v : g.vertices())
    if (std::find(sp.v.begin(), sp.v.end(), v) == sp.v.end())
      mids.push_back(v.value);
  REQUIRE(mids.size() == 2);
  std::uint32_t m1 = mids[0], m2 = mids[1];
  EdgePairs expected{{sp.s().value, m1}, {sp.s().value, m2}, {sp.s().value, sp.b().value},
                     {m1, sp.t().value},  {m2, sp.t().value}, {m2, sp.c().value}};
  CHECK(edge_pairs(g) == expected);
}

TEST_CASE("loop of epsilon") {
  IdSource ids;
  SplGraph body = eps(ids);
  SplGraph g = loop(body, ids);
  CHECK(g.vertices().size() == 8);
  auto [s1, t1, b1, c1] = body.specials().v;
  auto [s, t, b, c] = g.specials().v;
  EdgePairs expected{{s1.value, t1.value}, {s.value, s1.value}, {s.value, t.value},
                     {t1.value, s.value},  {c1.value, s.value}, {b1.value, t.value}};
  CHECK(edge_pairs(g) == expected);
  (void)b;
  (void)c;
}

TEST_CASE("loop over a body with a break and a continue") {
  IdSource ids;
  SplGraph body = parallel(series(eps(ids), brk(ids)), series(eps(ids), cont(ids)));
  SplGraph g = loop(body, ids);
  CHECK(g.vertices().size() == body.vertices().size() + 4);
  CHECK(g.edges().size() == body.edges().size() + 5);
  CHECK(is_closed(g));
  CHECK(g.in_degree(body.specials().b()) == 1);
  CHECK(g.out_degree(body.specials().b()) == 1);
}

TEST_CASE("closedness of atoms and loops") {
  IdSource ids;
  CHECK(is_closed(eps(ids)));
  CHECK_FALSE(is_closed(brk(ids)));
  CHECK_FALSE(is_closed(cont(ids)));
  CHECK(is_closed(loop(brk(ids), ids)));
}

TEST_CASE("operands must be disjoint") {
  IdSource ids;
  SplGraph a = eps(ids);
  CHECK_THROWS_AS(series(a, a), Error);
  CHECK_THROWS_AS(parallel(a, a), Error);
}

TEST_CASE("constructor rejects broken graphs") {
  Specials sp{{VertexId{0}, VertexId{1}, VertexId{2}, VertexId{3}}};
  std::vector<VertexId> vs{VertexId{0}, VertexId{1}, VertexId{2}, VertexId{3}};
  CHECK_THROWS_AS(SplGraph(vs, {Edge{EdgeId{0}, VertexId{0}, VertexId{9}, {}}}, sp), Error);
  CHECK_THROWS_AS(SplGraph(vs,
                           {Edge{EdgeId{0}, VertexId{0}, VertexId{1}, {}}, Edge{EdgeId{0}, VertexId{0}, VertexId{1}, {}}},
                           sp),
                  Error);
  Specials dup{{VertexId{0}, VertexId{0}, VertexId{2}, VertexId{3}}};
  CHECK_THROWS_AS(SplGraph(vs, {}, dup), Error);
}

TEST_CASE("counting laws over random compositions") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    IdSource ids;
    SplGraph g1 = testsupport::random_spl(rng, ids, 4);
    SplGraph g2 = testsupport::random_spl(rng, ids, 4);
    std::size_t v1 = g1.vertices().size(), v2 = g2.vertices().size();
    std::size_t e1 = g1.edges().size(), e2 = g2.edges().size();
    SplGraph s = series(g1, g2);
    CHECK(s.vertices().size() == v1 + v2 - 3);
    CHECK(s.edges().size() == e1 + e2);
    SplGraph p = parallel(g1, g2);
    CHECK(p.vertices().size() == v1 + v2 - 4);
    CHECK(p.edges().size() == e1 + e2);
    SplGraph l = loop(g1, ids);
    CHECK(l.vertices().size() == v1 + 4);
    CHECK(l.edges().size() == e1 + 5);

    // Edge ids survive composition verbatim.
    std::set<std::uint32_t> both = edge_ids(g1);
    for (std::uint32_t e : edge_ids(g2))
      both.insert(e);
    CHECK(edge_ids(s) == both);
    CHECK(edge_ids(p) == both);
  }
}

TEST_CASE("series is associative up to isomorphism") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    IdSource ids;
    SplGraph a = testsupport::random_spl(rng, ids, 3);
    SplGraph b = testsupport::random_spl(rng, ids, 3);
    SplGraph c = testsupport::random_spl(rng, ids, 3);
    CHECK(canonical_form(series(series(a, b), c)) == canonical_form(series(a, series(b, c))));
  }
}

TEST_CASE("canonical form ignores ids but sees structure") {
  IdSource ids1, ids2;
  ids2.vertex();
  ids2.edge();
  SplGraph x = loop(series(eps(ids1), brk(ids1)), ids1);
  SplGraph y = loop(series(eps(ids2), brk(ids2)), ids2);
  CHECK(canonical_form(x) == canonical_form(y));
  SplGraph z = loop(series(brk(ids2), eps(ids2)), ids2);
  CHECK_FALSE(canonical_form(x) == canonical_form(z));
}
