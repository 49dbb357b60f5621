#include "doctest.h"
#include "support.hpp"

#include "splopt/analysis.hpp"

#include <algorithm>

using namespace splopt;

namespace {

std::size_t vertex(const Cfg &cfg, const std::string &name) {
  auto v = cfg.find_by_name(name);
  REQUIRE(v.has_value());
  return *v;
}

std::vector<std::string> names(const Cfg &cfg, const std::vector<std::size_t> &vs) {
  std::vector<std::string> out;
  for (std::size_t v : vs)
    out.push_back(cfg.name(v));
  return out;
}

// One more round of the transfer function at every vertex.
bool is_fixpoint(const Cfg &cfg, const LiveMap &live) {
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
    VarSet want;
    for (std::size_t e : cfg.out_edges(v)) {
      VarSet u = uses(cfg.edge(e).payload), d = defs(cfg.edge(e).payload);
      want.insert(u.begin(), u.end());
      for (const std::string &x : live.at_vertex[cfg.dst(e)])
        if (!d.count(x))
          want.insert(x);
    }
    if (want != live.at_vertex[v])
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("live sets of the register example") {
  SplDecomposition d = decompose(*parse(testsupport::kRegisterProgram));
  auto cfg = cfg_of(d);
  LiveMap live = liveness(*cfg);
  CHECK(live.at_vertex[cfg->special(Role::S)] == VarSet{"b", "c", "f"});
  // The vertex where the conditional branches.
  CHECK(live.at_vertex[vertex(*cfg, "v10")] == VarSet{"c", "d", "e", "f"});
  CHECK(live.at_vertex[vertex(*cfg, "v8")] == VarSet{"a", "c", "f"});
  CHECK(live.at_vertex[vertex(*cfg, "v9")] == VarSet{"c", "d", "f"});
  CHECK(live.at_vertex[vertex(*cfg, "v12")] == VarSet{"c", "e", "f"});
  CHECK(live.at_vertex[vertex(*cfg, "v11")] == VarSet{"c", "f"});
  CHECK(live.at_vertex[cfg->special(Role::T)].empty());
  CHECK(is_fixpoint(*cfg, live));
}

TEST_CASE("skip has nothing live") {
  auto cfg = cfg_of(decompose(*parse("skip")));
  LiveMap live = liveness(*cfg);
  for (const VarSet &s : live.at_vertex)
    CHECK(s.empty());
}

TEST_CASE("uses and defs of payloads") {
  Payload p = Payload::assign("x", parse_expr("x + y"));
  CHECK(uses(p) == VarSet{"x", "y"});
  CHECK(defs(p) == VarSet{"x"});
  CHECK(uses(Payload::skip()).empty());
}

TEST_CASE("live sets are a fixpoint within the program's variables") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    ProgramOptions opts;
    opts.max_statements = 14;
    auto cfg = cfg_of(decompose(*random_program(rng, opts)));
    LiveMap live = liveness(*cfg);
    VarSet all = program_vars(*cfg);
    CHECK(is_fixpoint(*cfg, live));
    for (const VarSet &s : live.at_vertex)
      for (const std::string &x : s)
        CHECK(all.count(x));
  }
}

TEST_CASE("adding a use never shrinks a live set") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    ProgramOptions opts;
    opts.max_statements = 10;
    StmtPtr p = random_program(rng, opts);
    StmtPtr q = Stmt::seq(p, Stmt::assign("zz", parse_expr("a + b")));
    auto cp = cfg_of(decompose(*p));
    auto cq = cfg_of(decompose(*q));
    LiveMap lp = liveness(*cp);
    LiveMap lq = liveness(*cq);
    CHECK(std::includes(lq.at_vertex[cq->special(Role::S)].begin(), lq.at_vertex[cq->special(Role::S)].end(),
                        lp.at_vertex[cp->special(Role::S)].begin(), lp.at_vertex[cp->special(Role::S)].end()));
  }
}

TEST_CASE("lospre sets for a + b") {
  auto cfg = cfg_of(decompose(*parse("x = a + b; if c > 0 { y = a + b } else { a = 0 }; z = a + b")));
  LospreSets sets = derive_lospre_sets(*cfg, *parse_expr("a + b"));
  // S computes x = a + b, the branch vertex v4 computes y = a + b on its
  // then edge, and the join vertex v5 computes z = a + b.
  CHECK(names(*cfg, sets.use) == std::vector<std::string>{"S", "v4", "v5"});
  // The join vertex is reached by the `a = 0` edge.
  CHECK(names(*cfg, sets.invalidating) == std::vector<std::string>{"S", "T", "v5"});
}

TEST_CASE("lospre sets without occurrences") {
  auto cfg = cfg_of(decompose(*parse("skip")));
  LospreSets sets = derive_lospre_sets(*cfg, *parse_expr("a + b"));
  CHECK(sets.use.empty());
  CHECK(sets.invalidating == std::vector<std::size_t>{cfg->special(Role::S), cfg->special(Role::T)});

  auto cfg2 = cfg_of(decompose(*parse("x = a * b")));
  CHECK(derive_lospre_sets(*cfg2, *parse_expr("a + b")).use.empty());
}

TEST_CASE("entry and exit always invalidate") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto cfg = cfg_of(decompose(*random_program(rng)));
    LospreSets sets = derive_lospre_sets(*cfg, *parse_expr("a + b"));
    auto has = [&](std::size_t v) {
      return std::find(sets.invalidating.begin(), sets.invalidating.end(), v) != sets.invalidating.end();
    };
    CHECK(has(cfg->special(Role::S)));
    CHECK(has(cfg->special(Role::T)));
  }
}
