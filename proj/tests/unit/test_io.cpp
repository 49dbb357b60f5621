#include "doctest.h"
#include "support.hpp"

#include "splopt/bench.hpp"
#include "splopt/io.hpp"
#include "splopt/oracle.hpp"

#include <algorithm>

using namespace splopt;

namespace {

std::size_t count(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1))
    ++n;
  return n;
}

std::string key_of(const std::string &text) {
  try {
    parse_instance(text);
  } catch (const InstanceError &e) {
    return e.key();
  }
  return "<no error>";
}

template <class C> C solve_loaded(const LoadedInstance &li) {
  if constexpr (std::is_same_v<C, IntCost>) {
    if (li.kind == InstanceKind::Bank)
      return solve_bank(std::get<BankInstance>(li.instance), *li.decomposition).cost;
    if (li.kind == InstanceKind::Lospre)
      return solve_lospre(std::get<LospreInstance<IntCost>>(li.instance), *li.decomposition).cost;
    return solve(std::get<PcspInstance<IntCost>>(li.instance), *li.decomposition).cost;
  } else {
    if (li.kind == InstanceKind::Lospre)
      return solve_lospre(std::get<LospreInstance<Lex2Cost>>(li.instance), *li.decomposition).cost;
    return solve(std::get<PcspInstance<Lex2Cost>>(li.instance), *li.decomposition).cost;
  }
}

} // namespace

TEST_CASE("minimal pcsp file") {
  LoadedInstance li = parse_instance(R"({
    "kind": "pcsp",
    "domain": [0, 1],
    "vertices": [{"id": "a"}, {"id": "b"}],
    "edges": [{"src": "a", "dst": "b"}],
    "edge_cost": {"default": 0}
  })");
  CHECK(li.kind == InstanceKind::Pcsp);
  CHECK(li.cfg->num_edges() == 1);
  CHECK(li.cfg->num_vertices() == 4); // B and C are added
  CHECK(li.cfg->name(li.cfg->special(Role::S)) == "a");
  CHECK(solve_loaded<IntCost>(li) == IntCost(0));
}

TEST_CASE("sparse cost entries") {
  LoadedInstance li = parse_instance(R"({
    "kind": "pcsp",
    "domain": ["r", "g"],
    "vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
    "edges": [{"id": "ab", "src": "a", "dst": "b"}, {"id": "bc", "src": "b", "dst": "c"}],
    "edge_cost": {"default": 5, "entries": [
      {"edge": "ab", "src_value": "r", "dst_value": "g", "cost": 1},
      {"edge": "bc", "dst_value": "r", "cost": 0}
    ]},
    "node_cost": {"entries": [{"vertex": "c", "value": "r", "cost": 2}]}
  })");
  CHECK(solve_loaded<IntCost>(li) == IntCost(3));
  auto &p = std::get<PcspInstance<IntCost>>(li.instance);
  CHECK(p.edge_cost(0, 0, 1) == IntCost(1));
  CHECK(p.edge_cost(1, 1, 0) == IntCost(0));
  CHECK(p.edge_cost(1, 1, 1) == IntCost(5));
  CHECK(p.value_name(0, 1) == "g");
}

TEST_CASE("diamond lospre file") {
  LoadedInstance li = load_instance(testsupport::data_path("diamond_lospre.json"));
  REQUIRE(li.kind == InstanceKind::Lospre);
  REQUIRE(li.cost_kind == CostKind::Lex2);
  auto &inst = std::get<LospreInstance<Lex2Cost>>(li.instance);
  auto names = [&](const VertexSet &vs) {
    std::vector<std::string> out;
    for (std::size_t v : vs)
      out.push_back(li.cfg->name(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(names(inst.use) == std::vector<std::string>{"2", "4", "5", "7"});
  CHECK(names(inst.invalidating) == std::vector<std::string>{"1", "6", "8"});
  LospreSolution<Lex2Cost> s = solve_lospre(inst, *li.decomposition);
  CHECK(s.cost == Lex2Cost(2, 2));
  CHECK(names(s.life) == std::vector<std::string>{"2", "3"});
}

TEST_CASE("bank path file") {
  LoadedInstance li = load_instance(testsupport::data_path("bank_path.json"));
  CHECK(solve_loaded<IntCost>(li) == IntCost(3));
  CHECK(naive_bank_cost(std::get<BankInstance>(li.instance)) == IntCost(6));
}

TEST_CASE("errors name the offending key") {
  CHECK(key_of(R"({"kind": "pcsp", "domain": 2, "vertices": [{"id": "a"}, {"id": "b"}],
                   "edges": [{"src": "v99", "dst": "b"}]})") == "edges[0].src");
  CHECK(key_of(R"({"kind": "pcsp", "vertices": [{"id": "a"}, {"id": "b"}],
                   "edges": [{"src": "a", "dst": "b"}]})") == "vertices[0].domain");
  CHECK(key_of(R"({"kind": "pcsp", "domain": [], "vertices": [{"id": "a"}, {"id": "b"}],
                   "edges": [{"src": "a", "dst": "b"}]})") == "domain");
  CHECK(key_of(R"({"kind": "bank", "banks": ["x"], "vertices": [{"id": "a", "precolor": "y"}, {"id": "b"}],
                   "edges": [{"src": "a", "dst": "b"}]})") == "vertices[0].precolor");
  CHECK(key_of(R"({"kind": "lospre", "cost_kind": "lex2", "vertices": [{"id": "a"}, {"id": "b"}],
                   "edges": [{"src": "a", "dst": "b"}], "edge_cost": {"default": 3}})") == "edge_cost.default");
  CHECK(key_of(R"({"kind": "magic"})") == "kind");
  CHECK(key_of("{ not json") == "");
}

TEST_CASE("graphs outside the family are rejected") {
  CHECK_THROWS_AS(parse_instance(R"({"kind": "pcsp", "domain": 1,
      "vertices": [{"id": "s"}, {"id": "a"}, {"id": "b"}, {"id": "t"}],
      "edges": [{"src": "s", "dst": "a"}, {"src": "s", "dst": "b"}, {"src": "a", "dst": "b"},
                {"src": "b", "dst": "a"}, {"src": "a", "dst": "t"}]})"),
                  InstanceError);
}

TEST_CASE("dump and reload keep the optimum") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40; ++i) {
    SplDecomposition d = decompose(*testsupport::small_program(rng, 12));
    auto cfg = cfg_of(d);
    LoadedInstance li;
    li.decomposition = std::make_shared<const SplDecomposition>(d);
    li.cfg = cfg;
    for (std::size_t e = 0; e < cfg->num_edges(); ++e)
      li.edge_names.push_back("e" + std::to_string(e));
    switch (i % 4) {
    case 0:
      li.kind = InstanceKind::Pcsp;
      li.instance = testsupport::random_int_pcsp(rng, cfg, 3, 9, true, 10);
      break;
    case 1:
      li.kind = InstanceKind::Pcsp;
      li.cost_kind = CostKind::Lex2;
      li.instance = testsupport::random_lex2_pcsp(rng, cfg, 3, 9, true);
      break;
    case 2:
      li.kind = InstanceKind::Lospre;
      li.instance = testsupport::random_lospre(rng, cfg, 9);
      break;
    default:
      li.kind = InstanceKind::Bank;
      li.instance = testsupport::random_bank(rng, cfg, 3);
      break;
    }
    std::string text = dump_instance(li);
    LoadedInstance back = parse_instance(text);
    CHECK(back.kind == li.kind);
    CHECK(back.cfg->num_vertices() == cfg->num_vertices());
    CHECK(back.cfg->num_edges() == cfg->num_edges());
    if (li.cost_kind == CostKind::Lex2)
      CHECK(solve_loaded<Lex2Cost>(back) == solve_loaded<Lex2Cost>(li));
    else
      CHECK(solve_loaded<IntCost>(back) == solve_loaded<IntCost>(li));
    CHECK(dump_instance(back) == text);
  }
}

TEST_CASE("dot output") {
  IdSource ids;
  std::string atom = emit_dot(atomic(AtomKind::Epsilon, Payload::skip(), ids));
  CHECK(atom.rfind("digraph", 0) == 0);
  CHECK(count(atom, "[label=") == 5);
  CHECK(count(atom, " -> ") == 1);

  SplDecomposition d = decompose(*parse(testsupport::kGcdProgram));
  std::string graph = emit_dot(*cfg_of(d));
  CHECK(count(graph, " -> ") == 9);
  CHECK(count(graph, "shape=box") == 4);
  for (const char *label : {"x >= 1", "x < 1", "x >= y", "x < y", "x = x - y", "y = y - x", "\"break\"", "\"continue\""})
    CHECK(graph.find(label) != std::string::npos);

  std::string tree = emit_dot(d);
  CHECK(count(tree, " -> ") == 7);
  CHECK(count(tree, "\xe2\x8a\x99") == 1); // loop
  CHECK(count(tree, "\xe2\x88\xa5") == 1); // parallel
  CHECK(count(tree, "\xe2\xa8\x9f") == 2); // series
}

TEST_CASE("decomposition json") {
  SplDecomposition d = decompose(*parse("while c { skip }"));
  std::string j = decomposition_json(d);
  CHECK(j.find("\"Loop\"") != std::string::npos);
  CHECK(j.find("\"A_eps\"") != std::string::npos);
}

TEST_CASE("bench rows") {
  auto rows = run_bench(Shape::LongSequence, {100, 1000}, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].cfg_vertices < rows[1].cfg_vertices);
  CHECK(rows[1].max_domain == 2);
  std::string tsv = bench_tsv(rows);
  CHECK(count(tsv, "\n") == 3);
  CHECK(tsv.rfind("shape\tsize", 0) == 0);
  for (Shape s : {Shape::LongSequence, Shape::NestedLoops, Shape::WideIfs}) {
    CHECK(parse_shape(shape_name(s)) == s);
    StmtPtr p = shape_program(s, 200);
    CHECK(check_closed(*p).empty());
  }
  CHECK_THROWS_AS(parse_shape("spiral"), Error);
}
