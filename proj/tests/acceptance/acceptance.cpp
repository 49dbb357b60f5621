// Acceptance checks. Prints one PASS/FAIL line per criterion with its
// elapsed time and limit; exits nonzero if any criterion fails.

#include "support.hpp"

#include "splopt/bankselect.hpp"
#include "splopt/bench.hpp"
#include "splopt/io.hpp"
#include "splopt/lospre.hpp"
#include "splopt/oracle.hpp"
#include "splopt/regalloc.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace splopt;

namespace {

// Collects failed expectations for one criterion.
struct Report {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string &what) {
    if (!ok)
      failures.push_back(what);
  }
};

std::multiset<std::string> labels(const Cfg &cfg) {
  std::multiset<std::string> out;
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    out.insert(cfg.name(cfg.src(e)) + " -> " + cfg.name(cfg.dst(e)) + " : " + describe(cfg.graph().edges()[e].payload));
  return out;
}

void gcd_decomposition(Report &r) {
  SplDecomposition d = decompose(*parse(testsupport::kGcdProgram));
  r.expect(decomposition_term(d) == "Loop(Parallel(Series(A_eps, A_break), Series(A_eps, A_continue)))",
           "term is " + decomposition_term(d));
  auto cfg = cfg_of(d);
  r.expect(cfg->num_vertices() == 10, "vertex count " + std::to_string(cfg->num_vertices()));
  r.expect(cfg->num_edges() == 9, "edge count " + std::to_string(cfg->num_edges()));
  std::multiset<std::string> expected{
      "S -> v4 : x >= 1",
      "S -> T : x < 1",
      "v5 -> S : loopback",
      "v7 -> S : continue-dispatch",
      "v6 -> T : break-dispatch",
      "v4 -> v8 : x >= y, x = x - y",
      "v8 -> v6 : break",
      "v4 -> v9 : x < y, y = y - x",
      "v9 -> v7 : continue",
  };
  r.expect(labels(*cfg) == expected, "edge labels differ");
  r.expect(is_closed(cfg->graph()), "graph is not closed");
}

void lospre_diamond(Report &r) {
  // Vertex k of the eight-vertex diamond, numbered along the program.
  static const char *names[] = {"", "S", "v4", "v5", "v7", "v8", "v6", "v9", "T"};
  SplDecomposition d = decompose(*parse(testsupport::kDiamondProgram));
  auto cfg = cfg_of(d);
  auto v = [&](int k) { return *cfg->find_by_name(names[k]); };
  auto set = [&](std::initializer_list<int> ks) {
    VertexSet out;
    for (int k : ks)
      out.push_back(v(k));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto edges = [&](std::initializer_list<std::pair<int, int>> es) {
    EdgeSet out;
    for (auto [a, b] : es)
      for (std::size_t e = 0; e < cfg->num_edges(); ++e)
        if (cfg->src(e) == v(a) && cfg->dst(e) == v(b))
          out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
  };
  LospreInstance<Lex2Cost> inst;
  inst.cfg = cfg;
  inst.use = set({2, 4, 5, 7});
  inst.invalidating = set({1, 6, 8});
  inst.edge_cost.assign(cfg->num_edges(), Lex2Cost(1, 0));
  inst.live_cost.assign(cfg->num_vertices(), Lex2Cost(0, 1));

  r.expect(calc_set(*cfg, inst.use, set({2, 3}), inst.invalidating) == edges({{1, 2}, {6, 7}}),
           "calculating set for L={2,3}");
  r.expect(calc_set(*cfg, inst.use, set({3}), inst.invalidating) == edges({{1, 2}, {2, 3}, {6, 7}}),
           "calculating set for L={3}");
  LospreSolution<Lex2Cost> s = solve_lospre(inst, d);
  r.expect(s.cost == Lex2Cost(2, 2), "solve cost");
  r.expect(s.life == set({2, 3}), "solve life set");
  LospreSolution<Lex2Cost> bf = brute_force_lospre(inst);
  r.expect(bf.cost == Lex2Cost(2, 2), "oracle cost");
}

void register_example(Report &r) {
  SplDecomposition d = decompose(*parse(testsupport::kRegisterProgram));
  auto cfg = cfg_of(d);
  LiveMap live = liveness(*cfg);
  auto branch = cfg->find_by_name("v10");
  r.expect(branch && live.at_vertex[*branch] == VarSet{"c", "d", "e", "f"}, "live set at the branch vertex");
  InterferenceGraph g = build_interference(live);
  std::set<std::pair<std::string, std::string>> expected{{"a", "c"}, {"a", "f"}, {"b", "c"}, {"b", "f"},
                                                         {"c", "d"}, {"c", "e"}, {"c", "f"}, {"d", "e"},
                                                         {"d", "f"}, {"e", "f"}};
  r.expect(g.edges == expected, "interference edges");
  r.expect(min_spill_free_registers(d, live) == 4, "minimum spill-free registers");
  RegAllocOptions three;
  three.registers = 3;
  r.expect(!solve_regalloc(d, live, three).feasible(), "three registers should be infeasible without spills");
  three.allow_spill = true;
  three.cost = unit_spill_cost(*cfg, live);
  RegAllocResult spilled = solve_regalloc(d, live, three);
  int oracle = testsupport::min_spilled_ranges(testsupport::live_ranges(*cfg, live), 3);
  r.expect(oracle == 1, "oracle spill count " + std::to_string(oracle));
  r.expect(spilled.cost == IntCost(oracle), "spill cost " + to_string(spilled.cost));
}

double g_worst_ratio = 0; // largest node work over |D|^5 seen so far

void note_work(const SolveStats &stats) {
  double d = static_cast<double>(std::max<std::size_t>(stats.max_domain, 1));
  g_worst_ratio = std::max(g_worst_ratio, static_cast<double>(stats.max_node_work) / (d * d * d * d * d));
}

// Closed programs of up to 14 CFG vertices, larger on average than
// testsupport::small_program.
StmtPtr program_up_to_14(std::mt19937_64 &rng) {
  ProgramOptions opts;
  opts.max_statements = 7;
  opts.max_depth = 3;
  opts.num_vars = 3;
  opts.jump_percent = 25;
  for (;;) {
    StmtPtr p = random_program(rng, opts);
    if (cfg_of(decompose(*p))->num_vertices() <= 14)
      return p;
  }
}

void oracle_equivalence(Report &r) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 240; ++i) {
    StmtPtr p = program_up_to_14(rng);
    SplDecomposition d = decompose(*p);
    auto cfg = cfg_of(d);
    std::string where = " on " + to_source(*p);
    SolveStats stats;
    if (i % 4 == 3) {
      auto inst = testsupport::random_lex2_pcsp(rng, cfg, 3, 9, i % 2 == 0);
      Solution<Lex2Cost> dp = solve(inst, d, &stats);
      r.expect(dp.cost == brute_force(inst).cost, "lex2 cost" + where);
      r.expect(eval_cost(inst, dp.assignment) == dp.cost, "lex2 eval" + where);
    } else {
      auto inst = testsupport::random_int_pcsp(rng, cfg, 3, 9, i % 2 == 0, i % 3 == 0 ? 30 : 0);
      Solution<IntCost> dp = solve(inst, d, &stats);
      r.expect(dp.cost == brute_force(inst).cost, "int cost" + where);
      if (dp.feasible())
        r.expect(eval_cost(inst, dp.assignment) == dp.cost, "int eval" + where);
    }
    note_work(stats);
  }
}

void bank_selection(Report &r) {
  SplDecomposition d = decompose(*parse("skip; skip; skip; skip"));
  auto cfg = cfg_of(d);
  std::vector<std::size_t> path{cfg->special(Role::S)};
  while (!cfg->out_edges(path.back()).empty())
    path.push_back(cfg->dst(cfg->out_edges(path.back())[0]));
  BankInstance inst;
  inst.cfg = cfg;
  inst.banks = {"beta", "gamma"};
  inst.precolor.assign(cfg->num_vertices(), std::nullopt);
  inst.precolor[path[1]] = 0;
  inst.precolor[path[3]] = 0;
  inst.taken.assign(cfg->num_edges(), 0);
  BankSolution s = solve_bank(inst, d);
  r.expect(s.cost == IntCost(3), "path optimum " + to_string(s.cost));
  r.expect(naive_bank_cost(inst) == IntCost(6), "naive placement " + to_string(naive_bank_cost(inst)));
  r.expect(brute_force(build_bank_pcsp(inst).pcsp).cost == IntCost(3), "oracle on the path");

  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    StmtPtr p = testsupport::small_program(rng, 12);
    SplDecomposition rd = decompose(*p);
    BankInstance ri = testsupport::random_bank(rng, cfg_of(rd), 1 + i % 3);
    BankSolution rs = solve_bank(ri, rd);
    r.expect(rs.cost == brute_force(build_bank_pcsp(ri).pcsp).cost, "random bank on " + to_source(*p));
    r.expect(bank_cost(ri, rs.bank) == rs.cost, "bank cost of the solution on " + to_source(*p));
  }
}

void structural_properties(Report &r) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    IdSource ids;
    SplGraph a = testsupport::random_spl(rng, ids, 4);
    SplGraph b = testsupport::random_spl(rng, ids, 4);
    SplGraph c = testsupport::random_spl(rng, ids, 3);
    std::size_t va = a.vertices().size(), vb = b.vertices().size();
    std::size_t ea = a.edges().size(), eb = b.edges().size();
    SplGraph s = series(a, b);
    SplGraph p = parallel(a, b);
    SplGraph l = loop(a, ids);
    r.expect(s.vertices().size() == va + vb - 3 && s.edges().size() == ea + eb, "series counts");
    r.expect(p.vertices().size() == va + vb - 4 && p.edges().size() == ea + eb, "parallel counts");
    r.expect(l.vertices().size() == va + 4 && l.edges().size() == ea + 5, "loop counts");
    r.expect(canonical_form(series(series(a, b), c)) == canonical_form(series(a, series(b, c))),
             "series associativity");
    r.expect(is_closed(l), "a loop is closed");
    if (is_closed(a) && is_closed(b)) {
      r.expect(is_closed(s), "series keeps closedness");
      r.expect(is_closed(p), "parallel keeps closedness");
    }
  }
  ProgramOptions opts;
  opts.max_statements = 12;
  opts.jump_percent = 30;
  for (int i = 0; i < 1000; ++i) {
    StmtPtr prog = random_program(rng, opts);
    if (check_closed(*prog).empty())
      r.expect(is_closed(cfg_of(decompose(*prog))->graph()), "program graph closed: " + to_source(*prog));
  }
}

void scaling(Report &r) {
  for (Shape shape : {Shape::LongSequence, Shape::NestedLoops}) {
    std::vector<BenchRow> rows = run_bench(shape, {1000, 10000}, 31);
    double dec = rows[1].decompose_us / rows[0].decompose_us;
    double sol = rows[1].solve_us / rows[0].solve_us;
    char line[160];
    std::snprintf(line, sizeof line, "    %s: decompose x%.1f, solve x%.1f", shape_name(shape).c_str(), dec, sol);
    std::cout << line << '\n';
    r.expect(dec <= 15, std::string(line) + " (decompose above 15)");
    r.expect(sol <= 15, std::string(line) + " (solve above 15)");
    for (const BenchRow &row : rows) {
      SolveStats stats;
      stats.max_node_work = row.max_node_work;
      stats.max_domain = row.max_domain;
      note_work(stats);
    }
  }
  std::cout << "    largest node work / |D|^5: " << g_worst_ratio << '\n';
  r.expect(g_worst_ratio <= 2, "node work above 2*|D|^5");
}

void loop_generality(Report &r) {
  // Equal values across the (continue vertex, head) edge cost 4, unequal
  // ones nothing; the head prefers 1, the body's continue vertex 0 only
  // through that edge.
  SplDecomposition d = decompose(*parse("while c { if x > 0 { continue } else { skip } }"));
  auto cfg = cfg_of(d);
  const DecompNode &root = d.root();
  std::size_t back = cfg->edge_index(root.edges[3]);
  PcspInstance<IntCost> inst;
  inst.cfg = cfg;
  inst.domain_size.assign(cfg->num_vertices(), 2);
  inst.edge_cost = [back](std::size_t e, std::size_t a, std::size_t b) {
    return IntCost(e == back && a == b ? 4 : 0);
  };
  std::size_t head = cfg->special(Role::S);
  std::size_t cont = cfg->index_of(d.node(static_cast<std::size_t>(root.first)).specials.c());
  inst.node_cost = [head, cont](std::size_t v, std::size_t a) {
    if (v == head)
      return IntCost(a == 1 ? 0 : 3);
    if (v == cont)
      return IntCost(a == 1 ? 0 : 1);
    return IntCost(0);
  };
  Solution<IntCost> s = solve(inst, d);
  r.expect(s.cost == IntCost(1), "cost " + to_string(s.cost));
  r.expect(s.assignment[head] == 1 && s.assignment[cont] == 0, "values across the continue edge");
  r.expect(brute_force(inst).cost == IntCost(1), "oracle cost");
}

struct Criterion {
  int number;
  const char *name;
  double limit_s;
  std::function<void(Report &)> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "decomposition golden test", 1, gcd_decomposition},
      {2, "LOSPRE golden test", 1, lospre_diamond},
      {3, "register allocation golden test", 5, register_example},
      {4, "oracle equivalence suite", 60, oracle_equivalence},
      {5, "bank selection", 10, bank_selection},
      {6, "structural property suite", 30, structural_properties},
      {7, "scaling", 120, scaling},
      {8, "loop-node generality regression", 1, loop_generality},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    Report report;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(report);
    } catch (const std::exception &e) {
      report.failures.push_back(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.limit_s)
      report.failures.push_back("took longer than the limit");
    bool ok = report.failures.empty();
    failed += !ok;
    std::printf("%s criterion %d (%s): %.3f s, limit %.0f s\n", ok ? "PASS" : "FAIL", c.number, c.name, elapsed,
                c.limit_s);
    for (std::size_t i = 0; i < report.failures.size() && i < 10; ++i)
      std::printf("    %s\n", report.failures[i].c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
