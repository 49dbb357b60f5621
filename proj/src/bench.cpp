#include "splopt/bench.hpp"

#include "splopt/analysis.hpp"
#include "splopt/lospre.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace splopt {

namespace {

template <class F> double time_us(F &&f) {
  auto start = std::chrono::steady_clock::now();
  f();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::micro>(stop - start).count();
}

} // namespace

std::vector<BenchRow> run_bench(Shape shape, const std::vector<std::size_t> &sizes, int repeats) {
#if defined(__GLIBC__)
  // Keep freed memory in the process between repeats. Otherwise large runs
  // pay for fresh pages on every repeat and small runs do not.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  ExprPtr expr = Expr::binary(Expr::Kind::Add, Expr::var("a"), Expr::var("b"));
  const std::size_t n = sizes.size();
  const int rounds = std::max(1, repeats);
  std::vector<BenchRow> rows(n);
  std::vector<StmtPtr> programs;
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].shape = shape;
    rows[i].size = sizes[i];
    programs.push_back(shape_program(shape, sizes[i]));
    rows[i].ast_nodes = count_nodes(*programs[i]);
    rows[i].decompose_us = rows[i].solve_us = 1e300;
  }

  // Sizes take turns within each round, so a burst of noise from the rest of
  // the machine hits all of them rather than whichever one was running.
  std::vector<std::optional<SplDecomposition>> d(n);
  for (int r = 0; r < rounds; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      d[i].reset(); // not timed
      rows[i].decompose_us =
          std::min(rows[i].decompose_us, time_us([&] { d[i].emplace(decompose(*programs[i])); }));
    }

  std::vector<LospreInstance<IntCost>> instances(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cfg = cfg_of(*d[i]);
    rows[i].cfg_vertices = cfg->num_vertices();
    LospreSets sets = derive_lospre_sets(*cfg, *expr);
    LospreInstance<IntCost> &inst = instances[i];
    inst.cfg = cfg;
    inst.use = sets.use;
    inst.invalidating = sets.invalidating;
    inst.edge_cost.assign(cfg->num_edges(), IntCost(1));
    inst.live_cost.assign(cfg->num_vertices(), IntCost(1));
  }
  for (int r = 0; r < rounds; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      SolveStats stats;
      rows[i].solve_us = std::min(rows[i].solve_us, time_us([&] { solve_lospre(instances[i], *d[i], &stats); }));
      rows[i].max_node_work = stats.max_node_work;
      rows[i].max_domain = stats.max_domain;
    }
  return rows;
}

std::string bench_tsv(const std::vector<BenchRow> &rows) {
  std::ostringstream out;
  out << "shape\tsize\tast_nodes\tcfg_vertices\tdecompose_us\tsolve_us\tmax_node_work\tmax_domain\n";
  for (const BenchRow &r : rows)
    out << shape_name(r.shape) << '\t' << r.size << '\t' << r.ast_nodes << '\t' << r.cfg_vertices << '\t'
        << r.decompose_us << '\t' << r.solve_us << '\t' << r.max_node_work << '\t' << r.max_domain << '\n';
  return out.str();
}

} // namespace splopt
