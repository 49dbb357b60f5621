/// \file
/// Scaling benchmark: decomposition and LOSPRE solve times on synthetic
/// programs of growing size.

#pragma once

#include "splopt/generate.hpp"

#include <string>
#include <vector>

namespace splopt {

struct BenchRow {
  Shape shape = Shape::LongSequence;
  std::size_t size = 0;         // requested statements
  std::size_t ast_nodes = 0;
  std::size_t cfg_vertices = 0;
  double decompose_us = 0;      // fastest of the repeats
  double solve_us = 0;          // fastest of the repeats
  std::size_t max_node_work = 0;
  std::size_t max_domain = 0;
};

/// Program generation is not timed. The solve encodes LOSPRE for `a + b`
/// with unit computation and lifetime costs. Each repeat times every size
/// once, in order, and rows keep the fastest time. With glibc this raises
/// the allocator's trim and mmap thresholds for the rest of the process.
std::vector<BenchRow> run_bench(Shape shape, const std::vector<std::size_t> &sizes, int repeats = 3);

std::string bench_tsv(const std::vector<BenchRow> &rows);

} // namespace splopt
