/// \file
/// Program generators: random closed programs for property tests and the
/// synthetic shapes used by the scaling benchmark.

#pragma once

#include "splopt/lang.hpp"

#include <random>
#include <string>
#include <vector>

namespace splopt {

struct ProgramOptions {
  int max_depth = 3;      // nesting of if/while
  int max_statements = 8; // total statements generated
  int num_vars = 4;       // variables are named a, b, c, ...
  int jump_percent = 15;  // chance of break/continue inside a loop
};

/// A random closed program: every break and continue sits inside a while.
StmtPtr random_program(std::mt19937_64 &rng, const ProgramOptions &options = {});

/// Right-nested sequence of the given statements; `skip` when empty.
StmtPtr sequence(const std::vector<StmtPtr> &stmts);

enum class Shape { LongSequence, NestedLoops, WideIfs };

Shape parse_shape(const std::string &name);
std::string shape_name(Shape s);

/// A program of roughly `size` statements that computes `a + b` repeatedly
/// and occasionally assigns its operands. Nesting depth stays bounded.
StmtPtr shape_program(Shape shape, std::size_t size);

} // namespace splopt
