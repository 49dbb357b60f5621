#include "splopt/generate.hpp"

#include <functional>

namespace splopt {

StmtPtr sequence(const std::vector<StmtPtr> &stmts) {
  if (stmts.empty())
    return Stmt::skip();
  StmtPtr out = stmts.back();
  for (std::size_t i = stmts.size() - 1; i-- > 0;)
    out = Stmt::seq(stmts[i], out);
  return out;
}

StmtPtr random_program(std::mt19937_64 &rng, const ProgramOptions &options) {
  int budget = std::max(1, options.max_statements);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  auto var = [&] { return std::string(1, static_cast<char>('a' + pick(std::max(1, options.num_vars)))); };
  auto operand = [&]() -> ExprPtr {
    if (pick(4) == 0)
      return Expr::integer(pick(10));
    return Expr::var(var());
  };
  auto expr = [&]() -> ExprPtr {
    switch (pick(4)) {
    case 0:
      return operand();
    case 1:
      return Expr::binary(Expr::Kind::Add, operand(), operand());
    case 2:
      return Expr::binary(Expr::Kind::Sub, operand(), operand());
    default:
      return Expr::binary(Expr::Kind::Mul, operand(), operand());
    }
  };
  auto cond = [&]() -> CondPtr {
    static const CmpOp ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
    if (pick(5) == 0)
      return Cond::nondet();
    return Cond::compare(ops[pick(6)], Expr::var(var()), operand());
  };

  std::function<StmtPtr(int, bool)> block = [&](int depth, bool in_loop) -> StmtPtr {
    std::vector<StmtPtr> stmts;
    int count = 1 + pick(3);
    for (int i = 0; i < count && budget > 0; ++i) {
      --budget;
      int roll = pick(100);
      if (in_loop && roll < options.jump_percent) {
        stmts.push_back(pick(2) ? Stmt::brk() : Stmt::cont());
        break; // anything after a jump would be dead code
      }
      roll = pick(10);
      if (depth < options.max_depth && roll < 2) {
        CondPtr c = cond();
        StmtPtr t = block(depth + 1, in_loop);
        StmtPtr e = pick(3) ? block(depth + 1, in_loop) : Stmt::skip();
        stmts.push_back(Stmt::if_(c, t, e));
      } else if (depth < options.max_depth && roll < 4) {
        CondPtr c = cond();
        stmts.push_back(Stmt::while_(c, block(depth + 1, true)));
      } else if (roll < 5) {
        stmts.push_back(Stmt::skip());
      } else {
        stmts.push_back(Stmt::assign(var(), expr()));
      }
    }
    return sequence(stmts);
  };
  return block(0, false);
}

Shape parse_shape(const std::string &name) {
  if (name == "long-sequence")
    return Shape::LongSequence;
  if (name == "nested-loops")
    return Shape::NestedLoops;
  if (name == "wide-ifs")
    return Shape::WideIfs;
  throw Error("unknown shape \"" + name + "\" (expected long-sequence, nested-loops or wide-ifs)");
}

std::string shape_name(Shape s) {
  switch (s) {
  case Shape::LongSequence:
    return "long-sequence";
  case Shape::NestedLoops:
    return "nested-loops";
  case Shape::WideIfs:
    return "wide-ifs";
  }
  return "";
}

namespace {

ExprPtr a_plus_b() { return Expr::binary(Expr::Kind::Add, Expr::var("a"), Expr::var("b")); }

// Statement i of a straight-line stretch.
StmtPtr filler(std::size_t i) {
  switch (i % 5) {
  case 0:
  case 2:
    return Stmt::assign("x", a_plus_b());
  case 1:
    return Stmt::assign("y", Expr::binary(Expr::Kind::Mul, Expr::var("x"), Expr::integer(2)));
  case 3:
    return Stmt::assign("a", Expr::binary(Expr::Kind::Add, Expr::var("a"), Expr::integer(1)));
  default:
    return Stmt::assign("z", a_plus_b());
  }
}

CondPtr loop_cond() { return Cond::compare(CmpOp::Lt, Expr::var("i"), Expr::var("n")); }

} // namespace

StmtPtr shape_program(Shape shape, std::size_t size) {
  std::vector<StmtPtr> top;
  std::size_t made = 0;
  switch (shape) {
  case Shape::LongSequence:
    for (; made < size; ++made)
      top.push_back(filler(made));
    break;
  case Shape::NestedLoops: {
    // Nests of depth 4; every level holds two statements and the next level.
    constexpr int kDepth = 4;
    while (made < size) {
      StmtPtr inner = sequence({filler(made), filler(made + 1)});
      made += 2;
      for (int level = 1; level < kDepth && made < size; ++level) {
        StmtPtr body = Stmt::while_(loop_cond(), inner);
        inner = sequence({filler(made), body, filler(made + 1)});
        made += 3;
      }
      top.push_back(Stmt::while_(loop_cond(), inner));
      ++made;
    }
    break;
  }
  case Shape::WideIfs:
    while (made < size) {
      CondPtr c = Cond::compare(CmpOp::Gt, Expr::var("x"), Expr::integer(static_cast<std::int64_t>(made % 7)));
      top.push_back(Stmt::if_(c, filler(made), filler(made + 3)));
      top.push_back(filler(made + 1));
      made += 4;
    }
    break;
  }
  return sequence(top);
}

} // namespace splopt
