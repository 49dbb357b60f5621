/// \file
/// AST and parser for the goto-free structured mini-language.
///
/// Concrete syntax:
///
///   stmt  := 'skip' | ident '=' expr | 'break' | 'continue'
///          | 'if' cond block ['else' block] | 'while' cond block | block
///   block := '{' [seq] '}'
///   seq   := stmt (';' stmt)* [';']
///
/// An empty block is a `skip`. Conditions are comparisons, boolean
/// connectives (`&&`, `||`, `!`), `true`, `false`, a bare expression, or `*`
/// (an opaque condition that reads no variables).

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace splopt {

/// Base class of every error this library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SourceLoc {
  int line = 0;
  int column = 0;
};

class ParseError : public Error {
public:
  ParseError(SourceLoc loc, std::string token, const std::string &message);

  SourceLoc loc() const { return loc_; }
  const std::string &token() const { return token_; }

private:
  SourceLoc loc_;
  std::string token_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Int, Var, Neg, Add, Sub, Mul };

  Kind kind = Kind::Int;
  std::int64_t value = 0;
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr integer(std::int64_t v);
  static ExprPtr var(std::string name);
  static ExprPtr neg(ExprPtr operand);
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs);
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Cond;
using CondPtr = std::shared_ptr<const Cond>;

struct Cond {
  enum class Kind { True, False, Nondet, Truth, Cmp, And, Or, Not };

  Kind kind = Kind::True;
  CmpOp op = CmpOp::Eq;
  ExprPtr lhs;
  ExprPtr rhs;
  CondPtr a;
  CondPtr b;

  static CondPtr constant(bool v);
  static CondPtr nondet();
  static CondPtr truth(ExprPtr e);
  static CondPtr compare(CmpOp op, ExprPtr lhs, ExprPtr rhs);
  static CondPtr conj(CondPtr a, CondPtr b);
  static CondPtr disj(CondPtr a, CondPtr b);
  static CondPtr negate(CondPtr a);
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  enum class Kind { Skip, Assign, Break, Continue, Seq, If, While };

  Kind kind = Kind::Skip;
  SourceLoc loc;
  std::string var;   // Assign
  ExprPtr expr;      // Assign
  CondPtr cond;      // If, While
  StmtPtr first;     // Seq: first, If: then, While: body
  StmtPtr second;    // Seq: second, If: else

  // Sizes of this subtree, filled in by the factories below. Only used as a
  // sizing hint, so hand-built nodes that leave them at zero are fine.
  struct Counts {
    std::uint32_t statements = 0, seqs = 0, loops = 0;
  } counts;

  static StmtPtr skip(SourceLoc loc = {});
  static StmtPtr assign(std::string var, ExprPtr expr, SourceLoc loc = {});
  static StmtPtr brk(SourceLoc loc = {});
  static StmtPtr cont(SourceLoc loc = {});
  static StmtPtr seq(StmtPtr first, StmtPtr second, SourceLoc loc = {});
  static StmtPtr if_(CondPtr cond, StmtPtr then_branch, StmtPtr else_branch, SourceLoc loc = {});
  static StmtPtr while_(CondPtr cond, StmtPtr body, SourceLoc loc = {});
};

StmtPtr parse(std::string_view source);
ExprPtr parse_expr(std::string_view source);

struct ClosednessViolation {
  Stmt::Kind kind; // Break or Continue
  SourceLoc loc;
};

/// One record per `break`/`continue` that is not nested inside a `while`.
std::vector<ClosednessViolation> check_closed(const Stmt &program);

// Structural equality; source locations are ignored.
bool equal(const Expr &a, const Expr &b);
bool equal(const Cond &a, const Cond &b);
bool equal(const Stmt &a, const Stmt &b);

std::string to_source(const Expr &e);
std::string to_source(const Cond &c);
std::string to_source(const Stmt &s);

/// Renders the logical negation of `c`; comparisons are flipped (`x >= 1`
/// becomes `x < 1`), anything else is wrapped in `!(...)`.
std::string negated_source(const Cond &c);

void collect_vars(const Expr &e, std::set<std::string> &out);
void collect_vars(const Cond &c, std::set<std::string> &out);

/// True if `needle` occurs as a subexpression of `haystack`.
bool contains_subexpr(const Expr &haystack, const Expr &needle);
bool contains_subexpr(const Cond &haystack, const Expr &needle);

std::size_t count_nodes(const Stmt &s);

} // namespace splopt
