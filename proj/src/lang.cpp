#include "splopt/lang.hpp"

#include <cctype>
#include <utility>

namespace splopt {

ParseError::ParseError(SourceLoc loc, std::string token, const std::string &message)
    : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message +
            " (at '" + token + "')"),
      loc_(loc), token_(std::move(token)) {}

// --- constructors -----------------------------------------------------------

ExprPtr Expr::integer(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Int;
  e->value = v;
  return e;
}

ExprPtr Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::neg(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Neg;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

CondPtr Cond::constant(bool v) {
  auto c = std::make_shared<Cond>();
  c->kind = v ? Kind::True : Kind::False;
  return c;
}

CondPtr Cond::nondet() {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Nondet;
  return c;
}

CondPtr Cond::truth(ExprPtr e) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Truth;
  c->lhs = std::move(e);
  return c;
}

CondPtr Cond::compare(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Cmp;
  c->op = op;
  c->lhs = std::move(lhs);
  c->rhs = std::move(rhs);
  return c;
}

CondPtr Cond::conj(CondPtr a, CondPtr b) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::And;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}

CondPtr Cond::disj(CondPtr a, CondPtr b) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Or;
  c->a = std::move(a);
  c->b = std::move(b);
  return c;
}

CondPtr Cond::negate(CondPtr a) {
  auto c = std::make_shared<Cond>();
  c->kind = Kind::Not;
  c->a = std::move(a);
  return c;
}

namespace {

StmtPtr make_stmt(Stmt::Kind kind, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = kind;
  s->loc = loc;
  s->counts.statements = 1;
  return s;
}

void tally(Stmt &s) {
  s.counts = {1, s.kind == Stmt::Kind::Seq, s.kind == Stmt::Kind::While};
  for (const Stmt *child : {s.first.get(), s.second.get()})
    if (child) {
      s.counts.statements += child->counts.statements;
      s.counts.seqs += child->counts.seqs;
      s.counts.loops += child->counts.loops;
    }
}

} // namespace

StmtPtr Stmt::skip(SourceLoc loc) { return make_stmt(Kind::Skip, loc); }

StmtPtr Stmt::assign(std::string var, ExprPtr expr, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::Assign;
  s->loc = loc;
  s->var = std::move(var);
  s->expr = std::move(expr);
  s->counts.statements = 1;
  return s;
}

StmtPtr Stmt::brk(SourceLoc loc) { return make_stmt(Kind::Break, loc); }
StmtPtr Stmt::cont(SourceLoc loc) { return make_stmt(Kind::Continue, loc); }

StmtPtr Stmt::seq(StmtPtr first, StmtPtr second, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::Seq;
  s->loc = loc;
  s->first = std::move(first);
  s->second = std::move(second);
  tally(*s);
  return s;
}

StmtPtr Stmt::if_(CondPtr cond, StmtPtr then_branch, StmtPtr else_branch, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::If;
  s->loc = loc;
  s->cond = std::move(cond);
  s->first = std::move(then_branch);
  s->second = std::move(else_branch);
  tally(*s);
  return s;
}

StmtPtr Stmt::while_(CondPtr cond, StmtPtr body, SourceLoc loc) {
  auto s = std::make_shared<Stmt>();
  s->kind = Kind::While;
  s->loc = loc;
  s->cond = std::move(cond);
  s->first = std::move(body);
  tally(*s);
  return s;
}

// --- lexer ------------------------------------------------------------------

namespace {

enum class Tok {
  Eof, Ident, Int,
  KwSkip, KwBreak, KwContinue, KwIf, KwElse, KwWhile, KwTrue, KwFalse,
  LBrace, RBrace, LParen, RParen, Semi, Assign,
  Plus, Minus, Star,
  EqEq, NotEq, Lt, Le, Gt, Ge, AndAnd, OrOr, Bang,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceLoc loc;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    Token t;
    t.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "skip") t.kind = Tok::KwSkip;
      else if (t.text == "break") t.kind = Tok::KwBreak;
      else if (t.text == "continue") t.kind = Tok::KwContinue;
      else if (t.text == "if") t.kind = Tok::KwIf;
      else if (t.text == "else") t.kind = Tok::KwElse;
      else if (t.text == "while") t.kind = Tok::KwWhile;
      else if (t.text == "true") t.kind = Tok::KwTrue;
      else if (t.text == "false") t.kind = Tok::KwFalse;
      else t.kind = Tok::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    std::size_t len = 1;
    if (two('=', '=')) { t.kind = Tok::EqEq; len = 2; }
    else if (two('!', '=')) { t.kind = Tok::NotEq; len = 2; }
    else if (two('<', '=')) { t.kind = Tok::Le; len = 2; }
    else if (two('>', '=')) { t.kind = Tok::Ge; len = 2; }
    else if (two('&', '&')) { t.kind = Tok::AndAnd; len = 2; }
    else if (two('|', '|')) { t.kind = Tok::OrOr; len = 2; }
    else {
      switch (c) {
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ';': t.kind = Tok::Semi; break;
      case '=': t.kind = Tok::Assign; break;
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '<': t.kind = Tok::Lt; break;
      case '>': t.kind = Tok::Gt; break;
      case '!': t.kind = Tok::Bang; break;
      default:
        throw ParseError(t.loc, std::string(1, c), "unexpected character");
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = Tok::Eof;
  eof.text = "<eof>";
  eof.loc = {line, col};
  out.push_back(std::move(eof));
  return out;
}

// --- parser -----------------------------------------------------------------

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  StmtPtr program() {
    if (at(Tok::Eof))
      return Stmt::skip({1, 1});
    StmtPtr s = sequence();
    if (!at(Tok::Eof))
      fail("expected ';' or end of input");
    return s;
  }

  ExprPtr standalone_expr() {
    ExprPtr e = expr();
    if (!at(Tok::Eof))
      fail("unexpected token after expression");
    return e;
  }

private:
  const Token &peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  const Token &take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(peek().loc, peek().text, msg);
  }

  void expect(Tok k, const char *what) {
    if (!at(k))
      fail(std::string("expected ") + what);
    take();
  }

  // Right-nested: a; b; c is Seq(a, Seq(b, c)).
  StmtPtr sequence() {
    std::vector<StmtPtr> items;
    items.push_back(statement());
    while (at(Tok::Semi)) {
      take();
      if (at(Tok::RBrace) || at(Tok::Eof))
        break;
      items.push_back(statement());
    }
    StmtPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;)
      acc = Stmt::seq(items[i], acc, items[i]->loc);
    return acc;
  }

  StmtPtr block() {
    if (!at(Tok::LBrace))
      fail("expected '{'");
    Token open = take();
    if (at(Tok::RBrace)) {
      take();
      return Stmt::skip(open.loc);
    }
    if (at(Tok::Eof))
      throw ParseError(open.loc, open.text, "unclosed '{'");
    StmtPtr body = sequence();
    if (at(Tok::Eof))
      throw ParseError(open.loc, open.text, "unclosed '{'");
    expect(Tok::RBrace, "'}'");
    return body;
  }

  StmtPtr statement() {
    const Token &t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
    case Tok::KwSkip:
      take();
      return Stmt::skip(loc);
    case Tok::KwBreak:
      take();
      return Stmt::brk(loc);
    case Tok::KwContinue:
      take();
      return Stmt::cont(loc);
    case Tok::Ident: {
      std::string name = take().text;
      expect(Tok::Assign, "'='");
      return Stmt::assign(std::move(name), expr(), loc);
    }
    case Tok::KwIf: {
      take();
      CondPtr c = cond();
      StmtPtr then_branch = block();
      StmtPtr else_branch;
      if (at(Tok::KwElse)) {
        take();
        else_branch = block();
      } else {
        else_branch = Stmt::skip(loc);
      }
      return Stmt::if_(std::move(c), std::move(then_branch), std::move(else_branch), loc);
    }
    case Tok::KwWhile: {
      take();
      CondPtr c = cond();
      return Stmt::while_(std::move(c), block(), loc);
    }
    case Tok::LBrace:
      return block();
    default:
      fail("expected a statement");
    }
  }

  CondPtr cond() {
    CondPtr lhs = cond_and();
    while (at(Tok::OrOr)) {
      take();
      lhs = Cond::disj(lhs, cond_and());
    }
    return lhs;
  }

  CondPtr cond_and() {
    CondPtr lhs = cond_unary();
    while (at(Tok::AndAnd)) {
      take();
      lhs = Cond::conj(lhs, cond_unary());
    }
    return lhs;
  }

  CondPtr cond_unary() {
    if (at(Tok::Bang)) {
      take();
      return Cond::negate(cond_unary());
    }
    if (at(Tok::Star)) {
      take();
      return Cond::nondet();
    }
    if (at(Tok::KwTrue) || at(Tok::KwFalse)) {
      bool v = take().kind == Tok::KwTrue;
      return Cond::constant(v);
    }
    // `(` may open either a parenthesized condition or an arithmetic
    // operand; try the comparison reading first and fall back.
    std::size_t mark = pos_;
    if (at(Tok::LParen)) {
      try {
        return comparison();
      } catch (const ParseError &) {
        pos_ = mark;
      }
      take();
      CondPtr inner = cond();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return comparison();
  }

  CondPtr comparison() {
    ExprPtr lhs = expr();
    CmpOp op;
    switch (peek().kind) {
    case Tok::EqEq: op = CmpOp::Eq; break;
    case Tok::NotEq: op = CmpOp::Ne; break;
    case Tok::Lt: op = CmpOp::Lt; break;
    case Tok::Le: op = CmpOp::Le; break;
    case Tok::Gt: op = CmpOp::Gt; break;
    case Tok::Ge: op = CmpOp::Ge; break;
    default:
      if (at(Tok::LBrace) || at(Tok::AndAnd) || at(Tok::OrOr) || at(Tok::RParen))
        return Cond::truth(lhs);
      fail("expected a comparison operator");
    }
    take();
    return Cond::compare(op, lhs, expr());
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      auto kind = take().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = Expr::binary(kind, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at(Tok::Star)) {
      take();
      lhs = Expr::binary(Expr::Kind::Mul, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      take();
      return Expr::neg(unary());
    }
    return primary();
  }

  ExprPtr primary() {
    const Token &t = peek();
    if (t.kind == Tok::Int) {
      std::string text = take().text;
      try {
        return Expr::integer(std::stoll(text));
      } catch (const std::out_of_range &) {
        throw ParseError(t.loc, text, "integer literal out of range");
      }
    }
    if (t.kind == Tok::Ident)
      return Expr::var(take().text);
    if (t.kind == Tok::LParen) {
      take();
      ExprPtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

StmtPtr parse(std::string_view source) { return Parser(lex(source)).program(); }

ExprPtr parse_expr(std::string_view source) { return Parser(lex(source)).standalone_expr(); }

// --- closedness -------------------------------------------------------------

std::vector<ClosednessViolation> check_closed(const Stmt &program) {
  std::vector<ClosednessViolation> out;
  struct Item {
    const Stmt *s;
    int loop_depth;
  };
  // Explicit stack; long sequences nest deeply.
  std::vector<Item> stack{{&program, 0}};
  while (!stack.empty()) {
    auto [s, depth] = stack.back();
    stack.pop_back();
    switch (s->kind) {
    case Stmt::Kind::Break:
    case Stmt::Kind::Continue:
      if (depth == 0)
        out.push_back({s->kind, s->loc});
      break;
    case Stmt::Kind::Seq:
    case Stmt::Kind::If:
      stack.push_back({s->second.get(), depth});
      stack.push_back({s->first.get(), depth});
      break;
    case Stmt::Kind::While:
      stack.push_back({s->first.get(), depth + 1});
      break;
    default:
      break;
    }
  }
  return out;
}

// --- equality ---------------------------------------------------------------

bool equal(const Expr &a, const Expr &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Expr::Kind::Int:
    return a.value == b.value;
  case Expr::Kind::Var:
    return a.name == b.name;
  case Expr::Kind::Neg:
    return equal(*a.lhs, *b.lhs);
  default:
    return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

bool equal(const Cond &a, const Cond &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Cond::Kind::Truth:
    return equal(*a.lhs, *b.lhs);
  case Cond::Kind::Cmp:
    return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  case Cond::Kind::And:
  case Cond::Kind::Or:
    return equal(*a.a, *b.a) && equal(*a.b, *b.b);
  case Cond::Kind::Not:
    return equal(*a.a, *b.a);
  default:
    return true;
  }
}

bool equal(const Stmt &a, const Stmt &b) {
  std::vector<std::pair<const Stmt *, const Stmt *>> stack{{&a, &b}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (x->kind != y->kind)
      return false;
    switch (x->kind) {
    case Stmt::Kind::Assign:
      if (x->var != y->var || !equal(*x->expr, *y->expr))
        return false;
      break;
    case Stmt::Kind::Seq:
      stack.emplace_back(x->first.get(), y->first.get());
      stack.emplace_back(x->second.get(), y->second.get());
      break;
    case Stmt::Kind::If:
      if (!equal(*x->cond, *y->cond))
        return false;
      stack.emplace_back(x->first.get(), y->first.get());
      stack.emplace_back(x->second.get(), y->second.get());
      break;
    case Stmt::Kind::While:
      if (!equal(*x->cond, *y->cond))
        return false;
      stack.emplace_back(x->first.get(), y->first.get());
      break;
    default:
      break;
    }
  }
  return true;
}

// --- printing ---------------------------------------------------------------

namespace {

bool is_binary(const Expr &e) {
  return e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub || e.kind == Expr::Kind::Mul;
}

std::string operand(const Expr &e) {
  return is_binary(e) ? "(" + to_source(e) + ")" : to_source(e);
}

const char *cmp_text(CmpOp op) {
  switch (op) {
  case CmpOp::Eq: return "==";
  case CmpOp::Ne: return "!=";
  case CmpOp::Lt: return "<";
  case CmpOp::Le: return "<=";
  case CmpOp::Gt: return ">";
  case CmpOp::Ge: return ">=";
  }
  return "?";
}

CmpOp flip(CmpOp op) {
  switch (op) {
  case CmpOp::Eq: return CmpOp::Ne;
  case CmpOp::Ne: return CmpOp::Eq;
  case CmpOp::Lt: return CmpOp::Ge;
  case CmpOp::Le: return CmpOp::Gt;
  case CmpOp::Gt: return CmpOp::Le;
  case CmpOp::Ge: return CmpOp::Lt;
  }
  return op;
}

std::string cond_operand(const Cond &c) {
  if (c.kind == Cond::Kind::And || c.kind == Cond::Kind::Or)
    return "(" + to_source(c) + ")";
  return to_source(c);
}

void print_stmt(const Stmt &s, std::string &out);

void print_block(const Stmt &s, std::string &out) {
  out += "{ ";
  print_stmt(s, out);
  out += " }";
}

void print_stmt(const Stmt &s, std::string &out) {
  switch (s.kind) {
  case Stmt::Kind::Skip:
    out += "skip";
    break;
  case Stmt::Kind::Assign:
    out += s.var + " = " + to_source(*s.expr);
    break;
  case Stmt::Kind::Break:
    out += "break";
    break;
  case Stmt::Kind::Continue:
    out += "continue";
    break;
  case Stmt::Kind::Seq:
    // A left-nested sequence needs braces to survive re-parsing.
    if (s.first->kind == Stmt::Kind::Seq)
      print_block(*s.first, out);
    else
      print_stmt(*s.first, out);
    out += "; ";
    print_stmt(*s.second, out);
    break;
  case Stmt::Kind::If:
    out += "if " + to_source(*s.cond) + " ";
    print_block(*s.first, out);
    out += " else ";
    print_block(*s.second, out);
    break;
  case Stmt::Kind::While:
    out += "while " + to_source(*s.cond) + " ";
    print_block(*s.first, out);
    break;
  }
}

} // namespace

std::string to_source(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Int:
    return std::to_string(e.value);
  case Expr::Kind::Var:
    return e.name;
  case Expr::Kind::Neg:
    return "-" + operand(*e.lhs);
  case Expr::Kind::Add:
    return operand(*e.lhs) + " + " + operand(*e.rhs);
  case Expr::Kind::Sub:
    return operand(*e.lhs) + " - " + operand(*e.rhs);
  case Expr::Kind::Mul:
    return operand(*e.lhs) + " * " + operand(*e.rhs);
  }
  return "?";
}

std::string to_source(const Cond &c) {
  switch (c.kind) {
  case Cond::Kind::True:
    return "true";
  case Cond::Kind::False:
    return "false";
  case Cond::Kind::Nondet:
    return "*";
  case Cond::Kind::Truth:
    return to_source(*c.lhs);
  case Cond::Kind::Cmp:
    return to_source(*c.lhs) + " " + cmp_text(c.op) + " " + to_source(*c.rhs);
  case Cond::Kind::And:
    return cond_operand(*c.a) + " && " + cond_operand(*c.b);
  case Cond::Kind::Or:
    return cond_operand(*c.a) + " || " + cond_operand(*c.b);
  case Cond::Kind::Not:
    return "!(" + to_source(*c.a) + ")";
  }
  return "?";
}

std::string to_source(const Stmt &s) {
  std::string out;
  print_stmt(s, out);
  return out;
}

std::string negated_source(const Cond &c) {
  switch (c.kind) {
  case Cond::Kind::True:
    return "false";
  case Cond::Kind::False:
    return "true";
  case Cond::Kind::Nondet:
    return "!*";
  case Cond::Kind::Cmp:
    return to_source(*c.lhs) + " " + cmp_text(flip(c.op)) + " " + to_source(*c.rhs);
  case Cond::Kind::Not:
    return to_source(*c.a);
  default:
    return "!(" + to_source(c) + ")";
  }
}

// --- queries ----------------------------------------------------------------

void collect_vars(const Expr &e, std::set<std::string> &out) {
  switch (e.kind) {
  case Expr::Kind::Int:
    return;
  case Expr::Kind::Var:
    out.insert(e.name);
    return;
  case Expr::Kind::Neg:
    collect_vars(*e.lhs, out);
    return;
  default:
    collect_vars(*e.lhs, out);
    collect_vars(*e.rhs, out);
  }
}

void collect_vars(const Cond &c, std::set<std::string> &out) {
  switch (c.kind) {
  case Cond::Kind::Truth:
    collect_vars(*c.lhs, out);
    return;
  case Cond::Kind::Cmp:
    collect_vars(*c.lhs, out);
    collect_vars(*c.rhs, out);
    return;
  case Cond::Kind::And:
  case Cond::Kind::Or:
    collect_vars(*c.a, out);
    collect_vars(*c.b, out);
    return;
  case Cond::Kind::Not:
    collect_vars(*c.a, out);
    return;
  default:
    return;
  }
}

bool contains_subexpr(const Expr &haystack, const Expr &needle) {
  if (equal(haystack, needle))
    return true;
  switch (haystack.kind) {
  case Expr::Kind::Int:
  case Expr::Kind::Var:
    return false;
  case Expr::Kind::Neg:
    return contains_subexpr(*haystack.lhs, needle);
  default:
    return contains_subexpr(*haystack.lhs, needle) || contains_subexpr(*haystack.rhs, needle);
  }
}

bool contains_subexpr(const Cond &haystack, const Expr &needle) {
  switch (haystack.kind) {
  case Cond::Kind::Truth:
    return contains_subexpr(*haystack.lhs, needle);
  case Cond::Kind::Cmp:
    return contains_subexpr(*haystack.lhs, needle) || contains_subexpr(*haystack.rhs, needle);
  case Cond::Kind::And:
  case Cond::Kind::Or:
    return contains_subexpr(*haystack.a, needle) || contains_subexpr(*haystack.b, needle);
  case Cond::Kind::Not:
    return contains_subexpr(*haystack.a, needle);
  default:
    return false;
  }
}

std::size_t count_nodes(const Stmt &s) {
  std::size_t n = 0;
  std::vector<const Stmt *> stack{&s};
  while (!stack.empty()) {
    const Stmt *x = stack.back();
    stack.pop_back();
    ++n;
    if (x->first)
      stack.push_back(x->first.get());
    if (x->second)
      stack.push_back(x->second.get());
  }
  return n;
}

} // namespace splopt
