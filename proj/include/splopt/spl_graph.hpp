/// \file
/// SPL graphs: directed multigraphs with distinguished start, terminate,
/// break and continue vertices, closed under series, parallel and loop
/// composition.

#pragma once

#include "splopt/lang.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace splopt {

struct VertexId {
  std::uint32_t value = 0;
  auto operator<=>(const VertexId &) const = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  auto operator<=>(const EdgeId &) const = default;
};

/// Monotone source of fresh vertex and edge ids.
class IdSource {
public:
  VertexId vertex() { return VertexId{next_vertex_++}; }
  EdgeId edge() { return EdgeId{next_edge_++}; }

  std::uint32_t vertices_issued() const { return next_vertex_; }
  std::uint32_t edges_issued() const { return next_edge_; }

private:
  std::uint32_t next_vertex_ = 0;
  std::uint32_t next_edge_ = 0;
};

enum class AtomKind { Epsilon, Break, Continue };

/// A branch or loop condition attached to an edge.
struct Guard {
  enum class Origin { If, While };

  CondPtr cond;
  bool negated = false;
  Origin origin = Origin::If;
};

/// The guards of one edge. Most edges have none, so the list is a single
/// pointer that stays null until the first push_back; copies are deep.
class GuardList {
public:
  GuardList() = default;
  GuardList(const GuardList &other)
      : items_(other.items_ ? std::make_unique<std::vector<Guard>>(*other.items_) : nullptr) {}
  GuardList(GuardList &&) noexcept = default;
  GuardList &operator=(const GuardList &other) {
    if (this != &other)
      items_ = other.items_ ? std::make_unique<std::vector<Guard>>(*other.items_) : nullptr;
    return *this;
  }
  GuardList &operator=(GuardList &&) noexcept = default;

  void push_back(Guard g) {
    if (!items_)
      items_ = std::make_unique<std::vector<Guard>>();
    items_->push_back(std::move(g));
  }
  std::size_t size() const { return items_ ? items_->size() : 0; }
  bool empty() const { return size() == 0; }
  const Guard &operator[](std::size_t i) const { return (*items_)[i]; }
  const Guard *begin() const { return items_ ? items_->data() : nullptr; }
  const Guard *end() const { return items_ ? items_->data() + items_->size() : nullptr; }

private:
  std::unique_ptr<std::vector<Guard>> items_;
};

/// What an edge does when control flows along it.
struct Payload {
  enum class Action : std::uint8_t {
    None,             // pure control transfer (loop entry/exit)
    Skip,
    Assign,
    Break,
    Continue,
    Loopback,         // end of loop body back to the head
    ContinueDispatch, // body's continue vertex back to the head
    BreakDispatch,    // body's break vertex to the loop exit
    Opaque,           // label only, e.g. graphs loaded from files
  };

  GuardList guards;
  Action action = Action::None;
  std::string name; // Assign: the target variable; Opaque: the label
  ExprPtr expr;     // Assign

  static Payload skip();
  static Payload assign(std::string var, ExprPtr expr);
  static Payload of(Action action);
  static Payload opaque(std::string text);
};

/// Human-readable label, e.g. `x >= y, x = x - y` or `break`.
std::string describe(const Payload &p);

struct Edge {
  EdgeId id;
  VertexId src;
  VertexId dst;
  Payload payload;
};

enum class Role { S = 0, T = 1, B = 2, C = 3 };

/// The (S, T, B, C) tuple of an SPL graph.
struct Specials {
  std::array<VertexId, 4> v{};

  VertexId s() const { return v[0]; }
  VertexId t() const { return v[1]; }
  VertexId b() const { return v[2]; }
  VertexId c() const { return v[3]; }
  VertexId operator[](Role r) const { return v[static_cast<int>(r)]; }
  bool operator==(const Specials &) const = default;
};

class SplGraph {
public:
  SplGraph() = default;

  /// Validates the invariants: distinct specials, unique edge ids, every
  /// endpoint a member of `vertices`. Throws Error otherwise.
  SplGraph(std::vector<VertexId> vertices, std::vector<Edge> edges, Specials specials);

  /// No checks at all. For builders whose output is valid by construction;
  /// `vertices` must already be sorted.
  struct Unchecked {};
  SplGraph(Unchecked, std::vector<VertexId> vertices, std::vector<Edge> edges, Specials specials)
      : vertices_(std::move(vertices)), edges_(std::move(edges)), specials_(specials) {}

  const std::vector<VertexId> &vertices() const { return vertices_; }
  const std::vector<Edge> &edges() const { return edges_; }
  const Specials &specials() const { return specials_; }

  bool contains(VertexId v) const;
  std::size_t in_degree(VertexId v) const;
  std::size_t out_degree(VertexId v) const;

private:
  std::vector<VertexId> vertices_; // sorted
  std::vector<Edge> edges_;
  Specials specials_;
};

SplGraph atomic(AtomKind kind, Payload payload, IdSource &ids);

/// Merges T1 with S2 (the result keeps T1's id), B2 into B1 and C2 into C1.
/// Throws Error if the operands share vertex or edge ids.
SplGraph series(const SplGraph &g1, const SplGraph &g2);

/// Merges all four specials of g2 into those of g1.
SplGraph parallel(const SplGraph &g1, const SplGraph &g2);

/// Payloads of the five edges added by `loop`.
struct LoopPayloads {
  Payload enter = Payload::of(Payload::Action::None);
  Payload exit = Payload::of(Payload::Action::None);
  Payload loopback = Payload::of(Payload::Action::Loopback);
  Payload continue_dispatch = Payload::of(Payload::Action::ContinueDispatch);
  Payload break_dispatch = Payload::of(Payload::Action::BreakDispatch);
};

/// Adds fresh S, T, B, C and the edges (S,S1), (S,T), (T1,S), (C1,S), (B1,T),
/// whose ids are issued in that order.
SplGraph loop(const SplGraph &g1, IdSource &ids, const LoopPayloads &payloads = {});

/// No incoming edges at B and C.
bool is_closed(const SplGraph &g);

/// Renumbers vertices by a deterministic traversal that starts from S, T, B,
/// C and breaks ties by edge label, and returns the sorted edge list
/// (src, dst, label) under that numbering together with the vertex count.
/// Two SPL graphs that differ only in vertex and edge ids have equal
/// canonical forms whenever their labels resolve traversal ties.
struct CanonicalForm {
  std::size_t vertex_count = 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> edges;
  bool operator==(const CanonicalForm &) const = default;
};

CanonicalForm canonical_form(const SplGraph &g, bool with_labels = true);

} // namespace splopt

template <> struct std::hash<splopt::VertexId> {
  std::size_t operator()(splopt::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};

template <> struct std::hash<splopt::EdgeId> {
  std::size_t operator()(splopt::EdgeId e) const noexcept { return std::hash<std::uint32_t>{}(e.value); }
};
