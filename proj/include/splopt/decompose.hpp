/// \file
/// SPL decompositions (parse trees of CFGs under the SPL grammar) and the
/// indexed control-flow graph view used by the analyses and solvers.

#pragma once

#include "splopt/lang.hpp"
#include "splopt/spl_graph.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace splopt {

enum class NodeKind { Atom, Series, Parallel, Loop };

/// The at most five edges a node adds itself, stored inline.
class NodeEdges {
public:
  void push_back(EdgeId e) {
    if (count_ == items_.size())
      throw Error("a decomposition node owns at most five edges");
    items_[count_++] = e;
  }
  void pop_back() { --count_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  EdgeId operator[](std::size_t i) const { return items_[i]; }
  const EdgeId *begin() const { return items_.data(); }
  const EdgeId *end() const { return items_.data() + count_; }

private:
  std::array<EdgeId, 5> items_{};
  std::uint8_t count_ = 0;
};

struct DecompNode {
  NodeKind kind = NodeKind::Atom;
  AtomKind atom = AtomKind::Epsilon; // Atom only
  int first = -1;                    // child index; Series/Parallel/Loop
  int second = -1;                   // Series/Parallel
  /// Specials of the subgraph this node denotes, as vertices of the final CFG.
  Specials specials;
  /// Atom: its single edge. Loop: the edges (S,S1), (S,T), (T1,S), (C1,S), (B1,T).
  NodeEdges edges;
};

/// Rooted parse tree. Nodes are stored parent-before-child with the root at
/// index 0, so a reverse sweep visits children before their parents.
class SplDecomposition {
public:
  SplDecomposition(std::vector<DecompNode> nodes, SplGraph graph,
                   std::unordered_map<VertexId, std::string> names = {});

  const std::vector<DecompNode> &nodes() const { return nodes_; }
  const DecompNode &node(std::size_t i) const { return nodes_[i]; }
  const DecompNode &root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }

  /// The graph the root denotes.
  const SplGraph &graph() const { return graph_; }
  const std::unordered_map<VertexId, std::string> &names() const { return names_; }

  /// Materializes the subgraph denoted by node `i`.
  SplGraph graph_of(std::size_t i) const;

  /// Checks arities and that each internal node's specials and edges are
  /// exactly what its operation produces from its children. Throws Error.
  void validate() const;

private:
  std::vector<DecompNode> nodes_;
  SplGraph graph_;
  std::unordered_map<VertexId, std::string> names_;
};

struct DecomposeStats {
  std::size_t steps = 0; // one per AST node visited
};

/// Maps a closed program to its SPL decomposition in time linear in the
/// program size. Throws Error for non-closed programs.
SplDecomposition decompose(const Stmt &program, DecomposeStats *stats = nullptr);

/// Indexed view of a CFG: dense vertex indices, adjacency lists, names.
class Cfg {
public:
  explicit Cfg(SplGraph graph, const std::unordered_map<VertexId, std::string> &names = {});

  const SplGraph &graph() const { return graph_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return graph_.edges().size(); }

  VertexId vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t index_of(VertexId v) const;
  std::optional<std::size_t> find(VertexId v) const;
  std::optional<std::size_t> find_by_name(const std::string &name) const;
  const std::string &name(std::size_t i) const { return names_[i]; }

  const Edge &edge(std::size_t e) const { return graph_.edges()[e]; }
  std::size_t edge_index(EdgeId id) const;
  std::size_t src(std::size_t e) const { return edge_src_[e]; }
  std::size_t dst(std::size_t e) const { return edge_dst_[e]; }

  std::span<const std::size_t> out_edges(std::size_t v) const { return out_[v]; }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_[v]; }

  std::size_t special(Role r) const { return index_of(graph_.specials()[r]); }

private:
  SplGraph graph_;
  std::vector<VertexId> vertices_;
  // Ids from one IdSource are dense, so positions are normally looked up by
  // id value; widely scattered ids fall back to hash maps.
  std::vector<std::size_t> index_;      // by VertexId value
  std::vector<std::size_t> edge_index_; // by EdgeId value
  std::unordered_map<VertexId, std::size_t> sparse_index_;
  std::unordered_map<EdgeId, std::size_t> sparse_edge_index_;
  std::vector<std::string> names_;
  std::vector<std::size_t> edge_src_;
  std::vector<std::size_t> edge_dst_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

std::shared_ptr<const Cfg> cfg_of(const SplDecomposition &d);

/// Finds an SPL decomposition of a graph given only its edges and its
/// specials. Used for graphs that arrive without a program (instance files).
/// The search backtracks; `budget` caps the number of subproblems tried.
/// Returns nullopt if the graph is not an SPL graph or the budget runs out.
std::optional<SplDecomposition> recognize(const SplGraph &graph,
                                          std::unordered_map<VertexId, std::string> names = {},
                                          std::size_t budget = 200000);

} // namespace splopt
