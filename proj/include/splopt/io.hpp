/// \file
/// JSON instance files and Graphviz output.
///
/// Instance files describe a graph by its vertices and edges plus the data of
/// one problem kind ("pcsp", "lospre" or "bank"). The decomposition is
/// recovered from the graph itself. See README.md for the schema.

#pragma once

#include "splopt/bankselect.hpp"
#include "splopt/lospre.hpp"
#include "splopt/pcsp.hpp"

#include <memory>
#include <string>
#include <variant>

namespace splopt {

/// Malformed or inconsistent instance file. `key()` is the JSON path of the
/// offending entry, e.g. `edges[2].src`.
class InstanceError : public Error {
public:
  InstanceError(std::string key, const std::string &message);
  const std::string &key() const { return key_; }

private:
  std::string key_;
};

enum class InstanceKind { Pcsp, Lospre, Bank };
enum class CostKind { Int, Lex2 };

using AnyInstance = std::variant<PcspInstance<IntCost>, PcspInstance<Lex2Cost>, LospreInstance<IntCost>,
                                 LospreInstance<Lex2Cost>, BankInstance>;

struct LoadedInstance {
  InstanceKind kind = InstanceKind::Pcsp;
  CostKind cost_kind = CostKind::Int;
  std::shared_ptr<const SplDecomposition> decomposition;
  std::shared_ptr<const Cfg> cfg;
  std::vector<std::string> edge_names; // by Cfg edge index
  AnyInstance instance;
};

LoadedInstance parse_instance(const std::string &json_text);
LoadedInstance load_instance(const std::string &path);

/// Serializes with every cost spelled out, so loading the result gives an
/// instance with the same objective.
std::string dump_instance(const LoadedInstance &inst);

std::string emit_dot(const SplGraph &g, const std::unordered_map<VertexId, std::string> &names = {});
std::string emit_dot(const Cfg &cfg);
/// The decomposition as a tree; atoms show their edge's label.
std::string emit_dot(const SplDecomposition &d);

/// Nested JSON rendering of a decomposition.
std::string decomposition_json(const SplDecomposition &d);

/// One-line term such as `Loop(Parallel(Series(eps, break), ...))`.
std::string decomposition_term(const SplDecomposition &d);

std::string read_file(const std::string &path);

} // namespace splopt
