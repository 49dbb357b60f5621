#include "splopt/io.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace splopt {

using nlohmann::json;

InstanceError::InstanceError(std::string key, const std::string &message)
    : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string id_string(const json &j, const std::string &key) {
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_number_integer())
    return std::to_string(j.get<long long>());
  throw InstanceError(key, "expected a string or integer id");
}

const json &require(const json &obj, const char *field, const std::string &key) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw InstanceError(key + "." + field, "missing");
  return *it;
}

template <class C> C parse_cost(const json &j, const std::string &key);

template <> IntCost parse_cost<IntCost>(const json &j, const std::string &key) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return IntCost::infinity();
  if (!j.is_number_integer())
    throw InstanceError(key, "expected an integer cost or \"inf\"");
  std::int64_t v = j.get<std::int64_t>();
  if (v == IntCost::kInf)
    return IntCost::infinity();
  return IntCost(v);
}

template <> Lex2Cost parse_cost<Lex2Cost>(const json &j, const std::string &key) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return Lex2Cost::infinity();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw InstanceError(key, "expected a pair [a, b] of integers or \"inf\"");
  return Lex2Cost(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

json cost_json(IntCost c) { return c.is_infinite() ? json("inf") : json(c.value); }
json cost_json(Lex2Cost c) { return c.is_infinite() ? json("inf") : json::array({c.first, c.second}); }

// The graph section shared by all kinds.
struct GraphPart {
  std::vector<std::string> vertex_names; // by VertexId value
  std::unordered_map<std::string, std::size_t> vertex_index;
  std::vector<std::string> edge_names;
  std::unordered_map<std::string, std::size_t> edge_index;
  std::shared_ptr<const SplDecomposition> decomposition;
  std::shared_ptr<const Cfg> cfg;

  std::size_t vertex(const json &j, const std::string &key) const {
    std::string id = id_string(j, key);
    auto it = vertex_index.find(id);
    if (it == vertex_index.end())
      throw InstanceError(key, "unknown vertex \"" + id + "\"");
    return it->second;
  }
  std::size_t edge(const json &j, const std::string &key) const {
    std::string id = id_string(j, key);
    auto it = edge_index.find(id);
    if (it == edge_index.end())
      throw InstanceError(key, "unknown edge \"" + id + "\"");
    return it->second;
  }
};

GraphPart parse_graph(const json &root) {
  GraphPart g;
  const json &vertices = require(root, "vertices", "");
  if (!vertices.is_array())
    throw InstanceError("vertices", "expected an array");
  std::array<std::optional<std::size_t>, 4> roles;
  const char *role_names[4] = {"S", "T", "B", "C"};
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    std::string key = "vertices[" + std::to_string(i) + "]";
    const json &v = vertices[i];
    if (!v.is_object())
      throw InstanceError(key, "expected an object");
    std::string id = id_string(require(v, "id", key), key + ".id");
    if (!g.vertex_index.emplace(id, i).second)
      throw InstanceError(key + ".id", "duplicate vertex \"" + id + "\"");
    g.vertex_names.push_back(id);
    if (auto it = v.find("role"); it != v.end()) {
      std::string r = it->is_string() ? it->get<std::string>() : "";
      int k = 0;
      while (k < 4 && r != role_names[k])
        ++k;
      if (k == 4)
        throw InstanceError(key + ".role", "expected one of S, T, B, C");
      if (roles[k])
        throw InstanceError(key + ".role", std::string("role ") + role_names[k] + " given twice");
      roles[k] = i;
    }
  }

  const json &edges = require(root, "edges", "");
  if (!edges.is_array())
    throw InstanceError("edges", "expected an array");
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string key = "edges[" + std::to_string(i) + "]";
    const json &e = edges[i];
    if (!e.is_object())
      throw InstanceError(key, "expected an object");
    std::string id = e.contains("id") ? id_string(e["id"], key + ".id") : "e" + std::to_string(i);
    if (!g.edge_index.emplace(id, i).second)
      throw InstanceError(key + ".id", "duplicate edge \"" + id + "\"");
    g.edge_names.push_back(id);
    std::size_t src = g.vertex(require(e, "src", key), key + ".src");
    std::size_t dst = g.vertex(require(e, "dst", key), key + ".dst");
    ends.emplace_back(src, dst);
    labels.push_back(e.contains("label") && e["label"].is_string() ? e["label"].get<std::string>() : "");
  }

  // Entry and exit may be left implicit when they are unambiguous.
  const std::size_t n = g.vertex_names.size();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (auto [s, d] : ends) {
    ++outdeg[s];
    ++indeg[d];
  }
  auto is_role = [&](std::size_t v) {
    for (auto &r : roles)
      if (r && *r == v)
        return true;
    return false;
  };
  auto infer = [&](int k, auto pred) {
    if (roles[k])
      return;
    std::optional<std::size_t> found;
    for (std::size_t v = 0; v < n; ++v) {
      if (is_role(v) || !pred(v))
        continue;
      if (found)
        throw InstanceError("vertices", std::string("cannot infer vertex with role ") + role_names[k] +
                                            "; mark it with \"role\"");
      found = v;
    }
    if (!found)
      throw InstanceError("vertices", std::string("no vertex can take role ") + role_names[k]);
    roles[k] = found;
  };
  infer(0, [&](std::size_t v) { return indeg[v] == 0 && outdeg[v] > 0; });
  infer(1, [&](std::size_t v) { return outdeg[v] == 0 && indeg[v] > 0; });
  for (int k = 2; k < 4; ++k) {
    if (roles[k])
      continue;
    std::string name = role_names[k];
    while (g.vertex_index.count(name))
      name = "_" + name;
    roles[k] = g.vertex_names.size();
    g.vertex_index.emplace(name, g.vertex_names.size());
    g.vertex_names.push_back(name);
  }

  std::vector<VertexId> vids;
  std::unordered_map<VertexId, std::string> names;
  for (std::size_t v = 0; v < g.vertex_names.size(); ++v) {
    vids.push_back(VertexId{static_cast<std::uint32_t>(v)});
    names.emplace(vids.back(), g.vertex_names[v]);
  }
  std::vector<Edge> es;
  for (std::size_t i = 0; i < ends.size(); ++i)
    es.push_back(Edge{EdgeId{static_cast<std::uint32_t>(i)}, vids[ends[i].first], vids[ends[i].second],
                      Payload::opaque(labels[i].empty() ? g.edge_names[i] : labels[i])});
  Specials sp{{vids[*roles[0]], vids[*roles[1]], vids[*roles[2]], vids[*roles[3]]}};
  SplGraph graph;
  try {
    graph = SplGraph(std::move(vids), std::move(es), sp);
  } catch (const Error &e) {
    throw InstanceError("edges", e.what());
  }
  auto d = recognize(graph, std::move(names));
  if (!d)
    throw InstanceError("edges", "the graph has no SPL decomposition with the given S, T, B, C");
  g.decomposition = std::make_shared<const SplDecomposition>(std::move(*d));
  g.cfg = cfg_of(*g.decomposition);
  return g;
}

// Domain of one vertex: a size, or a list of value names.
struct Domain {
  std::size_t size = 0;
  std::vector<std::string> names;

  std::size_t value(const json &j, const std::string &key) const {
    if (j.is_number_integer()) {
      auto v = j.get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= size)
        throw InstanceError(key, "value " + std::to_string(v) + " outside the domain");
      return static_cast<std::size_t>(v);
    }
    if (j.is_string()) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == j.get<std::string>())
          return i;
      throw InstanceError(key, "value \"" + j.get<std::string>() + "\" is not in the domain");
    }
    throw InstanceError(key, "expected a value index or name");
  }
};

Domain parse_domain(const json &j, const std::string &key) {
  Domain d;
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    d.size = static_cast<std::size_t>(j.get<long long>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      d.names.push_back(id_string(j[i], key + "[" + std::to_string(i) + "]"));
    d.size = d.names.size();
  } else {
    throw InstanceError(key, "expected a size or a list of values");
  }
  if (d.size == 0)
    throw InstanceError(key, "a domain needs at least one value");
  return d;
}

template <class C> PcspInstance<C> parse_pcsp(const json &root, const GraphPart &g) {
  const Cfg &cfg = *g.cfg;
  const std::size_t n = cfg.num_vertices();
  std::optional<Domain> shared;
  if (root.contains("domain"))
    shared = parse_domain(root["domain"], "domain");
  auto domains = std::make_shared<std::vector<Domain>>(n);
  const json &vertices = root["vertices"];
  for (std::size_t v = 0; v < n; ++v) {
    std::string key = "vertices[" + std::to_string(v) + "].domain";
    if (v < vertices.size() && vertices[v].contains("domain"))
      (*domains)[v] = parse_domain(vertices[v]["domain"], key);
    else if (shared)
      (*domains)[v] = *shared;
    else if (v >= vertices.size()) // a synthesized isolated B or C
      (*domains)[v].size = 1;
    else
      throw InstanceError(key, "missing and no shared \"domain\" given");
  }

  auto edge_default = std::make_shared<C>(C::zero());
  auto edge_tables = std::make_shared<std::map<std::size_t, std::vector<C>>>();
  if (root.contains("edge_cost")) {
    const json &ec = root["edge_cost"];
    if (ec.contains("default"))
      *edge_default = parse_cost<C>(ec["default"], "edge_cost.default");
    if (ec.contains("entries")) {
      const json &entries = ec["entries"];
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string key = "edge_cost.entries[" + std::to_string(i) + "]";
        const json &en = entries[i];
        std::size_t e = g.edge(require(en, "edge", key), key + ".edge");
        const Domain &ds = (*domains)[cfg.src(e)];
        const Domain &dd = (*domains)[cfg.dst(e)];
        auto &table = (*edge_tables)[e];
        if (table.empty())
          table.assign(ds.size * dd.size, *edge_default);
        C c = parse_cost<C>(require(en, "cost", key), key + ".cost");
        // An omitted value applies to every value.
        for (std::size_t a = 0; a < ds.size; ++a) {
          if (en.contains("src_value") && ds.value(en["src_value"], key + ".src_value") != a)
            continue;
          for (std::size_t b = 0; b < dd.size; ++b) {
            if (en.contains("dst_value") && dd.value(en["dst_value"], key + ".dst_value") != b)
              continue;
            table[a * dd.size + b] = c;
          }
        }
      }
    }
  }

  auto node_default = std::make_shared<C>(C::zero());
  auto node_tables = std::make_shared<std::map<std::size_t, std::vector<C>>>();
  if (root.contains("node_cost")) {
    const json &nc = root["node_cost"];
    if (nc.contains("default"))
      *node_default = parse_cost<C>(nc["default"], "node_cost.default");
    if (nc.contains("entries")) {
      const json &entries = nc["entries"];
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string key = "node_cost.entries[" + std::to_string(i) + "]";
        const json &en = entries[i];
        std::size_t v = g.vertex(require(en, "vertex", key), key + ".vertex");
        const Domain &dv = (*domains)[v];
        auto &table = (*node_tables)[v];
        if (table.empty())
          table.assign(dv.size, *node_default);
        C c = parse_cost<C>(require(en, "cost", key), key + ".cost");
        for (std::size_t a = 0; a < dv.size; ++a)
          if (!en.contains("value") || dv.value(en["value"], key + ".value") == a)
            table[a] = c;
      }
    }
  }

  PcspInstance<C> p;
  p.cfg = g.cfg;
  for (const Domain &d : *domains)
    p.domain_size.push_back(d.size);
  auto cfgp = g.cfg;
  p.edge_cost = [cfgp, domains, edge_default, edge_tables](std::size_t e, std::size_t a, std::size_t b) {
    auto it = edge_tables->find(e);
    if (it == edge_tables->end())
      return *edge_default;
    return it->second[a * (*domains)[cfgp->dst(e)].size + b];
  };
  p.node_cost = [node_default, node_tables](std::size_t v, std::size_t a) {
    auto it = node_tables->find(v);
    return it == node_tables->end() ? *node_default : it->second[a];
  };
  p.value_name = [domains](std::size_t v, std::size_t a) {
    const Domain &d = (*domains)[v];
    return a < d.names.size() ? d.names[a] : std::to_string(a);
  };
  return p;
}

std::vector<std::size_t> vertex_list(const json &root, const GraphPart &g, const char *list_key,
                                     const char *flag_key) {
  std::vector<char> member(g.cfg->num_vertices(), 0);
  if (root.contains(list_key)) {
    const json &list = root[list_key];
    if (!list.is_array())
      throw InstanceError(list_key, "expected an array of vertex ids");
    for (std::size_t i = 0; i < list.size(); ++i)
      member[g.vertex(list[i], std::string(list_key) + "[" + std::to_string(i) + "]")] = 1;
  }
  const json &vertices = root["vertices"];
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].contains(flag_key) && vertices[v][flag_key].is_boolean() && vertices[v][flag_key].get<bool>())
      member[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < member.size(); ++v)
    if (member[v])
      out.push_back(v);
  return out;
}

template <class C> LospreInstance<C> parse_lospre(const json &root, const GraphPart &g) {
  const Cfg &cfg = *g.cfg;
  LospreInstance<C> inst;
  inst.cfg = g.cfg;
  inst.use = vertex_list(root, g, "use", "use");
  inst.invalidating = vertex_list(root, g, "invalidating", "invalidates");
  // Entry and exit always invalidate.
  for (Role r : {Role::S, Role::T}) {
    std::size_t v = cfg.special(r);
    if (!std::binary_search(inst.invalidating.begin(), inst.invalidating.end(), v))
      inst.invalidating.insert(std::lower_bound(inst.invalidating.begin(), inst.invalidating.end(), v), v);
  }
  auto table = [&](const char *name, const char *target, std::size_t count, bool edges) {
    std::vector<C> out(count, C::zero());
    if (!root.contains(name))
      return out;
    const json &obj = root[name];
    if (obj.contains("default"))
      std::fill(out.begin(), out.end(), parse_cost<C>(obj["default"], std::string(name) + ".default"));
    if (obj.contains("entries")) {
      const json &entries = obj["entries"];
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string key = std::string(name) + ".entries[" + std::to_string(i) + "]";
        const json &ref = require(entries[i], target, key);
        std::size_t k = edges ? g.edge(ref, key + "." + target) : g.vertex(ref, key + "." + target);
        out[k] = parse_cost<C>(require(entries[i], "cost", key), key + ".cost");
      }
    }
    return out;
  };
  inst.edge_cost = table("edge_cost", "edge", cfg.num_edges(), true);
  inst.live_cost = table("live_cost", "vertex", cfg.num_vertices(), false);
  check_instance(inst);
  return inst;
}

BankInstance parse_bank(const json &root, const GraphPart &g) {
  const Cfg &cfg = *g.cfg;
  BankInstance inst;
  inst.cfg = g.cfg;
  const json &banks = require(root, "banks", "");
  if (!banks.is_array())
    throw InstanceError("banks", "expected an array of bank names");
  for (std::size_t i = 0; i < banks.size(); ++i)
    inst.banks.push_back(id_string(banks[i], "banks[" + std::to_string(i) + "]"));
  if (root.contains("c0"))
    inst.c0 = parse_cost<IntCost>(root["c0"], "c0");
  if (root.contains("c1"))
    inst.c1 = parse_cost<IntCost>(root["c1"], "c1");
  if (root.contains("entry_unknown"))
    inst.entry_unknown = root["entry_unknown"].get<bool>();
  inst.precolor.assign(cfg.num_vertices(), std::nullopt);
  const json &vertices = root["vertices"];
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vertices[v].contains("precolor"))
      continue;
    std::string key = "vertices[" + std::to_string(v) + "].precolor";
    std::string b = id_string(vertices[v]["precolor"], key);
    auto it = std::find(inst.banks.begin(), inst.banks.end(), b);
    if (it == inst.banks.end())
      throw InstanceError(key, "unknown bank \"" + b + "\"");
    inst.precolor[v] = static_cast<int>(it - inst.banks.begin());
  }
  inst.taken.assign(cfg.num_edges(), 0);
  const json &edges = root["edges"];
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].contains("taken") && edges[e]["taken"].get<bool>())
      inst.taken[e] = 1;
  try {
    check_instance(inst);
  } catch (const InstanceError &) {
    throw;
  } catch (const Error &e) {
    throw InstanceError("", e.what());
  }
  return inst;
}

} // namespace

LoadedInstance parse_instance(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw InstanceError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw InstanceError("", "expected a JSON object");
  try {
    LoadedInstance out;
    std::string kind = require(root, "kind", "").get<std::string>();
    if (kind == "pcsp")
      out.kind = InstanceKind::Pcsp;
    else if (kind == "lospre")
      out.kind = InstanceKind::Lospre;
    else if (kind == "bank")
      out.kind = InstanceKind::Bank;
    else
      throw InstanceError("kind", "expected \"pcsp\", \"lospre\" or \"bank\"");
    std::string cost_kind = root.value("cost_kind", std::string("int"));
    if (cost_kind == "lex2")
      out.cost_kind = CostKind::Lex2;
    else if (cost_kind != "int")
      throw InstanceError("cost_kind", "expected \"int\" or \"lex2\"");
    if (out.kind == InstanceKind::Bank && out.cost_kind != CostKind::Int)
      throw InstanceError("cost_kind", "bank instances use integer costs");

    GraphPart g = parse_graph(root);
    out.decomposition = g.decomposition;
    out.cfg = g.cfg;
    out.edge_names = g.edge_names;
    switch (out.kind) {
    case InstanceKind::Pcsp:
      if (out.cost_kind == CostKind::Int)
        out.instance = parse_pcsp<IntCost>(root, g);
      else
        out.instance = parse_pcsp<Lex2Cost>(root, g);
      break;
    case InstanceKind::Lospre:
      if (out.cost_kind == CostKind::Int)
        out.instance = parse_lospre<IntCost>(root, g);
      else
        out.instance = parse_lospre<Lex2Cost>(root, g);
      break;
    case InstanceKind::Bank:
      out.instance = parse_bank(root, g);
      break;
    }
    return out;
  } catch (const json::exception &e) {
    throw InstanceError("", std::string("malformed instance: ") + e.what());
  }
}

LoadedInstance load_instance(const std::string &path) { return parse_instance(read_file(path)); }

namespace {

const char *role_name(const Cfg &cfg, std::size_t v) {
  static const char *names[4] = {"S", "T", "B", "C"};
  for (int k = 0; k < 4; ++k)
    if (cfg.special(static_cast<Role>(k)) == v)
      return names[k];
  return nullptr;
}

template <class C> void dump_pcsp(json &root, const PcspInstance<C> &p, const std::vector<std::string> &edge_names) {
  const Cfg &cfg = *p.cfg;
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    root["vertices"][v]["domain"] = p.domain_size[v];
  json entries = json::array();
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    for (std::size_t a = 0; a < p.domain_size[cfg.src(e)]; ++a)
      for (std::size_t b = 0; b < p.domain_size[cfg.dst(e)]; ++b) {
        C c = p.edge_cost(e, a, b);
        if (!(c == C::zero()))
          entries.push_back({{"edge", edge_names[e]}, {"src_value", a}, {"dst_value", b}, {"cost", cost_json(c)}});
      }
  root["edge_cost"] = {{"default", cost_json(C::zero())}, {"entries", entries}};
  json node_entries = json::array();
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    for (std::size_t a = 0; a < p.domain_size[v]; ++a) {
      C c = p.node(v, a);
      if (!(c == C::zero()))
        node_entries.push_back({{"vertex", cfg.name(v)}, {"value", a}, {"cost", cost_json(c)}});
    }
  root["node_cost"] = {{"default", cost_json(C::zero())}, {"entries", node_entries}};
}

template <class C>
void dump_lospre(json &root, const LospreInstance<C> &p, const std::vector<std::string> &edge_names) {
  const Cfg &cfg = *p.cfg;
  root["use"] = json::array();
  for (std::size_t v : p.use)
    root["use"].push_back(cfg.name(v));
  root["invalidating"] = json::array();
  for (std::size_t v : p.invalidating)
    root["invalidating"].push_back(cfg.name(v));
  json ec = json::array();
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    ec.push_back({{"edge", edge_names[e]}, {"cost", cost_json(p.edge_cost[e])}});
  root["edge_cost"] = {{"default", cost_json(C::zero())}, {"entries", ec}};
  json lc = json::array();
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    lc.push_back({{"vertex", cfg.name(v)}, {"cost", cost_json(p.live_cost[v])}});
  root["live_cost"] = {{"default", cost_json(C::zero())}, {"entries", lc}};
}

} // namespace

std::string dump_instance(const LoadedInstance &inst) {
  const Cfg &cfg = *inst.cfg;
  json root;
  root["kind"] = inst.kind == InstanceKind::Pcsp ? "pcsp" : inst.kind == InstanceKind::Lospre ? "lospre" : "bank";
  root["cost_kind"] = inst.cost_kind == CostKind::Int ? "int" : "lex2";
  root["vertices"] = json::array();
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
    json jv{{"id", cfg.name(v)}};
    if (const char *r = role_name(cfg, v))
      jv["role"] = r;
    root["vertices"].push_back(jv);
  }
  root["edges"] = json::array();
  for (std::size_t e = 0; e < cfg.num_edges(); ++e)
    root["edges"].push_back({{"id", inst.edge_names[e]},
                             {"src", cfg.name(cfg.src(e))},
                             {"dst", cfg.name(cfg.dst(e))},
                             {"label", describe(cfg.edge(e).payload)}});
  std::visit(
      [&](const auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PcspInstance<IntCost>> || std::is_same_v<T, PcspInstance<Lex2Cost>>) {
          dump_pcsp(root, p, inst.edge_names);
        } else if constexpr (std::is_same_v<T, LospreInstance<IntCost>> ||
                             std::is_same_v<T, LospreInstance<Lex2Cost>>) {
          dump_lospre(root, p, inst.edge_names);
        } else {
          root["banks"] = p.banks;
          root["c0"] = p.c0.value;
          root["c1"] = p.c1.value;
          root["entry_unknown"] = p.entry_unknown;
          for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
            if (p.precolor[v])
              root["vertices"][v]["precolor"] = p.banks[static_cast<std::size_t>(*p.precolor[v])];
          for (std::size_t e = 0; e < cfg.num_edges(); ++e)
            if (p.taken[e])
              root["edges"][e]["taken"] = true;
        }
      },
      inst.instance);
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Graphviz

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string vertex_label(const SplGraph &g, VertexId v, const std::unordered_map<VertexId, std::string> &names) {
  auto it = names.find(v);
  std::string name = it != names.end() ? it->second : "v" + std::to_string(v.value);
  static const char *roles[4] = {"S", "T", "B", "C"};
  for (int k = 0; k < 4; ++k)
    if (g.specials().v[k] == v && name != roles[k])
      return name + " (" + roles[k] + ")";
  return name;
}

} // namespace

std::string emit_dot(const SplGraph &g, const std::unordered_map<VertexId, std::string> &names) {
  std::ostringstream out;
  out << "digraph cfg {\n";
  for (VertexId v : g.vertices()) {
    bool special = false;
    for (VertexId s : g.specials().v)
      special = special || s == v;
    out << "  n" << v.value << " [label=" << quote(vertex_label(g, v, names)) << (special ? ", shape=box" : "")
        << "];\n";
  }
  for (const Edge &e : g.edges())
    out << "  n" << e.src.value << " -> n" << e.dst.value << " [label=" << quote(describe(e.payload)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string emit_dot(const Cfg &cfg) {
  std::unordered_map<VertexId, std::string> names;
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    names.emplace(cfg.vertex(v), cfg.name(v));
  return emit_dot(cfg.graph(), names);
}

namespace {

std::string atom_label(const DecompNode &n) {
  return n.atom == AtomKind::Epsilon ? "A_eps" : n.atom == AtomKind::Break ? "A_break" : "A_continue";
}

std::string op_name(NodeKind k) {
  switch (k) {
  case NodeKind::Atom:
    return "Atom";
  case NodeKind::Series:
    return "Series";
  case NodeKind::Parallel:
    return "Parallel";
  case NodeKind::Loop:
    return "Loop";
  }
  return "";
}

} // namespace

std::string emit_dot(const SplDecomposition &d) {
  std::unordered_map<EdgeId, const Edge *> edges;
  for (const Edge &e : d.graph().edges())
    edges.emplace(e.id, &e);
  std::ostringstream out;
  out << "digraph decomposition {\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DecompNode &n = d.node(i);
    std::string label;
    switch (n.kind) {
    case NodeKind::Atom: {
      std::string text = describe(edges.at(n.edges[0])->payload);
      label = atom_label(n) + (text.empty() ? "" : "\\n" + text);
      break;
    }
    case NodeKind::Series:
      label = "⨟";
      break;
    case NodeKind::Parallel:
      label = "∥";
      break;
    case NodeKind::Loop:
      label = "⊙";
      break;
    }
    out << "  u" << i << " [label=" << quote(label) << (n.kind == NodeKind::Atom ? ", shape=box" : "") << "];\n";
    if (n.first >= 0)
      out << "  u" << i << " -> u" << n.first << ";\n";
    if (n.second >= 0)
      out << "  u" << i << " -> u" << n.second << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string decomposition_json(const SplDecomposition &d) {
  std::unordered_map<EdgeId, const Edge *> edges;
  for (const Edge &e : d.graph().edges())
    edges.emplace(e.id, &e);
  auto vname = [&](VertexId v) {
    auto it = d.names().find(v);
    return it != d.names().end() ? it->second : "v" + std::to_string(v.value);
  };
  std::vector<json> built(d.size());
  for (std::size_t i = d.size(); i-- > 0;) {
    const DecompNode &n = d.node(i);
    json j;
    j["op"] = op_name(n.kind);
    if (n.kind == NodeKind::Atom)
      j["atom"] = atom_label(n);
    j["specials"] = json::array();
    for (VertexId v : n.specials.v)
      j["specials"].push_back(vname(v));
    if (!n.edges.empty()) {
      j["edges"] = json::array();
      for (EdgeId id : n.edges) {
        const Edge &e = *edges.at(id);
        j["edges"].push_back({{"src", vname(e.src)}, {"dst", vname(e.dst)}, {"label", describe(e.payload)}});
      }
    }
    if (n.first >= 0) {
      j["children"] = json::array();
      j["children"].push_back(std::move(built[static_cast<std::size_t>(n.first)]));
      if (n.second >= 0)
        j["children"].push_back(std::move(built[static_cast<std::size_t>(n.second)]));
    }
    built[i] = std::move(j);
  }
  return built[0].dump(2) + "\n";
}

std::string decomposition_term(const SplDecomposition &d) {
  std::vector<std::string> term(d.size());
  for (std::size_t i = d.size(); i-- > 0;) {
    const DecompNode &n = d.node(i);
    if (n.kind == NodeKind::Atom) {
      term[i] = atom_label(n);
      continue;
    }
    std::string s = op_name(n.kind) + "(" + std::move(term[static_cast<std::size_t>(n.first)]);
    if (n.second >= 0)
      s += ", " + std::move(term[static_cast<std::size_t>(n.second)]);
    term[i] = s + ")";
  }
  return term[0];
}

} // namespace splopt
