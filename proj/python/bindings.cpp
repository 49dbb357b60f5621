// Python bindings. Programs are passed as source text and results come back
// as plain Python values, with vertices and edges named as in the CLI.

#include "splopt/analysis.hpp"
#include "splopt/bankselect.hpp"
#include "splopt/bench.hpp"
#include "splopt/io.hpp"
#include "splopt/lospre.hpp"
#include "splopt/oracle.hpp"
#include "splopt/regalloc.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace splopt;

namespace {

py::object cost_value(IntCost c) { return c.is_infinite() ? py::none() : py::cast(c.value); }
py::object cost_value(Lex2Cost c) { return c.is_infinite() ? py::none() : py::object(py::make_tuple(c.first, c.second)); }

py::tuple edge_pair(const Cfg &cfg, std::size_t e) { return py::make_tuple(cfg.name(cfg.src(e)), cfg.name(cfg.dst(e))); }

py::list vertex_names(const Cfg &cfg, const std::vector<std::size_t> &vs) {
  py::list out;
  for (std::size_t v : vs)
    out.append(cfg.name(v));
  return out;
}

py::list edge_pairs(const Cfg &cfg, const std::vector<std::size_t> &es) {
  py::list out;
  for (std::size_t e : es)
    out.append(edge_pair(cfg, e));
  return out;
}

SplDecomposition decompose_source(const std::string &source) { return decompose(*parse(source)); }

py::dict cfg_dict(const std::string &source) {
  SplDecomposition d = decompose_source(source);
  auto cfg = cfg_of(d);
  py::list vertices, edges;
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v)
    vertices.append(cfg->name(v));
  for (std::size_t e = 0; e < cfg->num_edges(); ++e)
    edges.append(py::make_tuple(cfg->name(cfg->src(e)), cfg->name(cfg->dst(e)), describe(cfg->edge(e).payload)));
  py::dict out;
  out["vertices"] = vertices;
  out["edges"] = edges;
  return out;
}

py::dict live_sets(const std::string &source) {
  auto cfg = cfg_of(decompose_source(source));
  LiveMap live = liveness(*cfg);
  py::dict out;
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v)
    out[py::str(cfg->name(v))] = std::vector<std::string>(live.at_vertex[v].begin(), live.at_vertex[v].end());
  return out;
}

std::vector<std::pair<std::string, std::string>> interference(const std::string &source) {
  auto cfg = cfg_of(decompose_source(source));
  InterferenceGraph g = build_interference(liveness(*cfg));
  return {g.edges.begin(), g.edges.end()};
}

std::optional<int> min_registers(const std::string &source, int max_registers) {
  SplDecomposition d = decompose_source(source);
  return min_spill_free_registers(d, liveness(*cfg_of(d)), max_registers);
}

py::dict allocate_registers(const std::string &source, int registers, bool allow_spill) {
  SplDecomposition d = decompose_source(source);
  auto cfg = cfg_of(d);
  LiveMap live = liveness(*cfg);
  RegAllocOptions opts;
  opts.registers = registers;
  opts.allow_spill = allow_spill;
  if (allow_spill)
    opts.cost = unit_spill_cost(*cfg, live);
  RegAllocResult r = solve_regalloc(d, live, opts);
  py::dict out;
  out["cost"] = cost_value(r.cost);
  out["spilled"] = std::vector<std::string>(r.spilled.begin(), r.spilled.end());
  py::dict allocation;
  if (r.feasible())
    for (std::size_t v = 0; v < cfg->num_vertices(); ++v) {
      py::dict regs;
      std::size_t i = 0;
      for (const std::string &x : live.at_vertex[v]) {
        int reg = r.allocation[v][i++];
        regs[py::str(x)] = reg == kSpilled ? py::none() : py::cast(reg);
      }
      allocation[py::str(cfg->name(v))] = regs;
    }
  out["allocation"] = allocation;
  return out;
}

template <class C> py::dict lospre_dict(const LospreInstance<C> &inst, const LospreSolution<C> &s) {
  const Cfg &cfg = *inst.cfg;
  py::dict out;
  out["cost"] = cost_value(s.cost);
  out["use"] = vertex_names(cfg, inst.use);
  out["invalidating"] = vertex_names(cfg, inst.invalidating);
  out["life"] = vertex_names(cfg, s.life);
  out["calc"] = edge_pairs(cfg, s.calc);
  return out;
}

py::dict lospre(const std::string &source, const std::string &expr_text) {
  ExprPtr expr = parse_expr(expr_text);
  SplDecomposition d = decompose_source(source);
  auto cfg = cfg_of(d);
  LospreSets sets = derive_lospre_sets(*cfg, *expr);
  LospreInstance<Lex2Cost> inst;
  inst.cfg = cfg;
  inst.use = sets.use;
  inst.invalidating = sets.invalidating;
  inst.edge_cost.assign(cfg->num_edges(), Lex2Cost(1, 0));
  inst.live_cost.assign(cfg->num_vertices(), Lex2Cost(0, 1));
  return lospre_dict(inst, solve_lospre(inst, d));
}

template <class C> py::dict assignment_dict(const PcspInstance<C> &inst, const Solution<C> &s) {
  const Cfg &cfg = *inst.cfg;
  py::dict out, values;
  out["cost"] = cost_value(s.cost);
  if (s.feasible())
    for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
      std::size_t a = s.assignment[v];
      values[py::str(cfg.name(v))] = inst.value_name ? py::cast(inst.value_name(v, a)) : py::cast(a);
    }
  out["values"] = values;
  return out;
}

py::dict bank_dict(const BankInstance &inst, const BankSolution &s) {
  const Cfg &cfg = *inst.cfg;
  py::dict out, banks;
  out["cost"] = cost_value(s.cost);
  out["naive_cost"] = cost_value(naive_bank_cost(inst));
  if (!s.cost.is_infinite())
    for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
      banks[py::str(cfg.name(v))] = s.bank[v] == kUnknownBank ? py::none() : py::cast(inst.banks[s.bank[v]]);
  py::list switches;
  for (auto [e, b] : s.switches)
    switches.append(py::make_tuple(edge_pair(cfg, e), inst.banks[b]));
  out["banks"] = banks;
  out["switches"] = switches;
  return out;
}

const char *kind_name(InstanceKind k) {
  switch (k) {
  case InstanceKind::Pcsp:
    return "pcsp";
  case InstanceKind::Lospre:
    return "lospre";
  case InstanceKind::Bank:
    return "bank";
  }
  return "";
}

py::dict solve_instance(const std::string &json_text) {
  LoadedInstance li = parse_instance(json_text);
  py::dict out = std::visit(
      [&](const auto &inst) -> py::dict {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, BankInstance>)
          return bank_dict(inst, solve_bank(inst, *li.decomposition));
        else if constexpr (std::is_same_v<T, LospreInstance<IntCost>> || std::is_same_v<T, LospreInstance<Lex2Cost>>)
          return lospre_dict(inst, solve_lospre(inst, *li.decomposition));
        else
          return assignment_dict(inst, solve(inst, *li.decomposition));
      },
      li.instance);
  out["kind"] = kind_name(li.kind);
  return out;
}

py::dict brute_force_instance(const std::string &json_text, std::size_t limit) {
  LoadedInstance li = parse_instance(json_text);
  py::dict out = std::visit(
      [&](const auto &inst) -> py::dict {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, BankInstance>) {
          Solution<IntCost> s = brute_force(build_bank_pcsp(inst).pcsp, limit);
          py::dict d;
          d["cost"] = cost_value(s.cost);
          return d;
        } else if constexpr (std::is_same_v<T, LospreInstance<IntCost>> ||
                             std::is_same_v<T, LospreInstance<Lex2Cost>>) {
          return lospre_dict(inst, brute_force_lospre(inst));
        } else {
          return assignment_dict(inst, brute_force(inst, limit));
        }
      },
      li.instance);
  out["kind"] = kind_name(li.kind);
  return out;
}

py::list bench(const std::string &shape, const std::vector<std::size_t> &sizes, int repeats) {
  py::list out;
  for (const BenchRow &r : run_bench(parse_shape(shape), sizes, repeats)) {
    py::dict row;
    row["shape"] = shape_name(r.shape);
    row["size"] = r.size;
    row["ast_nodes"] = r.ast_nodes;
    row["cfg_vertices"] = r.cfg_vertices;
    row["decompose_us"] = r.decompose_us;
    row["solve_us"] = r.solve_us;
    row["max_node_work"] = r.max_node_work;
    row["max_domain"] = r.max_domain;
    out.append(row);
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decomposition-based optimizations for structured programs";

  py::register_exception<Error>(m, "SploptError", PyExc_ValueError);

  m.def("format_program", [](const std::string &source) { return to_source(*parse(source)); }, py::arg("source"),
        "Parse a program and print it back in canonical form.");
  m.def(
      "closedness_violations",
      [](const std::string &source) {
        std::vector<std::tuple<std::string, int, int>> out;
        for (const auto &v : check_closed(*parse(source)))
          out.emplace_back(v.kind == Stmt::Kind::Break ? "break" : "continue", v.loc.line, v.loc.column);
        return out;
      },
      py::arg("source"), "(keyword, line, column) of each break or continue outside a loop.");
  m.def("decomposition_term", [](const std::string &s) { return decomposition_term(decompose_source(s)); },
        py::arg("source"));
  m.def("decomposition_json", [](const std::string &s) { return decomposition_json(decompose_source(s)); },
        py::arg("source"));
  m.def("decomposition_dot", [](const std::string &s) { return emit_dot(decompose_source(s)); }, py::arg("source"));
  m.def("cfg_dot", [](const std::string &s) { return emit_dot(*cfg_of(decompose_source(s))); }, py::arg("source"));
  m.def("cfg", &cfg_dict, py::arg("source"), "Vertex names and (src, dst, label) edges of the control-flow graph.");
  m.def("liveness", &live_sets, py::arg("source"), "Variables live at each vertex.");
  m.def("interference", &interference, py::arg("source"));
  m.def("min_registers", &min_registers, py::arg("source"), py::arg("max_registers") = 20,
        "Fewest registers for a spill-free allocation, or None above max_registers.");
  m.def("allocate_registers", &allocate_registers, py::arg("source"), py::arg("registers"),
        py::arg("allow_spill") = true,
        "Optimal allocation; with spills allowed each spilled variable costs 1.");
  m.def("lospre", &lospre, py::arg("source"), py::arg("expr"),
        "Place computations of expr: fewest computations first, then shortest lifetime.");
  m.def("solve_instance", &solve_instance, py::arg("json_text"));
  m.def("brute_force_instance", &brute_force_instance, py::arg("json_text"), py::arg("limit") = 10'000'000);
  m.def("bench", &bench, py::arg("shape"), py::arg("sizes"), py::arg("repeats") = 3);
}
