// Command-line front end. Exit codes: 0 success, 1 usage error, 2 parse or
// validation error, 3 the optimum is infinite.

#include "splopt/analysis.hpp"
#include "splopt/bankselect.hpp"
#include "splopt/bench.hpp"
#include "splopt/io.hpp"
#include "splopt/lospre.hpp"
#include "splopt/oracle.hpp"
#include "splopt/regalloc.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace splopt;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kInfeasible = 3;

StmtPtr load_program(const std::string &path) {
  return parse(read_file(path));
}

std::string join_vertices(const Cfg &cfg, const std::vector<std::size_t> &vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i)
    out += (i ? ", " : "") + cfg.name(vs[i]);
  return out + "}";
}

std::string edge_name(const Cfg &cfg, std::size_t e) {
  return "(" + cfg.name(cfg.src(e)) + ", " + cfg.name(cfg.dst(e)) + ")";
}

std::string join_edges(const Cfg &cfg, const std::vector<std::size_t> &es) {
  std::string out = "{";
  for (std::size_t i = 0; i < es.size(); ++i)
    out += (i ? ", " : "") + edge_name(cfg, es[i]);
  return out + "}";
}

template <class C> int report_lospre(const LospreInstance<C> &inst, const LospreSolution<C> &s) {
  const Cfg &cfg = *inst.cfg;
  std::cout << "cost: " << to_string(s.cost) << "\n";
  if (s.cost.is_infinite())
    return kInfeasible;
  std::cout << "use: " << join_vertices(cfg, inst.use) << "\n"
            << "invalidating: " << join_vertices(cfg, inst.invalidating) << "\n"
            << "life: " << join_vertices(cfg, s.life) << "\n"
            << "calc: " << join_edges(cfg, s.calc) << "\n";
  return kOk;
}

template <class C> int report_assignment(const PcspInstance<C> &inst, const Solution<C> &s) {
  std::cout << "cost: " << to_string(s.cost) << "\n";
  if (!s.feasible())
    return kInfeasible;
  const Cfg &cfg = *inst.cfg;
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v) {
    std::size_t a = s.assignment[v];
    std::cout << cfg.name(v) << " = " << (inst.value_name ? inst.value_name(v, a) : std::to_string(a)) << "\n";
  }
  return kOk;
}

int report_bank(const BankInstance &inst, const BankSolution &s) {
  const Cfg &cfg = *inst.cfg;
  std::cout << "cost: " << to_string(s.cost) << "\n";
  if (s.cost.is_infinite())
    return kInfeasible;
  std::cout << "naive cost: " << to_string(naive_bank_cost(inst)) << "\n";
  for (std::size_t v = 0; v < cfg.num_vertices(); ++v)
    std::cout << cfg.name(v) << " = " << (s.bank[v] == kUnknownBank ? "?" : inst.banks[s.bank[v]]) << "\n";
  for (auto [e, b] : s.switches)
    std::cout << "switch on " << edge_name(cfg, e) << " to " << inst.banks[b] << "\n";
  return kOk;
}

int cmd_parse(const std::string &path) {
  std::cout << to_source(*load_program(path)) << "\n";
  return kOk;
}

int cmd_decompose(const std::string &path, bool dot, bool json) {
  SplDecomposition d = decompose(*load_program(path));
  if (dot)
    std::cout << emit_dot(d);
  else if (json)
    std::cout << decomposition_json(d) << "\n";
  else
    std::cout << decomposition_term(d) << "\n";
  return kOk;
}

int cmd_cfg(const std::string &path) {
  SplDecomposition d = decompose(*load_program(path));
  std::cout << emit_dot(*cfg_of(d));
  return kOk;
}

int cmd_regalloc(const std::string &path, std::optional<int> registers, int max_regs, bool spill_free) {
  SplDecomposition d = decompose(*load_program(path));
  auto cfg = cfg_of(d);
  LiveMap live = liveness(*cfg);
  InterferenceGraph ig = build_interference(live);
  std::cout << "interference:";
  for (const auto &[u, v] : ig.edges)
    std::cout << " " << u << "-" << v;
  std::cout << "\n";
  if (!registers) {
    auto r = min_spill_free_registers(d, live, max_regs);
    if (!r) {
      std::cout << "registers: more than " << max_regs << "\n";
      return kInfeasible;
    }
    std::cout << "registers: " << *r << "\n";
    return kOk;
  }
  RegAllocOptions opts;
  opts.registers = *registers;
  opts.allow_spill = !spill_free;
  if (opts.allow_spill)
    opts.cost = unit_spill_cost(*cfg, live);
  RegAllocResult res = solve_regalloc(d, live, opts);
  std::cout << "cost: " << to_string(res.cost) << "\n";
  if (!res.feasible())
    return kInfeasible;
  std::cout << "spilled:";
  for (const std::string &x : res.spilled)
    std::cout << " " << x;
  std::cout << "\n";
  for (std::size_t v = 0; v < cfg->num_vertices(); ++v) {
    std::vector<std::string> vars(live.at_vertex[v].begin(), live.at_vertex[v].end());
    std::cout << cfg->name(v) << ":";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      int reg = res.allocation[v][i];
      std::cout << " " << vars[i] << "=" << (reg == kSpilled ? std::string("spill") : "r" + std::to_string(reg));
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_lospre_expr(const std::string &expr_text, const std::string &path) {
  ExprPtr expr = parse_expr(expr_text);
  auto d = std::make_shared<SplDecomposition>(decompose(*load_program(path)));
  auto cfg = cfg_of(*d);
  LospreSets sets = derive_lospre_sets(*cfg, *expr);
  // Computations first, then lifetime.
  LospreInstance<Lex2Cost> inst;
  inst.cfg = cfg;
  inst.use = sets.use;
  inst.invalidating = sets.invalidating;
  inst.edge_cost.assign(cfg->num_edges(), Lex2Cost(1, 0));
  inst.live_cost.assign(cfg->num_vertices(), Lex2Cost(0, 1));
  return report_lospre(inst, solve_lospre(inst, *d));
}

int cmd_lospre_instance(const LoadedInstance &li) {
  if (li.kind != InstanceKind::Lospre)
    throw Error("instance kind is not \"lospre\"");
  if (li.cost_kind == CostKind::Int) {
    const auto &inst = std::get<LospreInstance<IntCost>>(li.instance);
    return report_lospre(inst, solve_lospre(inst, *li.decomposition));
  }
  const auto &inst = std::get<LospreInstance<Lex2Cost>>(li.instance);
  return report_lospre(inst, solve_lospre(inst, *li.decomposition));
}

int cmd_bank(const LoadedInstance &li) {
  if (li.kind != InstanceKind::Bank)
    throw Error("instance kind is not \"bank\"");
  const auto &inst = std::get<BankInstance>(li.instance);
  return report_bank(inst, solve_bank(inst, *li.decomposition));
}

int cmd_pcsp(const LoadedInstance &li) {
  if (li.kind != InstanceKind::Pcsp)
    throw Error("instance kind is not \"pcsp\"");
  if (li.cost_kind == CostKind::Int) {
    const auto &inst = std::get<PcspInstance<IntCost>>(li.instance);
    return report_assignment(inst, solve(inst, *li.decomposition));
  }
  const auto &inst = std::get<PcspInstance<Lex2Cost>>(li.instance);
  return report_assignment(inst, solve(inst, *li.decomposition));
}

int cmd_oracle(const LoadedInstance &li) {
  return std::visit(
      [](const auto &inst) -> int {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, BankInstance>) {
          BankPcsp p = build_bank_pcsp(inst);
          Solution<IntCost> s = brute_force(p.pcsp);
          std::cout << "cost: " << to_string(s.cost) << "\n";
          return s.feasible() ? kOk : kInfeasible;
        } else if constexpr (std::is_same_v<T, LospreInstance<IntCost>> ||
                             std::is_same_v<T, LospreInstance<Lex2Cost>>) {
          return report_lospre(inst, brute_force_lospre(inst));
        } else {
          return report_assignment(inst, brute_force(inst));
        }
      },
      li.instance);
}

int cmd_bench(const std::string &shape, const std::vector<std::size_t> &sizes, int repeats) {
  std::cout << bench_tsv(run_bench(parse_shape(shape), sizes, repeats));
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Optimizations on series-parallel-loop decompositions of structured programs"};
  app.require_subcommand(1);

  std::string file, instance, expr, shape;
  bool dot = false, json = false, spill_free = false;
  int max_regs = 20, repeats = 3;
  std::optional<int> registers;
  std::vector<std::size_t> sizes;

  auto *parse_cmd = app.add_subcommand("parse", "Parse a program and print it back");
  parse_cmd->add_option("file", file, "Source file")->required();

  auto *dec = app.add_subcommand("decompose", "Print the SPL decomposition of a program");
  dec->add_option("file", file, "Source file")->required();
  auto *dot_flag = dec->add_flag("--dot", dot, "Graphviz tree");
  dec->add_flag("--json", json, "Nested JSON")->excludes(dot_flag);

  auto *cfg_cmd = app.add_subcommand("cfg", "Print the control-flow graph of a program");
  cfg_cmd->add_option("file", file, "Source file")->required();
  cfg_cmd->add_flag("--dot", dot, "Graphviz output (the only format)");

  auto *ra = app.add_subcommand("regalloc", "Register allocation");
  ra->add_option("file", file, "Source file")->required();
  ra->add_option("--registers,-r", registers, "Allocate with this many registers");
  ra->add_option("--max-regs", max_regs, "Upper limit when searching for the fewest registers")
      ->check(CLI::NonNegativeNumber);
  ra->add_flag("--spill-free", spill_free, "Forbid spilling");

  auto *lo = app.add_subcommand("lospre", "Lifetime-optimal partial redundancy elimination");
  auto *expr_opt = lo->add_option("--expr", expr, "Expression to place; needs a source file");
  auto *inst_opt = lo->add_option("--instance", instance, "Instance file");
  lo->add_option("file", file, "Source file for --expr");
  expr_opt->excludes(inst_opt);

  auto *bank = app.add_subcommand("bankselect", "Bank selection");
  bank->add_option("--instance", instance, "Instance file")->required();

  auto *pc = app.add_subcommand("pcsp", "Solve a PCSP instance");
  pc->add_option("--instance", instance, "Instance file")->required();

  auto *orc = app.add_subcommand("oracle", "Solve any instance by exhaustive search");
  orc->add_option("--instance", instance, "Instance file")->required();

  auto *bench = app.add_subcommand("bench", "Time decomposition and solving on generated programs");
  bench->add_option("--shape", shape, "long-sequence, nested-loops or wide-ifs")->required();
  bench->add_option("--sizes", sizes, "Statement counts, ascending")->required();
  bench->add_option("--repeats", repeats, "Runs per size; the fastest is reported")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (parse_cmd->parsed())
      return cmd_parse(file);
    if (dec->parsed())
      return cmd_decompose(file, dot, json);
    if (cfg_cmd->parsed())
      return cmd_cfg(file);
    if (ra->parsed())
      return cmd_regalloc(file, registers, max_regs, spill_free);
    if (lo->parsed()) {
      if (!expr.empty()) {
        if (file.empty()) {
          std::cerr << "lospre --expr needs a source file\n";
          return kUsage;
        }
        return cmd_lospre_expr(expr, file);
      }
      if (instance.empty()) {
        std::cerr << "lospre needs --expr or --instance\n";
        return kUsage;
      }
      return cmd_lospre_instance(load_instance(instance));
    }
    if (bank->parsed())
      return cmd_bank(load_instance(instance));
    if (pc->parsed())
      return cmd_pcsp(load_instance(instance));
    if (orc->parsed())
      return cmd_oracle(load_instance(instance));
    if (bench->parsed()) {
      for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] < sizes[i - 1]) {
          std::cerr << "--sizes must be ascending\n";
          return kUsage;
        }
      return cmd_bench(shape, sizes, repeats);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
