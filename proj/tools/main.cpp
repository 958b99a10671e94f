#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "plankit/graphplan.hpp"
#include "plankit/petri.hpp"
#include "plankit/runner.hpp"
#include "plankit/satenc.hpp"
#include "plankit/validate.hpp"

using namespace plankit;

namespace {

struct CommonArgs {
  std::string domain, problem;
  std::string planner = "graphplan";
  int max_layers = 64;
  double timeout = 60.0;
  bool simplify = false;
  bool ff_no_helpful = false;
  bool ff_no_prune = false;
  bool dump_graph = false;
  bool dump_ground = false;
  std::string stats = "table";
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_planner) {
  cmd->add_option("--domain", args.domain, "domain PDDL file")->required();
  cmd->add_option("--problem", args.problem, "problem PDDL file")->required();
  if (with_planner)
    cmd->add_option("--planner", args.planner,
                    "graphplan|petriplan1|petriplan2|ff|satplan");
  cmd->add_option("--max-layers", args.max_layers, "graph depth limit");
  cmd->add_option("--timeout", args.timeout, "wall-clock limit in seconds");
  cmd->add_flag("--simplify", args.simplify, "eliminate proposition variables");
  cmd->add_flag("--ff-no-helpful", args.ff_no_helpful,
                "hill climbing over all applicable successors");
  cmd->add_flag("--ff-no-prune", args.ff_no_prune, "disable goal-deletion pruning");
  cmd->add_flag("--dump-graph", args.dump_graph, "print the layered graph");
  cmd->add_flag("--dump-ground", args.dump_ground, "print ground actions and atoms");
  cmd->add_option("--stats", args.stats, "table|csv|json");
  cmd->add_option("--out", args.out, "write the plan (or export) to a file");
}

std::ostream& sink(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw Error(ErrKind::Io, "cannot write " + path);
  return file;
}

RunConfig to_config(const CommonArgs& args) {
  RunConfig cfg;
  auto planner = planner_from_name(args.planner);
  if (!planner)
    throw Error(ErrKind::Usage, "unknown planner '" + args.planner + "'");
  cfg.planner = *planner;
  cfg.domain_path = args.domain;
  cfg.problem_path = args.problem;
  cfg.max_layers = args.max_layers;
  cfg.timeout_seconds = args.timeout;
  cfg.simplify = args.simplify;
  cfg.ff_no_helpful = args.ff_no_helpful;
  cfg.ff_no_prune = args.ff_no_prune;
  return cfg;
}

int cmd_solve(const CommonArgs& args) {
  RunConfig cfg = to_config(args);
  LoadedProblem lp = load_problem(cfg.domain_path, cfg.problem_path);
  if (args.dump_ground) dump_ground(lp.grounded, std::cerr);
  RunOutput out = run_solve(cfg, lp);
  if (args.dump_graph) {
    PlanGraph g = graph_at_horizon(lp.grounded, cfg.max_layers, std::nullopt);
    g.dump(std::cerr);
  }
  if (!out.plan_text.empty()) {
    std::ofstream file;
    sink(args.out, file) << out.plan_text;
  }
  if (args.stats == "json")
    std::cout << out.report.to_json() << "\n";
  else if (args.stats == "csv")
    std::cout << PhaseReport::csv_header() << "\n" << out.report.to_csv_row() << "\n";
  else
    std::cout << out.report.to_table();
  return out.exit_code;
}

int cmd_validate(const CommonArgs& args, const std::string& plan_path) {
  LoadedProblem lp = load_problem(args.domain, args.problem);
  LayeredPlan plan = plan_from_text(read_file(plan_path), *lp.grounded.symbols);
  Verdict v = validate(lp.grounded, plan);
  std::cout << verdict_text(v) << "\n";
  return v.valid ? 0 : 1;
}

int cmd_export(const CommonArgs& args, const std::string& format,
               std::optional<int> layers) {
  LoadedProblem lp = load_problem(args.domain, args.problem);
  PlanGraph g = graph_at_horizon(lp.grounded, args.max_layers, layers);
  std::ofstream file;
  std::ostream& os = sink(args.out, file);
  if (format == "dimacs") {
    sat::CnfFormula f = sat::encode(g);
    if (args.simplify) f = sat::simplify(f);
    sat::to_dimacs(f, *lp.grounded.symbols, os);
  } else if (format == "petri") {
    petri::PetriNet net = petri::translate(g);
    net.to_text(*lp.grounded.symbols, os);
  } else {
    throw Error(ErrKind::Usage, "unknown export format '" + format + "'");
  }
  return 0;
}

int cmd_decode(const CommonArgs& args, const std::string& model_path,
               std::optional<int> layers) {
  LoadedProblem lp = load_problem(args.domain, args.problem);
  PlanGraph g = graph_at_horizon(lp.grounded, args.max_layers, layers);
  sat::CnfFormula f = sat::encode(g);
  if (args.simplify) f = sat::simplify(f);
  std::ifstream in(model_path);
  if (!in) throw Error(ErrKind::Io, "cannot open " + model_path);
  std::vector<bool> model = sat::parse_model(f, in);
  LayeredPlan plan = sat::decode_model(f, model);
  Verdict v = validate(lp.grounded, plan);
  std::ofstream file;
  sink(args.out, file) << plan_to_text(plan, *lp.grounded.symbols);
  std::cout << verdict_text(v) << "\n";
  return v.valid ? 0 : 1;
}

int cmd_bench(const std::string& suite, const std::string& planners,
              const CommonArgs& args) {
  std::vector<Planner> list;
  std::string token;
  std::istringstream ss(planners);
  while (std::getline(ss, token, ',')) {
    auto p = planner_from_name(token);
    if (!p) throw Error(ErrKind::Usage, "unknown planner '" + token + "'");
    list.push_back(*p);
  }
  RunConfig defaults;
  defaults.max_layers = args.max_layers;
  defaults.timeout_seconds = args.timeout;
  defaults.simplify = args.simplify;
  std::ofstream file;
  sink(args.out, file) << bench(suite, list, defaults);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical STRIPS planning toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string plan_path, format = "dimacs", model_path;
  std::string suite, planners = "graphplan,petriplan1,petriplan2,ff,satplan";
  int layers_opt = -1;

  CLI::App* solve = app.add_subcommand("solve", "run a planner on a problem");
  add_common(solve, args, true);

  CLI::App* val = app.add_subcommand("validate", "check a plan file");
  add_common(val, args, false);
  val->add_option("--plan", plan_path, "plan text file")->required();

  CLI::App* exp = app.add_subcommand("export", "emit DIMACS CNF or net text");
  add_common(exp, args, false);
  exp->add_option("--format", format, "dimacs|petri");
  exp->add_option("--layers", layers_opt, "expand to exactly N action layers");

  CLI::App* dec = app.add_subcommand("decode", "turn an external SAT model into a plan");
  add_common(dec, args, false);
  dec->add_option("--model", model_path, "model file with signed literals")->required();
  dec->add_option("--layers", layers_opt, "expand to exactly N action layers");

  CLI::App* ben = app.add_subcommand("bench", "run a fixture suite across planners");
  ben->add_option("--suite", suite, "directory of <domain-dir>/domain.pddl + *.pddl")
      ->required();
  ben->add_option("--planners", planners, "comma list of planners");
  ben->add_option("--max-layers", args.max_layers, "graph depth limit");
  ben->add_option("--timeout", args.timeout, "per-cell wall-clock limit in seconds");
  ben->add_option("--out", args.out, "write the CSV to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<int> layers;
    if (layers_opt >= 0) layers = layers_opt;
    if (solve->parsed()) return cmd_solve(args);
    if (val->parsed()) return cmd_validate(args, plan_path);
    if (exp->parsed()) return cmd_export(args, format, layers);
    if (dec->parsed()) return cmd_decode(args, model_path, layers);
    if (ben->parsed()) return cmd_bench(suite, planners, args);
  } catch (const Error& e) {
    std::cerr << "error [" << err_kind_name(e.kind) << "]: " << e.what();
    if (e.pos != Error::no_pos) std::cerr << " (at offset " << e.pos << ")";
    std::cerr << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
