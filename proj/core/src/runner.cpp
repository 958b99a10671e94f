#include "plankit/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plankit/graphplan.hpp"
#include "plankit/petri.hpp"
#include "plankit/satenc.hpp"
#include "plankit/validate.hpp"

namespace plankit {

const char* planner_name(Planner p) {
  switch (p) {
    case Planner::Graphplan: return "graphplan";
    case Planner::Petriplan1: return "petriplan1";
    case Planner::Petriplan2: return "petriplan2";
    case Planner::Ff: return "ff";
    case Planner::Satplan: return "satplan";
  }
  return "?";
}

std::optional<Planner> planner_from_name(const std::string& name) {
  if (name == "graphplan") return Planner::Graphplan;
  if (name == "petriplan1") return Planner::Petriplan1;
  if (name == "petriplan2") return Planner::Petriplan2;
  if (name == "ff") return Planner::Ff;
  if (name == "satplan") return Planner::Satplan;
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedProblem load_problem(const std::string& domain_path,
                           const std::string& problem_path) {
  LoadedProblem lp;
  std::string domain_text = read_file(domain_path);
  std::string problem_text = read_file(problem_path);
  Stopwatch parse_clock;
  lp.domain = pddl::parse_domain(domain_text);
  lp.problem = pddl::parse_problem(problem_text);
  lp.parse_seconds = parse_clock.seconds();
  Stopwatch ground_clock;
  lp.grounded = ground(lp.domain, lp.problem);
  lp.ground_seconds = ground_clock.seconds();
  return lp;
}

PlanGraph graph_at_horizon(const GroundedProblem& p, int max_layers,
                           std::optional<int> exact_layers) {
  PlanGraph g(p, /*relaxed=*/false);
  if (exact_layers) {
    for (int i = 0; i < *exact_layers; ++i) g.expand();
    return g;
  }
  while (!g.has_goals() && !g.leveled_off() && g.action_layer_count() < max_layers)
    g.expand();
  return g;
}

RunOutput run_solve(const RunConfig& cfg, const LoadedProblem& lp) {
  RunOutput out;
  SolveLimits limits;
  limits.max_layers = cfg.max_layers;
  limits.timeout_seconds = cfg.timeout_seconds;
  PhaseTimes times;

  Stopwatch total_clock;
  switch (cfg.planner) {
    case Planner::Graphplan:
      out.result = graphplan::solve(lp.grounded, limits, &times);
      break;
    case Planner::Petriplan1:
      out.result = petri::solve_petriplan1(lp.grounded, limits, &times);
      break;
    case Planner::Petriplan2:
      out.result = petri::solve_petriplan2(lp.grounded, limits, &times);
      break;
    case Planner::Ff: {
      ff::Options opts;
      opts.use_helpful = !cfg.ff_no_helpful;
      opts.use_pruning = !cfg.ff_no_prune;
      out.result = ff::solve(lp.grounded, limits, opts, &times);
      break;
    }
    case Planner::Satplan:
      out.result = sat::solve(lp.grounded, limits, cfg.simplify, &times);
      break;
  }
  double solve_total = total_clock.seconds();

  PhaseReport& r = out.report;
  r.problem = lp.problem.name;
  r.planner = planner_name(cfg.planner);
  r.outcome = out.result.outcome;
  r.note = out.result.note;
  r.parse = lp.parse_seconds;
  r.ground = lp.ground_seconds;
  r.mutex = times.mutex;
  r.expand = times.expand;
  r.translate = times.translate;
  r.search = times.search;
  r.per_expansion = times.per_expansion;
  r.total = lp.parse_seconds + lp.ground_seconds + solve_total;
  r.has_graph = out.result.sizes.has_graph;
  r.nodes = out.result.sizes.nodes;
  r.edges = out.result.sizes.edges;
  r.mutexes = out.result.sizes.mutexes;
  r.has_net = out.result.sizes.has_net;
  r.rows = out.result.sizes.rows;
  r.columns = out.result.sizes.columns;
  r.nonzeros = out.result.sizes.nonzeros;
  r.conflicts = out.result.sizes.conflicts;

  switch (out.result.outcome) {
    case Outcome::Plan: {
      r.action_count = out.result.plan.action_count();
      r.step_count = out.result.plan.step_count();
      r.plan_valid = validate(lp.grounded, out.result.plan).valid;
      out.plan_text = plan_to_text(out.result.plan, *lp.grounded.symbols);
      out.exit_code = 0;
      break;
    }
    case Outcome::Unsolvable:
      out.exit_code = 1;
      break;
    case Outcome::DepthLimit:
    case Outcome::Timeout:
      out.exit_code = 2;
      break;
  }
  return out;
}

RunOutput run_solve_files(const RunConfig& cfg) {
  return run_solve(cfg, load_problem(cfg.domain_path, cfg.problem_path));
}

std::string bench(const std::string& suite_dir, const std::vector<Planner>& planners,
                  const RunConfig& defaults) {
  namespace fs = std::filesystem;
  std::ostringstream csv;
  csv << PhaseReport::csv_header() << "\n";

  std::vector<fs::path> cases;  // problem files, each next to its domain.pddl
  std::vector<fs::path> dirs;
  if (fs::exists(suite_dir))
    for (const auto& e : fs::directory_iterator(suite_dir))
      if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& dir : dirs) {
    if (!fs::exists(dir / "domain.pddl")) continue;
    std::vector<fs::path> probs;
    for (const auto& e : fs::directory_iterator(dir)) {
      std::string name = e.path().filename().string();
      if (name != "domain.pddl" && name.size() > 5 &&
          name.substr(name.size() - 5) == ".pddl")
        probs.push_back(e.path());
    }
    std::sort(probs.begin(), probs.end());
    cases.insert(cases.end(), probs.begin(), probs.end());
  }

  for (const fs::path& prob : cases) {
    LoadedProblem lp =
        load_problem((prob.parent_path() / "domain.pddl").string(), prob.string());
    for (Planner planner : planners) {
      RunConfig cfg = defaults;
      cfg.planner = planner;
      RunOutput out = run_solve(cfg, lp);
      csv << out.report.to_csv_row() << "\n";
    }
  }
  return csv.str();
}

}  // namespace plankit
