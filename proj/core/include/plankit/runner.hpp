#ifndef PLANKIT_RUNNER_HPP
#define PLANKIT_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plankit/ffsearch.hpp"
#include "plankit/plangraph.hpp"
#include "plankit/report.hpp"
#include "plankit/solve.hpp"

namespace plankit {

enum class Planner { Graphplan, Petriplan1, Petriplan2, Ff, Satplan };

const char* planner_name(Planner p);
std::optional<Planner> planner_from_name(const std::string& name);

struct RunConfig {
  Planner planner = Planner::Graphplan;
  std::string domain_path, problem_path;
  int max_layers = 64;
  double timeout_seconds = 60.0;
  bool simplify = false;
  bool ff_no_helpful = false;
  bool ff_no_prune = false;
};

struct LoadedProblem {
  pddl::DomainAst domain;
  pddl::ProblemAst problem;
  GroundedProblem grounded;
  double parse_seconds = 0, ground_seconds = 0;
};

LoadedProblem load_problem(const std::string& domain_path,
                           const std::string& problem_path);

std::string read_file(const std::string& path);

// Full graph expanded until the goals appear conflict-free (or to
// exact_layers when given). Used by export and decode.
PlanGraph graph_at_horizon(const GroundedProblem& p, int max_layers,
                           std::optional<int> exact_layers);

struct RunOutput {
  PhaseReport report;
  SolveResult result;
  std::string plan_text;  // empty unless a plan was found
  int exit_code = 1;      // 0 plan, 1 unsolvable, 2 limit, 3 usage error
};

RunOutput run_solve(const RunConfig& cfg, const LoadedProblem& lp);
RunOutput run_solve_files(const RunConfig& cfg);

// One row per (problem, planner) over a suite directory whose
// subdirectories each hold a domain.pddl plus p*.pddl problem files.
std::string bench(const std::string& suite_dir, const std::vector<Planner>& planners,
                  const RunConfig& defaults);

}  // namespace plankit

#endif
