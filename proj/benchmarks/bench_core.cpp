#include <benchmark/benchmark.h>

#include "plankit/ffsearch.hpp"
#include "plankit/graphplan.hpp"
#include "plankit/petri.hpp"
#include "plankit/runner.hpp"
#include "plankit/satenc.hpp"
#include "plankit/validate.hpp"

using namespace plankit;

namespace {

std::string fixture(const std::string& rel) {
  return std::string(PLANKIT_FIXTURES_DIR) + "/" + rel;
}

const LoadedProblem& gripper() {
  static LoadedProblem lp =
      load_problem(fixture("gripper/domain.pddl"), fixture("gripper/g4.pddl"));
  return lp;
}

const LoadedProblem& logistics() {
  static LoadedProblem lp =
      load_problem(fixture("logistics/domain.pddl"), fixture("logistics/log2.pddl"));
  return lp;
}

void BM_parse_and_ground(benchmark::State& state) {
  std::string dom = read_file(fixture("logistics/domain.pddl"));
  std::string prob = read_file(fixture("logistics/log6.pddl"));
  for (auto _ : state) {
    pddl::DomainAst d = pddl::parse_domain(dom);
    pddl::ProblemAst p = pddl::parse_problem(prob);
    benchmark::DoNotOptimize(ground(d, p));
  }
}
BENCHMARK(BM_parse_and_ground);

void BM_expand_full_graph(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  for (auto _ : state) {
    PlanGraph g(p, false);
    for (int i = 0; i < 7; ++i) g.expand();
    benchmark::DoNotOptimize(g.mutex_count());
  }
}
BENCHMARK(BM_expand_full_graph);

void BM_expand_relaxed_graph(benchmark::State& state) {
  const GroundedProblem& p = logistics().grounded;
  for (auto _ : state) {
    PlanGraph g(p, true);
    while (!g.has_goals()) g.expand();
    benchmark::DoNotOptimize(g.node_count());
  }
}
BENCHMARK(BM_expand_relaxed_graph);

void BM_extract(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  PlanGraph g(p, false);
  for (int i = 0; i < 7; ++i) g.expand();
  for (auto _ : state) benchmark::DoNotOptimize(graphplan::extract(g));
}
BENCHMARK(BM_extract);

void BM_encode_cnf(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  PlanGraph g(p, false);
  for (int i = 0; i < 7; ++i) g.expand();
  for (auto _ : state) benchmark::DoNotOptimize(sat::encode(g));
}
BENCHMARK(BM_encode_cnf);

void BM_sat_solve(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  PlanGraph g(p, false);
  for (int i = 0; i < 7; ++i) g.expand();
  sat::CnfFormula f = sat::encode(g);
  for (auto _ : state) benchmark::DoNotOptimize(sat::solve_sat(f));
}
BENCHMARK(BM_sat_solve);

void BM_translate_net(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  PlanGraph g(p, false);
  for (int i = 0; i < 7; ++i) g.expand();
  for (auto _ : state) benchmark::DoNotOptimize(petri::translate(g));
}
BENCHMARK(BM_translate_net);

void BM_submarking(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  PlanGraph g(p, false);
  for (int i = 0; i < 7; ++i) g.expand();
  petri::PetriNet net = petri::translate(g);
  for (auto _ : state) benchmark::DoNotOptimize(petri::solve_submarking(net));
}
BENCHMARK(BM_submarking);

void BM_h_ff(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  for (auto _ : state) benchmark::DoNotOptimize(ff::h_ff(p.init, p));
}
BENCHMARK(BM_h_ff);

void BM_validate_plan(benchmark::State& state) {
  const GroundedProblem& p = gripper().grounded;
  SolveResult res = graphplan::solve(p, SolveLimits{});
  for (auto _ : state) benchmark::DoNotOptimize(validate(p, res.plan));
}
BENCHMARK(BM_validate_plan);

}  // namespace

BENCHMARK_MAIN();
