#include "doctest.h"

#include "plankit/graphplan.hpp"

#include "helpers.hpp"

using namespace plankit;
using testutil::load_fixture;

namespace {

LayeredPlan make_plan(std::vector<std::vector<int>> layers) {
  LayeredPlan plan;
  for (auto& l : layers) {
    plan.layers.emplace_back();
    for (int a : l) plan.layers.back().push_back({false, a});
  }
  return plan;
}

}  // namespace

TEST_CASE("the comerciante reference plan validates; swapping steps breaks it") {
  LoadedProblem lp = load_fixture("comerciante/domain.pddl", "comerciante/r1.pddl");
  const GroundedProblem& p = lp.grounded;
  int d21 = testutil::action_of(p, "dirigir|caminhao|loja2|loja1");
  int load = testutil::action_of(p, "carregar|pacote|caminhao|loja1");
  int d12 = testutil::action_of(p, "dirigir|caminhao|loja1|loja2");
  int unload = testutil::action_of(p, "descarregar|pacote|caminhao|loja2");

  Verdict ok = validate(p, make_plan({{d21}, {load}, {d12}, {unload}}));
  CHECK(ok.valid);

  Verdict bad = validate(p, make_plan({{d21}, {load}, {unload}, {d12}}));
  REQUIRE_FALSE(bad.valid);
  CHECK(bad.failure->reason == FailReason::PreconditionViolated);
  CHECK(bad.failure->layer == 2);
}

TEST_CASE("empty plan is valid exactly when the goal already holds") {
  GroundedProblem yes = testutil::make_problem(2, {{{0}, {1}, {}}}, {0}, {0});
  CHECK(validate(yes, LayeredPlan{}).valid);

  GroundedProblem no = testutil::make_problem(2, {{{0}, {1}, {}}}, {0}, {1});
  Verdict v = validate(no, LayeredPlan{});
  REQUIRE_FALSE(v.valid);
  CHECK(v.failure->reason == FailReason::GoalNotReached);
  CHECK(v.failure->layer == 0);
}

TEST_CASE("interference inside one layer is rejected") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  const GroundedProblem& p = lp.grounded;
  int coz = testutil::action_of(p, "cozinhar");
  int emb = testutil::action_of(p, "embrulhar");
  Verdict v = validate(p, make_plan({{coz, emb}}));
  REQUIRE_FALSE(v.valid);
  CHECK(v.failure->reason == FailReason::InterferenceInLayer);
  CHECK(v.failure->layer == 0);
}

TEST_CASE("parallel independent actions in one layer are fine") {
  LoadedProblem lp = load_fixture("gripper/domain.pddl", "gripper/g4.pddl");
  const GroundedProblem& p = lp.grounded;
  int p1 = testutil::action_of(p, "pick|ball1|rooma|left");
  int p2 = testutil::action_of(p, "pick|ball2|rooma|right");
  LayeredPlan plan = make_plan({{p1, p2}});
  // both picks together: no goal yet, but no precondition/interference error
  Verdict v = validate(p, plan);
  REQUIRE_FALSE(v.valid);
  CHECK(v.failure->reason == FailReason::GoalNotReached);
}

TEST_CASE("plan text round trip") {
  LoadedProblem lp = load_fixture("gripper/domain.pddl", "gripper/g4.pddl");
  SolveResult res = graphplan::solve(lp.grounded, SolveLimits{});
  REQUIRE(res.outcome == Outcome::Plan);
  std::string text = plan_to_text(res.plan, *lp.grounded.symbols);
  LayeredPlan parsed = plan_from_text(text, *lp.grounded.symbols);
  CHECK(parsed.step_count() == res.plan.step_count());
  CHECK(parsed.action_count() == res.plan.action_count());
  CHECK(validate(lp.grounded, parsed).valid);
  CHECK_THROWS_AS(plan_from_text("0: (no-such-action)", *lp.grounded.symbols), Error);
}

TEST_CASE("validator agrees with the simulation oracle on random mutations") {
  // covered across fixtures in the acceptance suite; spot-check one here
  LoadedProblem lp = load_fixture("blocks/domain.pddl", "blocks/sussman3.pddl");
  SolveResult res = graphplan::solve(lp.grounded, SolveLimits{});
  REQUIRE(res.outcome == Outcome::Plan);
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    LayeredPlan mutant = res.plan;
    std::uniform_int_distribution<int> layer_d(0, mutant.step_count() - 1);
    int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    int layer = layer_d(rng);
    if (kind == 0 && !mutant.layers[layer].empty()) {
      mutant.layers[layer].erase(mutant.layers[layer].begin());
    } else if (kind == 1) {
      int other = layer_d(rng);
      std::swap(mutant.layers[layer], mutant.layers[other]);
    } else {
      int a = std::uniform_int_distribution<int>(0, lp.grounded.action_count() - 1)(rng);
      mutant.layers[layer].push_back({false, a});
    }
    Verdict got = validate(lp.grounded, mutant);
    Verdict want = testutil::simulate_oracle(lp.grounded, mutant);
    CHECK(got.valid == want.valid);
    if (!got.valid && !want.valid) {
      CHECK(got.failure->reason == want.failure->reason);
      CHECK(got.failure->layer == want.failure->layer);
    }
  }
}
