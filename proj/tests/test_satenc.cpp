#include "doctest.h"

#include "plankit/graphplan.hpp"
#include "plankit/satenc.hpp"

#include <set>
#include <sstream>

#include "helpers.hpp"

using namespace plankit;
using namespace plankit::sat;
using testutil::load_fixture;

namespace {

bool has_clause(const CnfFormula& f, std::vector<int> lits) {
  std::sort(lits.begin(), lits.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  for (const auto& c : f.clauses)
    if (c == lits) return true;
  return false;
}

// all models projected onto non-prop variables
std::set<std::vector<bool>> action_models(const CnfFormula& f) {
  std::set<std::vector<bool>> out;
  int n = f.var_count();
  REQUIRE(n <= 20);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool ok = true;
    auto value = [&](int lit) {
      bool v = (bits >> (std::abs(lit) - 1)) & 1;
      return lit > 0 ? v : !v;
    };
    for (const auto& c : f.clauses) {
      bool sat = false;
      for (int lit : c)
        if (value(lit)) {
          sat = true;
          break;
        }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<bool> proj;
    for (int id = 1; id <= n; ++id)
      if (f.vars[id - 1].kind != VarKind::Prop) proj.push_back((bits >> (id - 1)) & 1);
    out.insert(proj);
  }
  return out;
}

}  // namespace

TEST_CASE("conversion rules on the ferry domain") {
  LoadedProblem lp = load_fixture("rocket/domain.pddl", "rocket/p1.pddl");
  const GroundedProblem& p = lp.grounded;
  PlanGraph g(p, false);
  while (!g.has_goals()) g.expand();
  CnfFormula f = encode(g);

  int dentro = testutil::prop_of(p, "dentro|a|r");
  int carregar = testutil::action_of(p, "carregar|a|r|l");
  int em_a_l = testutil::prop_of(p, "em|a|l");
  int em_r_l = testutil::prop_of(p, "em-robo|r|l");
  int mover = testutil::action_of(p, "mover|r|l|p");

  // a proposition implies the disjunction of its producers, the
  // maintenance step included
  int d2 = f.var_id(VarKind::Prop, dentro, 2);
  int c2 = f.var_id(VarKind::Action, carregar, 2);
  int n2 = f.var_id(VarKind::Noop, dentro, 2);
  REQUIRE(d2 > 0);
  REQUIRE(c2 > 0);
  REQUIRE(n2 > 0);
  CHECK(has_clause(f, {-d2, c2, n2}));

  // actions imply their preconditions, one binary clause each
  int c1 = f.var_id(VarKind::Action, carregar, 1);
  int al0 = f.var_id(VarKind::Prop, em_a_l, 0);
  int rl0 = f.var_id(VarKind::Prop, em_r_l, 0);
  REQUIRE(c1 > 0);
  CHECK(has_clause(f, {-c1, al0}));
  CHECK(has_clause(f, {-c1, rl0}));

  // exclusive actions cannot fire together
  int m1 = f.var_id(VarKind::Action, mover, 1);
  REQUIRE(m1 > 0);
  CHECK(has_clause(f, {-c1, -m1}));

  // initial-layer and final-layer unit clauses
  CHECK(has_clause(f, {al0}));
  int goal = testutil::prop_of(p, "em|a|p");
  int gl = f.var_id(VarKind::Prop, goal, g.action_layer_count());
  REQUIRE(gl > 0);
  CHECK(has_clause(f, {gl}));
}

TEST_CASE("clause count is the exact sum of the four rules") {
  const char* cases[][2] = {
      {"jantar/domain.pddl", "jantar/p1.pddl"},
      {"comerciante/domain.pddl", "comerciante/r1.pddl"},
      {"rocket/domain.pddl", "rocket/p1.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    PlanGraph g(lp.grounded, false);
    while (!g.has_goals()) g.expand();
    CnfFormula f = encode(g);
    std::size_t expect = lp.grounded.init.count() + lp.grounded.goal.count();
    for (int j = 1; j <= g.action_layer_count(); ++j) {
      expect += g.prop_layer(j).members.count();  // rule 2, one per occurrence
      for (const LayerAction& r : g.action_layer(j - 1).records)
        expect += g.pre_of(r).count();  // rule 3
      expect += g.action_layer(j - 1).mutex.size();  // rule 4
    }
    CHECK(f.clauses.size() == expect);
  }
}

TEST_CASE("encode rejects relaxed graphs and absent goals") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph relaxed(lp.grounded, true);
  relaxed.expand();
  CHECK_THROWS_AS(encode(relaxed), Error);

  PlanGraph g(lp.grounded, false);
  g.expand();  // goals still exclusive at depth 1
  try {
    encode(g);
    FAIL("expected GoalAbsent");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::GoalAbsent);
  }
}

TEST_CASE("dpll basics") {
  // (x) and (-x or y)
  auto model = dpll(2, {{1}, {-1, 2}});
  REQUIRE(model.has_value());
  CHECK((*model)[0]);
  CHECK((*model)[1]);

  CHECK_FALSE(dpll(1, {{1}, {-1}}).has_value());
  CHECK_FALSE(dpll(1, {{}}).has_value());

  // forces genuine search: no unit clauses
  auto hard = dpll(3, {{1, 2}, {-1, 3}, {-2, -3}, {-1, -2}});
  REQUIRE(hard.has_value());
}

TEST_CASE("resolution primitive reproduces persistence folding") {
  // (-d3 or c1 or c2 or m) with (-m or d1) resolved on m gives
  // (d1 or -d3 or c1 or c2)
  std::vector<int> rule2 = {-4, 1, 2, 3};  // m = 3, d3 = 4
  std::vector<int> rule3 = {-3, 5};        // d1 = 5
  auto res = resolve_on(3, rule2, rule3);
  REQUIRE(res.has_value());
  CHECK(*res == std::vector<int>{1, 2, -4, 5});

  // tautologies vanish
  CHECK_FALSE(resolve_on(1, {1, 2}, {-1, -2}).has_value());
}

TEST_CASE("proposition elimination leaves action-to-action implications") {
  // a3 -> p1, a3 -> p2, a4 -> p1, a4 -> p2, p1 -> (a1 or a2),
  // p2 -> (a1 or a2); eliminating p1 and p2 yields a3/a4 -> (a1 or a2)
  CnfFormula f;
  f.vars = {
      {VarKind::Action, 0, 1},  // 1: a1
      {VarKind::Action, 1, 1},  // 2: a2
      {VarKind::Action, 2, 2},  // 3: a3
      {VarKind::Action, 3, 2},  // 4: a4
      {VarKind::Prop, 0, 1},    // 5: p1
      {VarKind::Prop, 1, 1},    // 6: p2
  };
  f.clauses = {{-3, 5}, {-3, 6}, {-4, 5}, {-4, 6}, {-5, 1, 2}, {-6, 1, 2}};
  CnfFormula s = simplify(f);
  CHECK_FALSE(s.contradiction);
  REQUIRE(s.clauses.size() == 2);
  CHECK(has_clause(s, {-3, 1, 2}));
  CHECK(has_clause(s, {-4, 1, 2}));
}

TEST_CASE("simplify is the identity without proposition variables") {
  CnfFormula f;
  f.vars = {{VarKind::Action, 0, 1}, {VarKind::Action, 1, 1}};
  f.clauses = {{-1, 2}, {1, 2}};
  CnfFormula s = simplify(f);
  CHECK(s.clauses == f.clauses);
}

TEST_CASE("simplify preserves satisfiability and action-projected models") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, false);
  while (!g.has_goals()) g.expand();
  CnfFormula f = encode(g);
  REQUIRE(f.var_count() <= 20);  // full enumeration is feasible
  CnfFormula s = simplify(f);

  auto before = action_models(f);
  // the simplified formula has the same variable table; prop variables are
  // unconstrained there, so compare projections of models
  auto after = action_models(s);
  CHECK(before == after);
  CHECK_FALSE(before.empty());

  auto model = solve_sat(f);
  auto model_s = solve_sat(s);
  CHECK(model.has_value() == model_s.has_value());
}

TEST_CASE("dinner end to end, with and without simplification") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  for (bool simp : {false, true}) {
    SolveResult res = sat::solve(lp.grounded, SolveLimits{}, simp);
    REQUIRE(res.outcome == Outcome::Plan);
    CHECK(res.plan.step_count() == 2);
    CHECK(res.plan.action_count() == 2);
    const SymbolTable& sym = *lp.grounded.symbols;
    CHECK(sym.action_text(res.plan.real_actions(0)[0]) == "embrulhar");
    CHECK(sym.action_text(res.plan.real_actions(1)[0]) == "cozinhar");
    CHECK(validate(lp.grounded, res.plan).valid);
  }
}

TEST_CASE("comerciante end to end via sat") {
  LoadedProblem lp = load_fixture("comerciante/domain.pddl", "comerciante/r1.pddl");
  SolveResult res = sat::solve(lp.grounded, SolveLimits{}, false);
  REQUIRE(res.outcome == Outcome::Plan);
  CHECK(res.plan.step_count() == 4);
  CHECK(validate(lp.grounded, res.plan).valid);
}

TEST_CASE("satisfiable exactly when extraction succeeds, per depth") {
  const char* cases[][2] = {
      {"comerciante/domain.pddl", "comerciante/r1.pddl"},
      {"jantar/domain.pddl", "jantar/p1.pddl"},
      {"blocks/domain.pddl", "blocks/sussman3.pddl"},
      {"trap/domain.pddl", "trap/p1.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    PlanGraph g(lp.grounded, false);
    for (int depth = 1; depth <= 6; ++depth) {
      g.expand();
      if (!g.has_goals()) continue;
      bool extracted = graphplan::extract(g).has_value();
      bool satisfiable = solve_sat(encode(g)).has_value();
      CHECK(extracted == satisfiable);
    }
  }
}

TEST_CASE("models decode to validating plans") {
  const char* cases[][2] = {
      {"comerciante/domain.pddl", "comerciante/r1.pddl"},
      {"jantar/domain.pddl", "jantar/p1.pddl"},
      {"blocks/domain.pddl", "blocks/sussman3.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    PlanGraph g(lp.grounded, false);
    while (!g.has_goals()) g.expand();
    CnfFormula f = encode(g);
    auto model = solve_sat(f);
    while (!model) {
      g.expand();
      f = encode(g);
      model = solve_sat(f);
    }
    LayeredPlan plan = decode_model(f, *model);
    CHECK(validate(lp.grounded, plan).valid);
  }
}

TEST_CASE("dimacs export and model import round trip") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, false);
  while (!g.has_goals()) g.expand();
  CnfFormula f = encode(g);

  std::ostringstream os;
  to_dimacs(f, *lp.grounded.symbols, os);
  std::string text = os.str();
  CHECK(text.find("p cnf " + std::to_string(f.var_count())) != std::string::npos);
  CHECK(text.find("c var 1 = prop") != std::string::npos);
  CHECK(text.find("@layer") != std::string::npos);

  // feed our own model back through the importer
  auto model = solve_sat(f);
  REQUIRE(model.has_value());
  std::ostringstream ms;
  ms << "SAT\n";
  for (int id = 1; id <= f.var_count(); ++id)
    ms << ((*model)[id - 1] ? id : -id) << ' ';
  ms << "0\n";
  std::istringstream in(ms.str());
  std::vector<bool> parsed = parse_model(f, in);
  CHECK(parsed == *model);
  LayeredPlan plan = decode_model(f, parsed);
  CHECK(validate(lp.grounded, plan).valid);
}

TEST_CASE("empty-plan instance decodes to the empty plan") {
  GroundedProblem p = testutil::make_problem(2, {{{0}, {1}, {}}}, {0}, {0});
  SolveResult res = sat::solve(p, SolveLimits{}, false);
  REQUIRE(res.outcome == Outcome::Plan);
  CHECK(res.plan.step_count() == 0);
}

TEST_CASE("unsolvable problems come back unsolvable") {
  LoadedProblem lp = load_fixture("island/domain.pddl", "island/p1.pddl");
  SolveResult res = sat::solve(lp.grounded, SolveLimits{}, false);
  CHECK(res.outcome == Outcome::Unsolvable);
  CHECK(res.note == "criterion=leveled-off");
}
