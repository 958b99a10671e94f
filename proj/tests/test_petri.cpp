#include "doctest.h"

#include "plankit/graphplan.hpp"
#include "plankit/petri.hpp"

#include <sstream>

#include "helpers.hpp"

using namespace plankit;
using namespace plankit::petri;
using testutil::load_fixture;

namespace {

struct GraphCounts {
  std::size_t action_nodes = 0, prop_nodes = 0, precond_edges = 0, add_edges = 0,
              mutex_pairs = 0;
};

GraphCounts count_graph(const PlanGraph& g) {
  GraphCounts c;
  for (int k = 0; k < g.prop_layer_count(); ++k)
    c.prop_nodes += g.prop_layer(k).members.count();
  for (int j = 0; j < g.action_layer_count(); ++j) {
    const ActionLayer& layer = g.action_layer(j);
    c.action_nodes += layer.records.size();
    c.mutex_pairs += layer.mutex.size();
    for (const LayerAction& r : layer.records) {
      c.precond_edges += g.pre_of(r).count();
      c.add_edges += g.add_of(r).count();
    }
  }
  return c;
}

void check_translation_counts(const PlanGraph& g, const PetriNet& net) {
  GraphCounts c = count_graph(g);
  std::size_t action_trans = 0, prop_trans = 0, prop_places = 0, precond_places = 0,
              mutex_places = 0;
  for (const Transition& t : net.transitions)
    (t.role == TransRole::Action ? action_trans : prop_trans) += 1;
  for (const Place& p : net.places) {
    if (p.role == PlaceRole::Prop) ++prop_places;
    if (p.role == PlaceRole::Precond) ++precond_places;
    if (p.role == PlaceRole::Mutex) ++mutex_places;
  }
  CHECK(action_trans == c.action_nodes);
  CHECK(prop_trans == c.prop_nodes);
  CHECK(prop_places == c.prop_nodes);
  CHECK(precond_places == c.precond_edges);
  CHECK(mutex_places == c.mutex_pairs);

  // aggregates: arcs and initial tokens
  std::size_t arcs = c.prop_nodes         // prop place -> prop transition
                     + c.add_edges        // effect arcs
                     + 2 * c.precond_edges  // in and out of each precond place
                     + 2 * c.mutex_pairs;   // two consumers per mutex place
  CHECK(net.arc_count() == arcs);
  std::size_t tokens = 0;
  for (int m : net.initial_marking) tokens += m;
  CHECK(tokens == g.prop_layer(0).members.count() + c.mutex_pairs);
  CHECK(net.goal_total == static_cast<int>(g.problem().goal.count()));
  // goal places exist exactly for the goal propositions already in the
  // final layer
  std::size_t present = 0;
  g.problem().goal.for_each([&](std::size_t gp) {
    if (g.prop_layer(g.prop_layer_count() - 1).members.test(gp)) ++present;
  });
  CHECK(net.goal_places.size() == present);
}

PetriNet fig212_net() {
  // three places a, b, c; transitions x (consumes a and b, produces c)
  // and y (consumes c); one token on a, two on b
  PetriNet net;
  net.places = {{PlaceRole::Prop, 0, 0, {}, {}},
                {PlaceRole::Prop, 0, 1, {}, {}},
                {PlaceRole::Prop, 0, 2, {}, {}}};
  net.transitions = {{TransRole::Action, 1, {false, 0}, -1},
                     {TransRole::Action, 1, {false, 1}, -1}};
  net.in_arcs = {{0, 1}, {2}};
  net.out_arcs = {{2}, {}};
  net.initial_marking = {1, 2, 0};
  net.depth = 1;
  return net;
}

}  // namespace

TEST_CASE("single firing moves tokens along the arcs") {
  PetriNet net = fig212_net();
  std::vector<int> m = fire(net, net.initial_marking, 0);
  CHECK(m == std::vector<int>{0, 1, 1});
  // x needs a token on place a again
  CHECK_THROWS_AS(fire(net, m, 0), Error);
  std::vector<int> m2 = fire(net, m, 1);
  CHECK(m2 == std::vector<int>{0, 1, 0});
}

TEST_CASE("a transition with no arcs leaves the marking unchanged") {
  PetriNet net = fig212_net();
  net.transitions.push_back({TransRole::Action, 1, {false, 2}, -1});
  net.in_arcs.push_back({});
  net.out_arcs.push_back({});
  CHECK(fire(net, net.initial_marking, 2) == net.initial_marking);
}

TEST_CASE("one shared token keeps an exclusive pair apart") {
  // two transitions fed off one mutex-style place
  PetriNet net;
  net.places = {{PlaceRole::Mutex, 1, -1, {false, 0}, {false, 1}}};
  net.transitions = {{TransRole::Action, 1, {false, 0}, -1},
                     {TransRole::Action, 1, {false, 1}, -1}};
  net.in_arcs = {{0}, {0}};
  net.out_arcs = {{}, {}};
  net.initial_marking = {1};
  net.depth = 1;
  std::vector<int> m = fire(net, net.initial_marking, 0);
  try {
    fire(net, m, 1);
    FAIL("expected NotEnabled");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::NotEnabled);
  }
}

TEST_CASE("translation rejects relaxed graphs") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, true);
  g.expand();
  try {
    translate(g);
    FAIL("expected RelaxedGraphRejected");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::RelaxedGraphRejected);
  }
}

TEST_CASE("translation counts on the dinner net") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, false);
  g.expand();
  g.expand();
  REQUIRE(g.has_goals());
  PetriNet net = translate(g);
  check_translation_counts(g, net);
}

TEST_CASE("translation counts across fixtures") {
  const char* cases[][2] = {
      {"comerciante/domain.pddl", "comerciante/r1.pddl"},
      {"gripper/domain.pddl", "gripper/g4.pddl"},
      {"blocks/domain.pddl", "blocks/sussman3.pddl"},
      {"trap/domain.pddl", "trap/p1.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    PlanGraph g(lp.grounded, false);
    for (int d = 0; d < 4; ++d) {
      g.expand();
      check_translation_counts(g, translate(g));
    }
  }
}

TEST_CASE("degenerate net: no expansions") {
  GroundedProblem p = testutil::make_problem(2, {{{0}, {1}, {}}}, {0}, {0});
  PlanGraph g(p, false);
  PetriNet net = translate(g);
  CHECK(net.depth == 0);
  CHECK(net.transitions.size() == 1);  // one prop transition
  CHECK(net.places.size() == 1);
  REQUIRE(net.goal_places.size() == 1);
  CHECK(net.initial_marking[net.goal_places[0]] == 1);
  auto firing = solve_submarking(net);
  REQUIRE(firing.has_value());
  CHECK(firing->fired.empty());
  CHECK(decode_plan(net, *firing).step_count() == 0);
}

TEST_CASE("dinner sub-marking: wrap at layer one, cook at layer two") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  const GroundedProblem& p = lp.grounded;
  PlanGraph g(p, false);
  g.expand();
  g.expand();
  PetriNet net = translate(g);
  auto firing = solve_submarking(net);
  REQUIRE(firing.has_value());
  CHECK(replay(net, *firing));

  std::vector<std::pair<std::string, int>> fired_real;
  for (int t : firing->fired) {
    const Transition& tr = net.transitions[t];
    if (tr.role == TransRole::Action && !tr.record.noop)
      fired_real.emplace_back(p.symbols->action_text(tr.record.index), tr.layer);
  }
  REQUIRE(fired_real.size() == 2);
  CHECK(fired_real[0] == std::pair<std::string, int>{"embrulhar", 1});
  CHECK(fired_real[1] == std::pair<std::string, int>{"cozinhar", 2});

  LayeredPlan plan = decode_plan(net, *firing);
  CHECK(plan.step_count() == 2);
  CHECK(validate(p, plan).valid);

  // exhaustive 0/1 check over all firing vectors: feasibility and minimum
  // real-action count agree with the search
  REQUIRE(net.transitions.size() <= 40);
  int n = static_cast<int>(net.transitions.size());
  int best = INT_MAX;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    FiringSet cand;
    for (int t = 0; t < n; ++t)
      if ((bits >> t) & 1) cand.fired.push_back(t);  // index order = layer order
    if (!replay(net, cand)) continue;
    best = std::min(best, cand.real_action_count(net));
  }
  CHECK(best == firing->real_action_count(net));
}

TEST_CASE("comerciante through the net matches the reference plan shape") {
  LoadedProblem lp = load_fixture("comerciante/domain.pddl", "comerciante/r1.pddl");
  SolveResult res = solve_petriplan1(lp.grounded, SolveLimits{});
  REQUIRE(res.outcome == Outcome::Plan);
  CHECK(res.plan.step_count() == 4);
  CHECK(res.plan.action_count() == 4);
  CHECK(validate(lp.grounded, res.plan).valid);
}

TEST_CASE("direct construction matches translation on the dinner problem") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, false);
  g.expand();
  g.expand();
  PetriNet via_graph = translate(g);

  DirectBuilder b(lp.grounded);
  b.expand();
  b.expand();
  const PetriNet& direct = b.net();

  // shallow nets carry no recurrent conflicts, so the structures coincide
  CHECK(direct.places.size() == via_graph.places.size());
  CHECK(direct.transitions.size() == via_graph.transitions.size());
  CHECK(direct.arc_count() == via_graph.arc_count());
  CHECK(direct.stats().conflicts == via_graph.stats().conflicts);
}

TEST_CASE("direct builder: zero expansions hold only the initial marking") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  DirectBuilder b(lp.grounded);
  CHECK(b.depth() == 0);
  std::size_t tokens = 0;
  for (int m : b.net().initial_marking) tokens += m;
  CHECK(tokens == lp.grounded.init.count());
  CHECK_FALSE(b.has_goals());
}

TEST_CASE("stagnation copies appear once the layers repeat") {
  LoadedProblem lp = load_fixture("gripper/domain.pddl", "gripper/g4.pddl");
  SolveResult res = solve_petriplan2(lp.grounded, SolveLimits{});
  REQUIRE(res.outcome == Outcome::Plan);
  // replaying the construction to the solved depth goes through stagnation
  DirectBuilder b(lp.grounded);
  for (int i = 0; i < res.depth; ++i) b.expand();
  CHECK(b.stagnant_copies() > 0);

  // the copied layer is structurally identical to its predecessor
  const PetriNet& net = b.net();
  auto layer_stats = [&](int j) {
    std::size_t places = 0, trans = 0;
    for (const Place& p : net.places)
      if (p.layer == j) ++places;
    for (const Transition& t : net.transitions)
      if (t.layer == j) ++trans;
    return std::make_pair(places, trans);
  };
  CHECK(layer_stats(res.depth) == layer_stats(res.depth - 1));
}

TEST_CASE("blocks does not stagnate before its solution depth") {
  LoadedProblem lp = load_fixture("blocks/domain.pddl", "blocks/sussman3.pddl");
  SolveResult res = solve_petriplan2(lp.grounded, SolveLimits{});
  REQUIRE(res.outcome == Outcome::Plan);
  DirectBuilder b(lp.grounded);
  for (int i = 0; i < res.depth; ++i) b.expand();
  CHECK(b.stagnant_copies() == 0);
}

TEST_CASE("petriplan variants agree with each other") {
  const char* cases[][2] = {
      {"comerciante/domain.pddl", "comerciante/r1.pddl"},
      {"jantar/domain.pddl", "jantar/p1.pddl"},
      {"blocks/domain.pddl", "blocks/sussman3.pddl"},
      {"trap/domain.pddl", "trap/p1.pddl"},
      {"logistics/domain.pddl", "logistics/log2.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    SolveResult p1 = solve_petriplan1(lp.grounded, SolveLimits{});
    SolveResult p2 = solve_petriplan2(lp.grounded, SolveLimits{});
    REQUIRE(p1.outcome == Outcome::Plan);
    REQUIRE(p2.outcome == Outcome::Plan);
    CHECK(p1.plan.step_count() == p2.plan.step_count());
    // the direct build skips recurrent conflicts; its optimum can only be
    // at least as small
    CHECK(p2.plan.action_count() <= p1.plan.action_count());
    CHECK(validate(lp.grounded, p1.plan).valid);
    CHECK(validate(lp.grounded, p2.plan).valid);
  }
}

TEST_CASE("direct nets carry fewer nonzeros on deep problems") {
  const char* cases[][2] = {
      {"gripper/domain.pddl", "gripper/g4.pddl"},
      {"blocks/domain.pddl", "blocks/sussman3.pddl"},
      {"logistics/domain.pddl", "logistics/log2.pddl"},
  };
  for (auto& [dom, prob] : cases) {
    LoadedProblem lp = load_fixture(dom, prob);
    SolveResult p1 = solve_petriplan1(lp.grounded, SolveLimits{});
    SolveResult p2 = solve_petriplan2(lp.grounded, SolveLimits{});
    REQUIRE(p1.outcome == Outcome::Plan);
    REQUIRE(p2.outcome == Outcome::Plan);
    REQUIRE(p1.sizes.has_net);
    REQUIRE(p2.sizes.has_net);
    CHECK(p2.sizes.nonzeros < p1.sizes.nonzeros);
    CHECK(p2.sizes.conflicts < p1.sizes.conflicts);
  }
}

TEST_CASE("random instances: submarking agrees with exhaustive enumeration") {
  std::mt19937 rng(31337);
  int nets_checked = 0;
  for (int trial = 0; trial < 80 && nets_checked < 25; ++trial) {
    GroundedProblem p = testutil::random_problem(rng);
    PlanGraph g(p, false);
    g.expand();
    if (!g.has_goals()) g.expand();
    PetriNet net = translate(g);
    if (net.transitions.size() > 22) continue;  // keep 2^n in bounds
    ++nets_checked;

    int n = static_cast<int>(net.transitions.size());
    int best = INT_MAX;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      FiringSet cand;
      for (int t = 0; t < n; ++t)
        if ((bits >> t) & 1) cand.fired.push_back(t);
      if (!replay(net, cand)) continue;
      best = std::min(best, cand.real_action_count(net));
    }
    auto firing = solve_submarking(net);
    if (best == INT_MAX) {
      CHECK_FALSE(firing.has_value());
    } else {
      REQUIRE(firing.has_value());
      CHECK(replay(net, *firing));
      CHECK(firing->real_action_count(net) == best);
    }
  }
  CHECK(nets_checked >= 25);
}

TEST_CASE("net text export carries places, transitions, arcs and stats") {
  LoadedProblem lp = load_fixture("jantar/domain.pddl", "jantar/p1.pddl");
  PlanGraph g(lp.grounded, false);
  g.expand();
  g.expand();
  PetriNet net = translate(g);
  std::ostringstream os;
  net.to_text(*lp.grounded.symbols, os);
  std::string text = os.str();
  CHECK(text.find("P 0 prop") != std::string::npos);
  CHECK(text.find("T ") != std::string::npos);
  CHECK(text.find(" -> ") != std::string::npos);
  CHECK(text.find("rows " + std::to_string(net.places.size())) != std::string::npos);
  CHECK(text.find("columns " + std::to_string(net.transitions.size())) !=
        std::string::npos);
  CHECK(text.find("conflicts") != std::string::npos);
}
