#include "plankit/graphplan.hpp"

#include <algorithm>

namespace plankit::graphplan {

namespace {

class Extractor {
public:
  explicit Extractor(const PlanGraph& g) : g_(g) {
    chosen_.resize(g.action_layer_count());
    // producer record positions per proposition, per layer: the maintenance
    // step first (it is free), then real actions in ascending index
    producers_.resize(g.action_layer_count());
    for (int j = 0; j < g.action_layer_count(); ++j) {
      producers_[j].assign(g.problem().prop_count(), {});
      const ActionLayer& layer = g.action_layer(j);
      for (std::size_t r = 0; r < layer.records.size(); ++r)
        g.add_of(layer.records[r]).for_each([&](std::size_t p) {
          producers_[j][p].push_back(static_cast<int>(r));
        });
      for (auto& cands : producers_[j]) {
        // records list reals before noops; the unique noop sits last
        if (!cands.empty() && layer.records[cands.back()].noop)
          std::rotate(cands.begin(), cands.end() - 1, cands.end());
      }
    }
  }

  std::optional<LayeredPlan> run() {
    if (!solve_layer(g_.action_layer_count(), g_.problem().goal))
      return std::nullopt;
    LayeredPlan plan;
    plan.layers.resize(g_.action_layer_count());
    for (int j = 0; j < g_.action_layer_count(); ++j) {
      for (int r : chosen_[j]) {
        const LayerAction& rec = g_.action_layer(j).records[r];
        plan.layers[j].push_back({rec.noop, rec.index});
      }
      std::sort(plan.layers[j].begin(), plan.layers[j].end(),
                [](const PlanStep& a, const PlanStep& b) {
                  if (a.noop != b.noop) return !a.noop;
                  return a.index < b.index;
                });
    }
    return plan;
  }

private:
  // j counts action layers still to cover; j == 0 means prop layer 0
  bool solve_layer(int j, const Bitset& subgoals) {
    if (j == 0) return true;
    std::vector<int> goals = subgoals.to_indices();
    std::sort(goals.rbegin(), goals.rend());  // stack order
    std::vector<int> picks;
    Bitset covered(g_.problem().prop_count());
    return assign(j, goals, 0, picks, covered);
  }

  bool assign(int j, const std::vector<int>& goals, std::size_t gi,
              std::vector<int>& picks, const Bitset& covered) {
    while (gi < goals.size() && covered.test(goals[gi])) ++gi;
    if (gi == goals.size()) {
      Bitset next(g_.problem().prop_count());
      const ActionLayer& layer = g_.action_layer(j - 1);
      for (int r : picks) next |= g_.pre_of(layer.records[r]);
      if (!solve_layer(j - 1, next)) return false;
      chosen_[j - 1] = picks;
      return true;
    }
    const ActionLayer& layer = g_.action_layer(j - 1);
    for (int cand : producers_[j - 1][goals[gi]]) {
      bool clash = false;
      for (int r : picks) {
        if (layer.mutex.contains(cand, r)) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      picks.push_back(cand);
      Bitset covered2 = covered;
      covered2 |= g_.add_of(layer.records[cand]);
      if (assign(j, goals, gi + 1, picks, covered2)) return true;
      picks.pop_back();
    }
    return false;
  }

  const PlanGraph& g_;
  std::vector<std::vector<std::vector<int>>> producers_;  // [layer][prop]
  std::vector<std::vector<int>> chosen_;                  // record positions
};

}  // namespace

std::optional<LayeredPlan> extract(const PlanGraph& g) {
  return Extractor(g).run();
}

namespace {

void fill_graph_sizes(SolveResult& res, const PlanGraph& g) {
  res.sizes.has_graph = true;
  res.sizes.nodes = g.node_count();
  res.sizes.edges = g.edge_count();
  res.sizes.mutexes = g.mutex_count();
}

}  // namespace

SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  PhaseTimes* times) {
  PlanGraph g(p, /*relaxed=*/false);
  auto expand_once = [&] {
    Stopwatch clock;
    double mutex_before = g.mutex_seconds();
    g.expand();
    if (times) {
      double total = clock.seconds();
      double mutex_delta = g.mutex_seconds() - mutex_before;
      times->mutex += mutex_delta;
      times->expand += total - mutex_delta;
      times->per_expansion.push_back(total - mutex_delta);
    }
  };

  SolveResult res;
  while (!g.has_goals()) {
    if (g.leveled_off()) {
      res.outcome = Outcome::Unsolvable;
      res.note = "criterion=leveled-off";
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (g.action_layer_count() >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (limits.expired()) {
      res.outcome = Outcome::Timeout;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    expand_once();
  }

  while (true) {
    Stopwatch clock;
    std::optional<LayeredPlan> plan = extract(g);
    if (times) times->search += clock.seconds();
    if (plan) {
      res.outcome = Outcome::Plan;
      res.plan = std::move(*plan);
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    // a leveled-off graph still gains horizon from further (noop-copied)
    // layers, so extraction failure alone never settles unsolvability
    if (g.action_layer_count() >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (limits.expired()) {
      res.outcome = Outcome::Timeout;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    expand_once();
  }
}

}  // namespace plankit::graphplan
