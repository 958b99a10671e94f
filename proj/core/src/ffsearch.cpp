#include "plankit/ffsearch.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace plankit::ff {

RelaxedPlan relaxed_plan(const Bitset& state, const GroundedProblem& p) {
  const int nprops = p.prop_count();
  const int nacts = p.action_count();

  // delete-free forward fixpoint, recording first levels
  std::vector<int> prop_level(nprops, kUnreachable);
  std::vector<int> action_level(nacts, kUnreachable);
  state.for_each([&](std::size_t i) { prop_level[i] = 0; });

  Bitset members = state;
  int m = -1;
  for (int k = 0;; ++k) {
    if (p.goal.subset_of(members)) {
      m = k;
      break;
    }
    Bitset next = members;
    for (int a = 0; a < nacts; ++a) {
      if (action_level[a] == kUnreachable && p.actions[a].pre.subset_of(members))
        action_level[a] = k;
      if (action_level[a] <= k) next |= p.actions[a].add;
    }
    if (next == members) break;  // fixpoint without the goal
    next.for_each([&](std::size_t i) {
      if (prop_level[i] == kUnreachable) prop_level[i] = k + 1;
    });
    members = std::move(next);
  }

  RelaxedPlan rp;
  rp.first_layer_goals = Bitset(nprops);
  if (m < 0) return rp;
  rp.reachable = true;
  rp.layer_count = m;
  rp.layers.assign(m, {});
  if (m == 0) return rp;

  std::vector<int> pre_count(nacts);
  for (int a = 0; a < nacts; ++a)
    pre_count[a] = static_cast<int>(p.actions[a].pre.count());

  // subgoal sets per layer plus what chosen actions already achieve there
  std::vector<std::vector<int>> subgoals(m + 1);
  std::vector<Bitset> achieved(m + 1, Bitset(nprops));
  auto schedule = [&](int prop) {
    int level = prop_level[prop];
    if (level == 0) return;  // satisfied by the state itself
    subgoals[level].push_back(prop);
  };
  p.goal.for_each([&](std::size_t g) { schedule(static_cast<int>(g)); });

  for (int k = m; k >= 1; --k) {
    std::sort(subgoals[k].rbegin(), subgoals[k].rend());
    for (std::size_t gi = 0; gi < subgoals[k].size(); ++gi) {
      int g = subgoals[k][gi];
      if (achieved[k].test(g)) continue;
      // producer applicable one layer down with the fewest preconditions
      int best = -1;
      for (int a = 0; a < nacts; ++a) {
        if (action_level[a] > k - 1 || !p.actions[a].add.test(g)) continue;
        if (best < 0 || pre_count[a] < pre_count[best]) best = a;
      }
      rp.layers[k - 1].push_back(best);
      achieved[k] |= p.actions[best].add;
      p.actions[best].pre.for_each(
          [&](std::size_t q) { schedule(static_cast<int>(q)); });
    }
    if (k == 1) rp.first_layer_schedule = rp.layers[0];
    std::sort(rp.layers[k - 1].begin(), rp.layers[k - 1].end());
  }
  for (int g : subgoals[1]) rp.first_layer_goals.set(g);
  return rp;
}

int h_ff(const Bitset& state, const GroundedProblem& p) {
  RelaxedPlan rp = relaxed_plan(state, p);
  return rp.reachable ? rp.action_total() : kUnreachable;
}

std::vector<int> helpful_actions(const Bitset& state, const GroundedProblem& p,
                                 const RelaxedPlan& rp) {
  std::vector<int> out;
  if (!rp.reachable) return out;
  std::vector<bool> seen(p.action_count(), false);
  for (int a : rp.first_layer_schedule) {
    if (seen[a] || !p.actions[a].pre.subset_of(state)) continue;
    if (p.actions[a].add.intersects(rp.first_layer_goals)) {
      seen[a] = true;
      out.push_back(a);
    }
  }
  for (int a = 0; a < p.action_count(); ++a)
    if (!seen[a] && p.actions[a].pre.subset_of(state) &&
        p.actions[a].add.intersects(rp.first_layer_goals))
      out.push_back(a);
  return out;
}

std::vector<int> helpful_actions(const Bitset& state, const GroundedProblem& p) {
  return helpful_actions(state, p, relaxed_plan(state, p));
}

bool goal_deletion_prune(const RelaxedPlan& rp, const GroundedProblem& p) {
  for (const auto& layer : rp.layers)
    for (int a : layer)
      if (p.actions[a].del.intersects(p.goal)) return true;
  return false;
}

namespace {

Bitset apply_unchecked(const Bitset& state, const GroundAction& a) {
  Bitset next = state;
  next.subtract(a.del);
  next |= a.add;
  return next;
}

std::vector<int> applicable_actions(const Bitset& state, const GroundedProblem& p) {
  std::vector<int> out;
  for (int a = 0; a < p.action_count(); ++a)
    if (p.actions[a].pre.subset_of(state)) out.push_back(a);
  return out;
}

}  // namespace

ClimbResult enforced_hill_climb(const GroundedProblem& p, const Options& opts,
                                const SolveLimits& limits) {
  ClimbResult result;
  Bitset state = p.init;
  RelaxedPlan rp = relaxed_plan(state, p);
  if (!rp.reachable) return result;  // Failed
  int h = rp.action_total();

  while (h > 0) {
    if (limits.expired()) {
      result.status = ClimbStatus::Timeout;
      return result;
    }

    struct Node {
      Bitset state;
      std::vector<int> path;
      std::vector<int> succ;  // successor actions to try from here
    };
    std::deque<Node> queue;
    std::unordered_set<Bitset, BitsetHash> visited;
    visited.insert(state);
    queue.push_back({state, {},
                     opts.use_helpful ? helpful_actions(state, p, rp)
                                      : applicable_actions(state, p)});

    bool improved = false;
    while (!queue.empty() && !improved) {
      if (limits.expired()) {
        result.status = ClimbStatus::Timeout;
        return result;
      }
      Node node = std::move(queue.front());
      queue.pop_front();
      for (int a : node.succ) {
        Bitset next = apply_unchecked(node.state, p.actions[a]);
        if (visited.count(next)) continue;
        visited.insert(next);
        RelaxedPlan nrp = relaxed_plan(next, p);
        if (!nrp.reachable) continue;  // dead end
        if (opts.use_pruning && goal_deletion_prune(nrp, p)) continue;
        std::vector<int> path = node.path;
        path.push_back(a);
        int nh = nrp.action_total();
        if (nh < h) {
          // commit the lookahead path and restart from the better state
          for (int step : path) result.actions.push_back(step);
          state = std::move(next);
          rp = std::move(nrp);
          h = nh;
          improved = true;
          break;
        }
        std::vector<int> succ = opts.use_helpful ? helpful_actions(next, p, nrp)
                                                 : applicable_actions(next, p);
        queue.push_back({std::move(next), std::move(path), std::move(succ)});
      }
    }
    if (!improved) return result;  // Failed: plateau exhausted
  }
  result.status = ClimbStatus::Plan;
  return result;
}

BestFirstResult best_first(const GroundedProblem& p, const SolveLimits& limits) {
  BestFirstResult result;

  struct Node {
    Bitset state;
    int parent;
    int action;
  };
  std::vector<Node> nodes;
  std::unordered_set<Bitset, BitsetHash> closed;

  using Entry = std::tuple<int, int>;  // (h, node id); ids break ties FIFO
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

  int h0 = h_ff(p.init, p);
  if (h0 == kUnreachable) return result;  // relaxed-unreachable: no plan exists
  nodes.push_back({p.init, -1, -1});
  closed.insert(p.init);
  open.emplace(h0, 0);

  while (!open.empty()) {
    if (limits.expired()) {
      result.outcome = Outcome::Timeout;
      return result;
    }
    int id = std::get<1>(open.top());
    open.pop();
    Bitset state = nodes[id].state;
    if (p.goal.subset_of(state)) {
      std::vector<int> path;
      for (int cur = id; nodes[cur].parent >= 0; cur = nodes[cur].parent)
        path.push_back(nodes[cur].action);
      std::reverse(path.begin(), path.end());
      result.outcome = Outcome::Plan;
      result.actions = std::move(path);
      return result;
    }
    for (int a : applicable_actions(state, p)) {
      Bitset next = apply_unchecked(state, p.actions[a]);
      if (closed.count(next)) continue;
      closed.insert(next);
      int nh = h_ff(next, p);
      if (nh == kUnreachable) continue;  // true dead end under relaxation
      nodes.push_back({std::move(next), id, a});
      open.emplace(nh, static_cast<int>(nodes.size()) - 1);
    }
  }
  return result;  // open exhausted over the finite space
}

SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  const Options& opts, PhaseTimes* times) {
  Stopwatch clock;
  SolveResult res;

  ClimbResult climb = enforced_hill_climb(p, opts, limits);
  std::vector<int> actions;
  if (climb.status == ClimbStatus::Plan) {
    res.outcome = Outcome::Plan;
    actions = std::move(climb.actions);
  } else if (climb.status == ClimbStatus::Timeout) {
    res.outcome = Outcome::Timeout;
  } else {
    BestFirstResult bf = best_first(p, limits);
    res.outcome = bf.outcome;
    if (bf.outcome == Outcome::Plan) actions = std::move(bf.actions);
    if (bf.outcome == Outcome::Unsolvable) res.note = "criterion=exhaustion";
  }

  for (int a : actions) res.plan.layers.push_back({PlanStep{false, a}});
  res.depth = res.plan.step_count();
  if (times) times->search += clock.seconds();
  return res;
}

}  // namespace plankit::ff
