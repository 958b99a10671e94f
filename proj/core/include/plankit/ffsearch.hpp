#ifndef PLANKIT_FFSEARCH_HPP
#define PLANKIT_FFSEARCH_HPP

#include <climits>
#include <optional>
#include <vector>

#include "plankit/ground.hpp"
#include "plankit/plan.hpp"
#include "plankit/solve.hpp"

namespace plankit::ff {

inline constexpr int kUnreachable = INT_MAX;

// Relaxed plan extracted backward from the delete-free graph of a state:
// each subgoal is scheduled at the layer where it first appears and covered
// by the producer with the fewest preconditions (ties by ascending index).
struct RelaxedPlan {
  bool reachable = false;
  std::vector<std::vector<int>> layers;  // real actions per layer, 1..m
  Bitset first_layer_goals;              // subgoals scheduled at layer 1
  std::vector<int> first_layer_schedule; // layer-1 actions in extraction order
  int layer_count = 0;                   // m, the goal's relaxed level

  int action_total() const {
    int n = 0;
    for (const auto& l : layers) n += static_cast<int>(l.size());
    return n;
  }
};

RelaxedPlan relaxed_plan(const Bitset& state, const GroundedProblem& p);

// Sum of per-layer action counts; kUnreachable when the relaxed fixpoint
// misses the goal; 0 exactly when the goal already holds.
int h_ff(const Bitset& state, const GroundedProblem& p);

// Applicable actions adding at least one first-layer subgoal, the ones the
// relaxed plan itself scheduled first (in extraction order), then the rest
// in ascending index.
std::vector<int> helpful_actions(const Bitset& state, const GroundedProblem& p);
std::vector<int> helpful_actions(const Bitset& state, const GroundedProblem& p,
                                 const RelaxedPlan& rp);

// True when some action of the relaxed plan deletes a top-level goal in its
// unrelaxed form.
bool goal_deletion_prune(const RelaxedPlan& rp, const GroundedProblem& p);

struct Options {
  bool use_helpful = true;  // successor filter inside hill climbing
  bool use_pruning = true;  // goal-deletion pruning inside hill climbing
};

enum class ClimbStatus { Plan, Failed, Timeout };

struct ClimbResult {
  ClimbStatus status = ClimbStatus::Failed;
  std::vector<int> actions;  // sequential
};

// Enforced hill climbing: breadth-first lookahead over helpful successors
// for any strictly better heuristic value; fails when the lookahead
// exhausts without improvement.
ClimbResult enforced_hill_climb(const GroundedProblem& p, const Options& opts,
                                const SolveLimits& limits);

// Complete greedy best-first fallback over all applicable successors.
struct BestFirstResult {
  Outcome outcome = Outcome::Unsolvable;
  std::vector<int> actions;
};
BestFirstResult best_first(const GroundedProblem& p, const SolveLimits& limits);

// Hill climbing first, best-first from scratch when it fails.
SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  const Options& opts = {}, PhaseTimes* times = nullptr);

}  // namespace plankit::ff

#endif
