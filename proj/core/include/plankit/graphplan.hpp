#ifndef PLANKIT_GRAPHPLAN_HPP
#define PLANKIT_GRAPHPLAN_HPP

#include <optional>

#include "plankit/plangraph.hpp"
#include "plankit/solve.hpp"

namespace plankit::graphplan {

// Regressive extraction over a goal-containing graph. At each action layer,
// from the last down to the first, searches for a pairwise-non-exclusive
// producer set covering the pending subgoals; the chosen preconditions
// become the subgoals one layer down. Deterministic: subgoals are processed
// in descending proposition index, producers tried maintenance-first, then
// real actions in ascending index.
// Returns nullopt when every producer combination is exhausted at some
// layer (the caller expands the graph and retries).
std::optional<LayeredPlan> extract(const PlanGraph& g);

// Expand until the goals appear conflict-free, then alternate extraction
// and expansion. Unsolvable is decided by the leveled-off criterion.
SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  PhaseTimes* times = nullptr);

}  // namespace plankit::graphplan

#endif
