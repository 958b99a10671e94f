#ifndef PLANKIT_VALIDATE_HPP
#define PLANKIT_VALIDATE_HPP

#include <optional>
#include <string>

#include "plankit/plan.hpp"

namespace plankit {

enum class FailReason { PreconditionViolated, InterferenceInLayer, GoalNotReached };

const char* fail_reason_name(FailReason r);

struct Verdict {
  struct Failure {
    int layer;
    FailReason reason;
  };
  bool valid = true;
  std::optional<Failure> failure;

  static Verdict ok() { return {}; }
  static Verdict fail(int layer, FailReason reason) {
    return {false, Failure{layer, reason}};
  }
};

// Simulates the plan layer by layer: every action's preconditions must hold
// in the current state, no action in a layer may delete a layer-mate's
// precondition or add, then all deletes are applied followed by all adds.
// The final state must contain every goal.
Verdict validate(const GroundedProblem& p, const LayeredPlan& plan);

std::string verdict_text(const Verdict& v);

}  // namespace plankit

#endif
