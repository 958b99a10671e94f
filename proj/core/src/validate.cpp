#include "plankit/validate.hpp"

namespace plankit {

const char* fail_reason_name(FailReason r) {
  switch (r) {
    case FailReason::PreconditionViolated: return "PreconditionViolated";
    case FailReason::InterferenceInLayer: return "InterferenceInLayer";
    case FailReason::GoalNotReached: return "GoalNotReached";
  }
  return "?";
}

Verdict validate(const GroundedProblem& p, const LayeredPlan& plan) {
  Bitset state = p.init;
  const int nprops = p.prop_count();
  for (int k = 0; k < plan.step_count(); ++k) {
    std::vector<const GroundAction*> acts;
    for (const PlanStep& s : plan.layers[k])
      if (!s.noop) acts.push_back(&p.actions[s.index]);

    for (const GroundAction* a : acts)
      if (!a->pre.subset_of(state))
        return Verdict::fail(k, FailReason::PreconditionViolated);

    for (std::size_t i = 0; i < acts.size(); ++i) {
      for (std::size_t j = i + 1; j < acts.size(); ++j) {
        const GroundAction& a = *acts[i];
        const GroundAction& b = *acts[j];
        if (a.del.intersects(b.pre) || a.del.intersects(b.add) ||
            b.del.intersects(a.pre) || b.del.intersects(a.add))
          return Verdict::fail(k, FailReason::InterferenceInLayer);
      }
    }

    Bitset dels(nprops), adds(nprops);
    for (const GroundAction* a : acts) {
      dels |= a->del;
      adds |= a->add;
    }
    state.subtract(dels);
    state |= adds;
  }
  if (!p.goal.subset_of(state))
    return Verdict::fail(plan.step_count(), FailReason::GoalNotReached);
  return Verdict::ok();
}

std::string verdict_text(const Verdict& v) {
  if (v.valid) return "valid";
  return std::string("invalid: ") + fail_reason_name(v.failure->reason) +
         " at layer " + std::to_string(v.failure->layer);
}

}  // namespace plankit
