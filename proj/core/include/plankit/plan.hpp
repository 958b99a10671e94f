#ifndef PLANKIT_PLAN_HPP
#define PLANKIT_PLAN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "plankit/ground.hpp"

namespace plankit {

// Either a real ground action (index into the problem's action list) or a
// maintenance step for one proposition.
struct PlanStep {
  bool noop = false;
  int index = -1;  // action index, or proposition index when noop

  bool operator==(const PlanStep&) const = default;
};

struct LayeredPlan {
  std::vector<std::vector<PlanStep>> layers;

  int step_count() const { return static_cast<int>(layers.size()); }
  int action_count() const {
    int n = 0;
    for (const auto& layer : layers)
      for (const PlanStep& s : layer)
        if (!s.noop) ++n;
    return n;
  }
  // real action indices of one layer, ascending
  std::vector<int> real_actions(int layer) const;

  bool operator==(const LayeredPlan&) const = default;
};

// One line per step: `k: (name obj ...) (name obj ...)`, 0-based k, noops
// omitted, then a trailing `actions=N steps=M` summary.
std::string plan_to_text(const LayeredPlan& plan, const SymbolTable& symbols);

LayeredPlan plan_from_text(std::string_view text, const SymbolTable& symbols);

}  // namespace plankit

#endif
