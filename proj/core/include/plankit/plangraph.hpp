#ifndef PLANKIT_PLANGRAPH_HPP
#define PLANKIT_PLANGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "plankit/ground.hpp"
#include "plankit/plan.hpp"

namespace plankit {

// Why a pair of same-layer nodes is exclusive. Each recorded pair carries
// exactly one rule, so per-rule counts are well defined.
enum class MutexRule : std::uint8_t {
  InconsistentEffects = 1,  // one action's add clashes with the other's del
  Interference = 2,         // one action deletes a precondition of the other
  CompetingNeeds = 3,       // preconditions exclusive in the previous layer
  InconsistentSupport = 4,  // all producers pairwise exclusive (propositions)
};

// Unordered pairs over small non-negative ids, each tagged with its rule.
class MutexSet {
public:
  static std::uint64_t key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  void add(int a, int b, MutexRule rule) { pairs_.emplace(key(a, b), rule); }
  bool contains(int a, int b) const { return pairs_.count(key(a, b)) != 0; }
  const MutexRule* rule(int a, int b) const {
    auto it = pairs_.find(key(a, b));
    return it == pairs_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return pairs_.size(); }
  bool operator==(const MutexSet& o) const { return pairs_ == o.pairs_; }

  template <typename F>
  void for_each(F&& f) const {  // iteration order unspecified; callers sort
    for (const auto& [k, rule] : pairs_)
      f(static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffff), rule);
  }

private:
  std::unordered_map<std::uint64_t, MutexRule> pairs_;
};

// One node of an action layer: a ground action or the maintenance step of a
// proposition. Noops behave as pre = add = {prop}, del = {}.
struct LayerAction {
  bool noop = false;
  int index = -1;  // action index, or proposition index when noop

  bool operator==(const LayerAction&) const = default;
};

struct PropLayer {
  Bitset members;
  MutexSet mutex;  // pairs of proposition indices
};

struct ActionLayer {
  std::vector<LayerAction> records;  // real actions ascending, then noops
  MutexSet mutex;                    // pairs of record positions
};

// Layered planning graph. Proposition layers and action layers alternate
// (prop layer k feeds action layer k+1which feeds prop layer k+1). In the
// paper's global numbering prop layer k is layer 2k and action layer j is
// layer 2j-1. Relaxed graphs never carry mutexes.
class PlanGraph {
public:
  PlanGraph(const GroundedProblem& p, bool relaxed);
  // builds the graph from an arbitrary start state instead of p.init
  PlanGraph(const GroundedProblem& p, bool relaxed, const Bitset& state);

  void expand();

  bool has_goals() const;
  bool leveled_off() const;

  bool relaxed() const { return relaxed_; }
  const GroundedProblem& problem() const { return *problem_; }

  int prop_layer_count() const { return static_cast<int>(prop_layers_.size()); }
  int action_layer_count() const { return static_cast<int>(action_layers_.size()); }
  const PropLayer& prop_layer(int k) const { return prop_layers_[k]; }
  const ActionLayer& action_layer(int j) const { return action_layers_[j]; }  // 0-based

  const Bitset& pre_of(const LayerAction& r) const;
  const Bitset& add_of(const LayerAction& r) const;
  const Bitset& del_of(const LayerAction& r) const;

  // graph statistics in the counting convention of the reports:
  // nodes = propositions + action records over all layers,
  // edges = precondition + add + del edges,
  // mutexes = action-layer pairs + prop-layer pairs
  std::size_t node_count() const;
  std::size_t edge_count() const;
  std::size_t mutex_count() const;

  // cumulative wall-clock seconds spent inside mutex computation, so the
  // reports can split it out of the expansion phase
  double mutex_seconds() const { return mutex_seconds_; }

  void dump(std::ostream& os) const;

  // exclusivity between two records of action layer j, by record position
  bool actions_mutex(int j, int r1, int r2) const {
    return action_layers_[j].mutex.contains(r1, r2);
  }

private:
  void compute_action_mutexes(ActionLayer& layer, const PropLayer& prev);
  void compute_prop_mutexes(const ActionLayer& producers, PropLayer& layer);

  const GroundedProblem* problem_;
  bool relaxed_;
  std::vector<PropLayer> prop_layers_;
  std::vector<ActionLayer> action_layers_;
  std::vector<Bitset> singletons_;   // per-prop singleton sets for noops
  Bitset empty_set_;
  double mutex_seconds_ = 0;
};

// Static interference between two resolved action records: rule 1 or rule 2
// evaluated directly on pre/add/del. Shared by the graph, the direct Petri
// builder and the validator.
MutexRule static_clash(const Bitset& pre1, const Bitset& add1, const Bitset& del1,
                       const Bitset& pre2, const Bitset& add2, const Bitset& del2,
                       bool* found);

}  // namespace plankit

#endif
