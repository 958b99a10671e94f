#ifndef PLANKIT_PETRI_HPP
#define PLANKIT_PETRI_HPP

#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "plankit/plangraph.hpp"
#include "plankit/solve.hpp"

namespace plankit::petri {

enum class PlaceRole { Prop, Precond, Mutex };
enum class TransRole { Action, Prop };

struct Place {
  PlaceRole role;
  int layer;            // prop layer for Prop, action layer for Precond/Mutex
  int prop = -1;        // Prop/Precond: the proposition
  LayerAction a{}, b{}; // Precond: a = consuming record; Mutex: the pair
};

struct Transition {
  TransRole role;
  int layer;            // action layer j (1-based) or prop layer k
  LayerAction record{}; // Action role
  int prop = -1;        // Prop role
};

// Acyclic layered net. Arcs all have weight 1; the incidence is kept sparse
// as per-transition place lists.
struct PetriNet {
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<std::vector<int>> in_arcs;   // transition -> places consumed
  std::vector<std::vector<int>> out_arcs;  // transition -> places produced
  std::vector<int> initial_marking;
  std::vector<int> goal_places;  // final-layer Prop places actually present
  int goal_total = 0;            // goal propositions the net was built for
  int depth = 0;                 // action layers represented

  struct Stats {
    std::size_t rows;       // |places|
    std::size_t columns;    // |transitions|
    std::size_t nonzeros;   // arc count
    std::size_t conflicts;  // |Mutex places|
  };
  Stats stats() const;

  std::size_t arc_count() const;
  void to_text(const SymbolTable& symbols, std::ostream& os) const;
};

// Graph-to-net translation: one transition per action node, a place plus a
// transition per proposition node, one place with two arcs per
// precondition edge, one marked place with two outgoing arcs per action
// exclusion pair. Proposition exclusions produce no structure.
PetriNet translate(const PlanGraph& g);

struct FiringSet {
  std::vector<int> fired;  // transition indices in a layer-topological order

  int real_action_count(const PetriNet& net) const;
};

// Single-transition firing semantics; throws NotEnabled when some input
// place holds no token.
std::vector<int> fire(const PetriNet& net, const std::vector<int>& marking, int t);

// Pure replay of a firing set in its stored order; false when some firing
// was not enabled or the goal places end up unmarked.
bool replay(const PetriNet& net, const FiringSet& f);

// 0/1 sub-marking reachability: finds a firing vector whose layer-ordered
// replay is enabled throughout and marks every goal place, minimizing the
// number of fired real-action transitions (depth-first branch and bound,
// bound = best found so far).
std::optional<FiringSet> solve_submarking(const PetriNet& net,
                                          const SolveLimits* limits = nullptr);

LayeredPlan decode_plan(const PetriNet& net, const FiringSet& f);

// Builds the net directly from the grounded problem, one layer per
// expand(), mirroring the graph construction but with conflicts limited to
// static interference plus one-step competing needs (no recursively
// propagated proposition exclusions). Once the layer contents stagnate,
// expansion duplicates the previous layer's rows and columns instead of
// recomputing them.
class DirectBuilder {
public:
  explicit DirectBuilder(const GroundedProblem& p);

  void expand();
  bool has_goals() const;
  bool leveled_off() const { return stagnant_; }
  int depth() const { return net_.depth; }
  int stagnant_copies() const { return stagnant_copies_; }
  double mutex_seconds() const { return mutex_seconds_; }
  const PetriNet& net() const { return net_; }
  const GroundedProblem& problem() const { return *problem_; }

private:
  struct Layer {
    Bitset props;                      // prop layer members
    std::vector<LayerAction> records;  // producing action layer (empty at 0)
    MutexSet mutex;                    // pairs of record positions
  };

  void append_layer_structure(const Layer& prev, Layer& next);
  void rebuild_lookups();
  void index_producers(const Layer& prev);
  bool one_step_inconsistent(int p, int q, const Layer& prev) const;
  bool one_step_competing(const Bitset& pre1, const Bitset& pre2,
                          const Layer& prev) const;
  const Bitset& r_pre(const LayerAction& r) const;
  const Bitset& r_add(const LayerAction& r) const;
  const Bitset& r_del(const LayerAction& r) const;

  const GroundedProblem* problem_;
  PetriNet net_;
  std::vector<Layer> layers_;
  std::vector<Bitset> singletons_;
  Bitset empty_set_;
  std::unordered_map<int, int> prop_place_last_, prop_trans_last_;
  std::vector<std::vector<int>> producers_by_prop_;  // previous layer only
  mutable std::unordered_map<std::uint64_t, bool> one_step_memo_;
  bool stagnant_ = false;
  int stagnant_copies_ = 0;
  double mutex_seconds_ = 0;
};

SolveResult solve_petriplan1(const GroundedProblem& p, const SolveLimits& limits,
                             PhaseTimes* times = nullptr);
SolveResult solve_petriplan2(const GroundedProblem& p, const SolveLimits& limits,
                             PhaseTimes* times = nullptr);

}  // namespace plankit::petri

#endif
