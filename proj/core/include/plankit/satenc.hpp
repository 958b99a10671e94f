#ifndef PLANKIT_SATENC_HPP
#define PLANKIT_SATENC_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "plankit/plangraph.hpp"
#include "plankit/solve.hpp"

namespace plankit::sat {

enum class VarKind { Prop, Action, Noop };

struct VarInfo {
  VarKind kind;
  int index;  // proposition index, or ground-action index for Action
  int layer;  // prop layer k, or action layer j (1-based)
};

// Time-indexed CNF over the graph's nodes. Variable ids are 1-based and
// literals are signed ids, DIMACS style. Ids are assigned layer-major
// (prop layer 0, action layer 1, prop layer 1, ...), which also fixes the
// solver's branching order.
struct CnfFormula {
  std::vector<VarInfo> vars;              // vars[i] describes id i+1
  std::vector<std::vector<int>> clauses;  // each sorted, no duplicates
  bool contradiction = false;             // empty clause derived

  int var_count() const { return static_cast<int>(vars.size()); }
  int var_id(VarKind kind, int index, int layer) const;  // -1 when absent
};

// Conversion rules: unit clauses for the initial and final layers, every
// proposition implies the disjunction of its producers one layer down,
// actions imply their preconditions, and exclusive actions (noops
// included) yield binary mutual-exclusion clauses.
CnfFormula encode(const PlanGraph& g);

// Eliminates every proposition variable by resolution (persistence-axiom
// folding over noop chains is the special case that shows up first),
// then drops tautologies and subsumed clauses. Action/noop variables stay.
CnfFormula simplify(const CnfFormula& f);

// Resolvent of c1 and c2 on `var` (c1 holds +var, c2 holds -var);
// nullopt when the resolvent is a tautology.
std::optional<std::vector<int>> resolve_on(int var, const std::vector<int>& c1,
                                           const std::vector<int>& c2);

// Bundled DPLL with two-watched-literal unit propagation. Branches on the
// first unassigned variable by id, trying false first (plans stay lean:
// action variables only turn on when support forces them).
std::optional<std::vector<bool>> dpll(int nvars,
                                      const std::vector<std::vector<int>>& clauses,
                                      const std::function<bool()>& interrupt = {});

std::optional<std::vector<bool>> solve_sat(const CnfFormula& f,
                                           const std::function<bool()>& interrupt = {});

// True real-action variables grouped by layer; noops dropped.
LayeredPlan decode_model(const CnfFormula& f, const std::vector<bool>& model);

void to_dimacs(const CnfFormula& f, const SymbolTable& symbols, std::ostream& os);

// Reads an external solver's model: signed ints, 0 terminators and
// c/s/v prefixes tolerated. Unlisted variables default to false.
std::vector<bool> parse_model(const CnfFormula& f, std::istream& is);

SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  bool simplify_formula, PhaseTimes* times = nullptr);

}  // namespace plankit::sat

#endif
