#ifndef PLANKIT_GROUND_HPP
#define PLANKIT_GROUND_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "plankit/bitset.hpp"
#include "plankit/error.hpp"
#include "plankit/pddl.hpp"

namespace plankit {

// Dense, bidirectional index <-> name maps for ground propositions and
// ground actions. Entries keep the predicate/schema name and argument
// objects so both "name(a,b)" and "(name a b)" renderings are cheap.
class SymbolTable {
public:
  struct Entry {
    std::string name;
    std::vector<std::string> args;
  };

  int add_prop(const std::string& name, const std::vector<std::string>& args);
  int add_action(const std::string& name, const std::vector<std::string>& args);

  int prop_index(const std::string& text) const;    // -1 when absent
  int action_index(const std::string& text) const;  // -1 when absent

  int prop_count() const { return static_cast<int>(props_.size()); }
  int action_count() const { return static_cast<int>(actions_.size()); }

  const Entry& prop(int i) const { return props_[i]; }
  const Entry& action(int i) const { return actions_[i]; }

  std::string prop_text(int i) const { return text(props_[i]); }
  std::string action_text(int i) const { return text(actions_[i]); }
  // s-expression rendering used by plan files: (name a b)
  std::string action_sexpr(int i) const;

  static std::string text(const Entry& e);
  static std::string key(const std::string& name, const std::vector<std::string>& args);

private:
  std::vector<Entry> props_, actions_;
  std::unordered_map<std::string, int> prop_by_key_, action_by_key_;
};

struct GroundAction {
  int id = -1;
  Bitset pre, add, del;  // del is normalized so that add and del never overlap
};

struct GroundedProblem {
  std::vector<GroundAction> actions;
  Bitset init, goal;
  std::shared_ptr<const SymbolTable> symbols;

  int prop_count() const { return symbols->prop_count(); }
  int action_count() const { return static_cast<int>(actions.size()); }
};

// Instantiates every action schema over all type-compatible object tuples
// and assigns dense indices to every type-consistent ground atom.
GroundedProblem ground(const pddl::DomainAst& domain, const pddl::ProblemAst& problem);

// Same problem with every delete list emptied; shares the symbol table.
GroundedProblem relax(const GroundedProblem& p);

// (state \ del) u add; throws PreconditionUnsatisfied when pre is not met.
Bitset apply(const Bitset& state, const GroundAction& a, const SymbolTable& symbols);

void dump_ground(const GroundedProblem& p, std::ostream& os);

}  // namespace plankit

#endif
