#include "plankit/ground.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <unordered_set>

namespace plankit {

std::string SymbolTable::key(const std::string& name,
                             const std::vector<std::string>& args) {
  std::string k = name;
  for (const std::string& a : args) {
    k += '|';
    k += a;
  }
  return k;
}

std::string SymbolTable::text(const Entry& e) {
  if (e.args.empty()) return e.name;
  std::string s = e.name + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) s += ',';
    s += e.args[i];
  }
  s += ')';
  return s;
}

std::string SymbolTable::action_sexpr(int i) const {
  const Entry& e = actions_[i];
  std::string s = "(" + e.name;
  for (const std::string& a : e.args) s += " " + a;
  s += ')';
  return s;
}

int SymbolTable::add_prop(const std::string& name,
                          const std::vector<std::string>& args) {
  int idx = static_cast<int>(props_.size());
  props_.push_back({name, args});
  prop_by_key_[key(name, args)] = idx;
  return idx;
}

int SymbolTable::add_action(const std::string& name,
                            const std::vector<std::string>& args) {
  int idx = static_cast<int>(actions_.size());
  actions_.push_back({name, args});
  action_by_key_[key(name, args)] = idx;
  return idx;
}

int SymbolTable::prop_index(const std::string& text) const {
  auto it = prop_by_key_.find(text);
  return it == prop_by_key_.end() ? -1 : it->second;
}

int SymbolTable::action_index(const std::string& text) const {
  auto it = action_by_key_.find(text);
  return it == action_by_key_.end() ? -1 : it->second;
}

namespace {

class TypeTable {
public:
  explicit TypeTable(const pddl::DomainAst& d) {
    parent_["object"] = "";
    for (const pddl::TypedName& t : d.types) parent_[t.name] = t.type;
    // parents that were never declared themselves root at object
    for (const pddl::TypedName& t : d.types)
      if (!parent_.count(t.type)) parent_[t.type] = "object";
  }

  bool known(const std::string& t) const { return parent_.count(t) != 0; }

  bool is_subtype(const std::string& t, const std::string& of) const {
    std::string cur = t;
    while (!cur.empty()) {
      if (cur == of) return true;
      auto it = parent_.find(cur);
      if (it == parent_.end()) return of == "object";
      cur = it->second;
    }
    return false;
  }

private:
  std::unordered_map<std::string, std::string> parent_;
};

// every assignment of candidate objects to positions, lexicographic in
// the per-position candidate order
void enumerate(const std::vector<std::vector<std::string>>& candidates,
               const std::function<void(const std::vector<std::string>&)>& f) {
  std::vector<std::string> tuple(candidates.size());
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == candidates.size()) {
      f(tuple);
      return;
    }
    for (const std::string& obj : candidates[pos]) {
      tuple[pos] = obj;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

GroundedProblem ground(const pddl::DomainAst& domain,
                       const pddl::ProblemAst& problem) {
  if (!problem.domain_name.empty() && problem.domain_name != domain.name)
    throw Error(ErrKind::TypeMismatch,
                "problem '" + problem.name + "' belongs to domain '" +
                    problem.domain_name + "', not '" + domain.name + "'");

  TypeTable types(domain);
  std::unordered_map<std::string, std::string> obj_type;
  std::vector<std::string> obj_order;
  for (const pddl::TypedName& o : problem.objects) {
    if (!types.known(o.type) && o.type != "object")
      throw Error(ErrKind::TypeMismatch,
                  "object '" + o.name + "' has undeclared type '" + o.type + "'");
    obj_type[o.name] = o.type;
    obj_order.push_back(o.name);
  }

  auto objects_of = [&](const std::string& type) {
    std::vector<std::string> out;
    for (const std::string& o : obj_order)
      if (types.is_subtype(obj_type[o], type)) out.push_back(o);
    return out;
  };

  auto table = std::make_shared<SymbolTable>();

  // one proposition per type-consistent ground atom, in predicate
  // declaration order
  for (const pddl::PredicateDecl& pd : domain.predicates) {
    std::vector<std::vector<std::string>> cands;
    for (const pddl::TypedName& p : pd.params) cands.push_back(objects_of(p.type));
    enumerate(cands, [&](const std::vector<std::string>& tuple) {
      table->add_prop(pd.name, tuple);
    });
  }

  GroundedProblem gp;
  const int nprops = table->prop_count();

  auto atom_index = [&](const pddl::Atom& atom,
                        const std::unordered_map<std::string, std::string>& binding)
      -> int {
    std::vector<std::string> args;
    args.reserve(atom.args.size());
    for (const std::string& a : atom.args) {
      if (!a.empty() && a[0] == '?') {
        args.push_back(binding.at(a.substr(1)));
      } else {
        args.push_back(a);
      }
    }
    return table->prop_index(SymbolTable::key(atom.pred, args));
  };

  // actions: every type-compatible assignment, schema declaration order
  for (const pddl::ActionSchema& schema : domain.actions) {
    std::vector<std::vector<std::string>> cands;
    for (const pddl::TypedName& p : schema.params) {
      if (!types.known(p.type) && p.type != "object")
        throw Error(ErrKind::TypeMismatch, "parameter '?" + p.name +
                                               "' of action '" + schema.name +
                                               "' has undeclared type '" + p.type +
                                               "'");
      cands.push_back(objects_of(p.type));
    }
    enumerate(cands, [&](const std::vector<std::string>& tuple) {
      std::unordered_map<std::string, std::string> binding;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        binding[schema.params[i].name] = tuple[i];

      GroundAction ga;
      ga.pre = Bitset(nprops);
      ga.add = Bitset(nprops);
      ga.del = Bitset(nprops);
      for (const pddl::Atom& a : schema.precond) {
        if (a.negated)
          throw Error(ErrKind::UnsupportedFeature,
                      "negative precondition in '" + schema.name + "'");
        int idx = atom_index(a, binding);
        if (idx < 0) return;  // type-inconsistent instance, skip
        ga.pre.set(idx);
      }
      for (const pddl::Atom& a : schema.effects) {
        int idx = atom_index(a, binding);
        if (idx < 0) return;
        if (a.negated)
          ga.del.set(idx);
        else
          ga.add.set(idx);
      }
      // delete-then-add semantics: a proposition both deleted and added
      // survives, so the instance normalizes to del \ add
      ga.del.subtract(ga.add);
      ga.id = table->add_action(schema.name, tuple);
      gp.actions.push_back(std::move(ga));
    });
  }

  gp.init = Bitset(nprops);
  for (const pddl::Atom& a : problem.init) {
    int idx = table->prop_index(SymbolTable::key(a.pred, a.args));
    if (idx < 0)
      throw Error(ErrKind::TypeMismatch,
                  "init atom (" + a.pred + " ...) is not type-consistent");
    gp.init.set(idx);
  }
  gp.goal = Bitset(nprops);
  for (const pddl::Atom& a : problem.goal) {
    int idx = table->prop_index(SymbolTable::key(a.pred, a.args));
    if (idx < 0)
      throw Error(ErrKind::GoalAtomUngroundable,
                  "goal atom (" + a.pred + " ...) has no ground proposition");
    gp.goal.set(idx);
  }

  gp.symbols = std::move(table);
  return gp;
}

GroundedProblem relax(const GroundedProblem& p) {
  GroundedProblem r;
  r.init = p.init;
  r.goal = p.goal;
  r.symbols = p.symbols;  // shared
  r.actions = p.actions;
  for (GroundAction& a : r.actions) a.del = Bitset(p.prop_count());
  return r;
}

Bitset apply(const Bitset& state, const GroundAction& a, const SymbolTable& symbols) {
  if (!a.pre.subset_of(state)) {
    Bitset missing = a.pre;
    missing.subtract(state);
    std::string names;
    missing.for_each([&](std::size_t i) {
      if (!names.empty()) names += ", ";
      names += symbols.prop_text(static_cast<int>(i));
    });
    throw Error(ErrKind::PreconditionUnsatisfied,
                "action " + symbols.action_text(a.id) + " is missing {" + names + "}");
  }
  Bitset next = state;
  next.subtract(a.del);
  next |= a.add;
  return next;
}

void dump_ground(const GroundedProblem& p, std::ostream& os) {
  const SymbolTable& sym = *p.symbols;
  for (int i = 0; i < sym.prop_count(); ++i)
    os << i << ": " << sym.prop_text(i) << "\n";
  auto list = [&](const Bitset& b) {
    std::string s = "[";
    bool first = true;
    b.for_each([&](std::size_t i) {
      if (!first) s += ' ';
      first = false;
      s += sym.prop_text(static_cast<int>(i));
    });
    return s + "]";
  };
  for (const GroundAction& a : p.actions)
    os << a.id << ": " << sym.action_text(a.id) << "(pre=" << list(a.pre)
       << " add=" << list(a.add) << " del=" << list(a.del) << ")\n";
}

}  // namespace plankit
