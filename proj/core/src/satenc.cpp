#include "plankit/satenc.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace plankit::sat {

namespace {

std::vector<int> canon(std::vector<int> clause) {
  std::sort(clause.begin(), clause.end(),
            [](int a, int b) { return std::abs(a) != std::abs(b)
                                          ? std::abs(a) < std::abs(b)
                                          : a < b; });
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  return clause;
}

struct VarMapper {
  std::map<std::tuple<int, int, int>, int> ids;  // (kind, index, layer) -> id

  int intern(CnfFormula& f, VarKind kind, int index, int layer) {
    auto key = std::make_tuple(static_cast<int>(kind), index, layer);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    f.vars.push_back({kind, index, layer});
    int id = f.var_count();
    ids.emplace(key, id);
    return id;
  }
};

}  // namespace

int CnfFormula::var_id(VarKind kind, int index, int layer) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].kind == kind && vars[i].index == index && vars[i].layer == layer)
      return static_cast<int>(i) + 1;
  return -1;
}

CnfFormula encode(const PlanGraph& g) {
  if (g.relaxed())
    throw Error(ErrKind::RelaxedGraphRejected, "SAT encoding needs the full graph");
  if (!g.has_goals())
    throw Error(ErrKind::GoalAbsent,
                "goals not present conflict-free in the last layer");

  CnfFormula f;
  VarMapper vm;
  const int L = g.action_layer_count();

  auto prop_var = [&](int p, int k) { return vm.intern(f, VarKind::Prop, p, k); };
  auto record_var = [&](const LayerAction& r, int j) {
    return vm.intern(f, r.noop ? VarKind::Noop : VarKind::Action, r.index, j);
  };

  // layer-major variable creation fixes branching order
  g.prop_layer(0).members.for_each(
      [&](std::size_t p) { prop_var(static_cast<int>(p), 0); });
  for (int j = 1; j <= L; ++j) {
    for (const LayerAction& r : g.action_layer(j - 1).records) record_var(r, j);
    g.prop_layer(j).members.for_each(
        [&](std::size_t p) { prop_var(static_cast<int>(p), j); });
  }

  // initial state: layer-0 propositions are exactly the initial state
  g.prop_layer(0).members.for_each([&](std::size_t p) {
    f.clauses.push_back({prop_var(static_cast<int>(p), 0)});
  });

  for (int j = 1; j <= L; ++j) {
    const ActionLayer& layer = g.action_layer(j - 1);

    // rule 2: a proposition implies the disjunction of its producers
    std::vector<std::vector<int>> producers(g.problem().prop_count());
    for (const LayerAction& r : layer.records) {
      int av = record_var(r, j);
      g.add_of(r).for_each([&](std::size_t p) { producers[p].push_back(av); });
    }
    g.prop_layer(j).members.for_each([&](std::size_t p) {
      std::vector<int> clause{-prop_var(static_cast<int>(p), j)};
      for (int av : producers[p]) clause.push_back(av);
      f.clauses.push_back(canon(std::move(clause)));
    });

    // rule 3: actions imply their preconditions
    for (const LayerAction& r : layer.records) {
      int av = record_var(r, j);
      g.pre_of(r).for_each([&](std::size_t q) {
        f.clauses.push_back(canon({-av, prop_var(static_cast<int>(q), j - 1)}));
      });
    }

    // rule 4: exclusive records cannot fire together
    std::vector<std::pair<int, int>> pairs;
    layer.mutex.for_each([&](int a, int b, MutexRule) { pairs.emplace_back(a, b); });
    std::sort(pairs.begin(), pairs.end());
    for (auto [a, b] : pairs)
      f.clauses.push_back(
          canon({-record_var(layer.records[a], j), -record_var(layer.records[b], j)}));
  }

  // goals hold at the last layer
  g.problem().goal.for_each(
      [&](std::size_t p) { f.clauses.push_back({prop_var(static_cast<int>(p), L)}); });

  return f;
}

std::optional<std::vector<int>> resolve_on(int var, const std::vector<int>& c1,
                                           const std::vector<int>& c2) {
  std::vector<int> out;
  for (int lit : c1)
    if (lit != var) out.push_back(lit);
  for (int lit : c2)
    if (lit != -var) out.push_back(lit);
  out = canon(std::move(out));
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] == -out[i + 1]) return std::nullopt;  // tautology
  return out;
}

CnfFormula simplify(const CnfFormula& f) {
  CnfFormula out;
  out.vars = f.vars;

  std::set<std::vector<int>> clauses(f.clauses.begin(), f.clauses.end());
  for (int id = 1; id <= f.var_count(); ++id) {
    if (f.vars[id - 1].kind != VarKind::Prop) continue;
    std::vector<std::vector<int>> pos, neg, rest;
    for (const auto& c : clauses) {
      if (std::find(c.begin(), c.end(), id) != c.end())
        pos.push_back(c);
      else if (std::find(c.begin(), c.end(), -id) != c.end())
        neg.push_back(c);
      else
        rest.push_back(c);
    }
    std::set<std::vector<int>> next(rest.begin(), rest.end());
    for (const auto& cp : pos) {
      for (const auto& cn : neg) {
        auto resolvent = resolve_on(id, cp, cn);
        if (!resolvent) continue;
        if (resolvent->empty()) {
          out.contradiction = true;
          out.clauses.assign(next.begin(), next.end());
          return out;
        }
        next.insert(*resolvent);
      }
    }
    clauses = std::move(next);
  }

  // subsumption: drop any clause that contains another one
  std::vector<std::vector<int>> list(clauses.begin(), clauses.end());
  std::vector<bool> dead(list.size(), false);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (i == j || dead[j] || dead[i]) continue;
      if (list[j].size() <= list[i].size() &&
          std::includes(list[i].begin(), list[i].end(), list[j].begin(),
                        list[j].end(), [](int a, int b) {
                          return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b)
                                                            : a < b;
                        })) {
        if (list[i] != list[j]) dead[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i)
    if (!dead[i]) out.clauses.push_back(list[i]);
  return out;
}

std::optional<std::vector<bool>> solve_sat(const CnfFormula& f,
                                           const std::function<bool()>& interrupt) {
  if (f.contradiction) return std::nullopt;
  return dpll(f.var_count(), f.clauses, interrupt);
}

LayeredPlan decode_model(const CnfFormula& f, const std::vector<bool>& model) {
  int depth = 0;
  for (const VarInfo& v : f.vars)
    if (v.kind != VarKind::Prop) depth = std::max(depth, v.layer);
  LayeredPlan plan;
  plan.layers.resize(depth);
  for (int id = 1; id <= f.var_count(); ++id) {
    const VarInfo& v = f.vars[id - 1];
    if (v.kind == VarKind::Action && model[id - 1])
      plan.layers[v.layer - 1].push_back({false, v.index});
  }
  for (auto& layer : plan.layers)
    std::sort(layer.begin(), layer.end(),
              [](const PlanStep& a, const PlanStep& b) { return a.index < b.index; });
  return plan;
}

void to_dimacs(const CnfFormula& f, const SymbolTable& symbols, std::ostream& os) {
  os << "c time-indexed planning encoding\n";
  os << "c layers are numbered globally: propositions at even layers 0,2,...,"
     << " actions at odd layers 1,3,...\n";
  for (int id = 1; id <= f.var_count(); ++id) {
    const VarInfo& v = f.vars[id - 1];
    const char* kind = v.kind == VarKind::Prop    ? "prop"
                       : v.kind == VarKind::Action ? "action"
                                                   : "noop";
    std::string name = v.kind == VarKind::Action ? symbols.action_text(v.index)
                                                 : symbols.prop_text(v.index);
    int global_layer = v.kind == VarKind::Prop ? 2 * v.layer : 2 * v.layer - 1;
    os << "c var " << id << " = " << kind << " " << name << " @layer "
       << global_layer << "\n";
  }
  os << "p cnf " << f.var_count() << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int lit : c) os << lit << ' ';
    os << "0\n";
  }
}

std::vector<bool> parse_model(const CnfFormula& f, std::istream& is) {
  std::vector<bool> model(f.var_count(), false);
  std::string tok;
  while (is >> tok) {
    if (tok == "c" || tok == "s" || tok == "v" || tok == "SAT" || tok == "SATISFIABLE")
      continue;
    try {
      long lit = std::stol(tok);
      if (lit == 0) continue;
      long var = std::labs(lit);
      if (var <= f.var_count()) model[var - 1] = lit > 0;
    } catch (const std::exception&) {
      // non-numeric token, e.g. solver banner; skip
    }
  }
  return model;
}

namespace {

void fill_graph_sizes(SolveResult& res, const PlanGraph& g) {
  res.sizes.has_graph = true;
  res.sizes.nodes = g.node_count();
  res.sizes.edges = g.edge_count();
  res.sizes.mutexes = g.mutex_count();
}

}  // namespace

SolveResult solve(const GroundedProblem& p, const SolveLimits& limits,
                  bool simplify_formula, PhaseTimes* times) {
  PlanGraph g(p, /*relaxed=*/false);
  auto expand_once = [&] {
    Stopwatch clock;
    double mutex_before = g.mutex_seconds();
    g.expand();
    if (times) {
      double total = clock.seconds();
      double mutex_delta = g.mutex_seconds() - mutex_before;
      times->mutex += mutex_delta;
      times->expand += total - mutex_delta;
      times->per_expansion.push_back(total - mutex_delta);
    }
  };

  SolveResult res;
  while (!g.has_goals()) {
    if (g.leveled_off()) {
      res.outcome = Outcome::Unsolvable;
      res.note = "criterion=leveled-off";
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (g.action_layer_count() >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (limits.expired()) {
      res.outcome = Outcome::Timeout;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    expand_once();
  }

  while (true) {
    Stopwatch enc_clock;
    CnfFormula f = encode(g);
    if (simplify_formula) f = simplify(f);
    if (times) times->translate += enc_clock.seconds();

    Stopwatch clock;
    auto model = solve_sat(f, [&] { return limits.expired(); });
    if (times) times->search += clock.seconds();
    if (limits.expired() && !model) {
      res.outcome = Outcome::Timeout;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    if (model) {
      res.outcome = Outcome::Plan;
      res.plan = decode_model(f, *model);
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    // further layers extend the horizon even after leveling off
    if (g.action_layer_count() >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = g.action_layer_count();
      fill_graph_sizes(res, g);
      return res;
    }
    expand_once();
  }
}

}  // namespace plankit::sat
