#ifndef PLANKIT_TESTS_HELPERS_HPP
#define PLANKIT_TESTS_HELPERS_HPP

// include doctest.h before this header

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "plankit/runner.hpp"
#include "plankit/validate.hpp"

namespace testutil {

using namespace plankit;

inline std::string fixture(const std::string& rel) {
  return std::string(PLANKIT_FIXTURES_DIR) + "/" + rel;
}

inline LoadedProblem load_fixture(const std::string& dom, const std::string& prob) {
  return load_problem(fixture(dom), fixture(prob));
}

inline int prop_of(const GroundedProblem& p, const std::string& key) {
  int idx = p.symbols->prop_index(key);
  REQUIRE(idx >= 0);
  return idx;
}

inline int action_of(const GroundedProblem& p, const std::string& key) {
  int idx = p.symbols->action_index(key);
  REQUIRE(idx >= 0);
  return idx;
}

// ---- hand-built grounded problems (bypass the PDDL front end) -------------

struct ActionSpec {
  std::vector<int> pre, add, del;
};

inline GroundedProblem make_problem(int nprops, const std::vector<ActionSpec>& acts,
                                    const std::vector<int>& init,
                                    const std::vector<int>& goal) {
  auto table = std::make_shared<SymbolTable>();
  for (int i = 0; i < nprops; ++i) table->add_prop("p" + std::to_string(i), {});
  GroundedProblem gp;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    GroundAction ga;
    ga.pre = Bitset(nprops);
    ga.add = Bitset(nprops);
    ga.del = Bitset(nprops);
    for (int p : acts[i].pre) ga.pre.set(p);
    for (int p : acts[i].add) ga.add.set(p);
    for (int p : acts[i].del) ga.del.set(p);
    ga.del.subtract(ga.add);
    ga.id = table->add_action("a" + std::to_string(i), {});
    gp.actions.push_back(std::move(ga));
  }
  gp.init = Bitset(nprops);
  for (int p : init) gp.init.set(p);
  gp.goal = Bitset(nprops);
  for (int p : goal) gp.goal.set(p);
  gp.symbols = std::move(table);
  return gp;
}

// random STRIPS instance within the acceptance bounds
inline GroundedProblem random_problem(std::mt19937& rng) {
  std::uniform_int_distribution<int> nprops_d(4, 12), nacts_d(2, 8);
  int nprops = nprops_d(rng);
  int nacts = nacts_d(rng);
  auto subset = [&](int max_size) {
    std::vector<int> all(nprops);
    for (int i = 0; i < nprops; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    int size = std::uniform_int_distribution<int>(0, max_size)(rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
  };
  std::vector<ActionSpec> acts;
  for (int a = 0; a < nacts; ++a) {
    ActionSpec spec;
    spec.pre = subset(3);
    do {
      spec.add = subset(3);
    } while (spec.add.empty());
    spec.del = subset(2);
    acts.push_back(spec);
  }
  std::vector<int> init = subset(nprops / 2 + 1);
  std::vector<int> goal = subset(2);
  return make_problem(nprops, acts, init, goal);
}

// ---- independent oracles ---------------------------------------------------

inline bool statically_independent(const GroundAction& a, const GroundAction& b) {
  return !a.del.intersects(b.pre) && !a.del.intersects(b.add) &&
         !b.del.intersects(a.pre) && !b.del.intersects(a.add);
}

// all states reachable within k parallel steps, where one step applies any
// set of pairwise independent applicable actions (the empty set included)
inline std::vector<std::unordered_set<Bitset, BitsetHash>> parallel_reachable(
    const GroundedProblem& p, int max_steps) {
  std::vector<std::unordered_set<Bitset, BitsetHash>> reach(max_steps + 1);
  reach[0].insert(p.init);
  for (int k = 1; k <= max_steps; ++k) {
    reach[k] = reach[k - 1];
    for (const Bitset& s : reach[k - 1]) {
      std::vector<int> apps;
      for (int a = 0; a < p.action_count(); ++a)
        if (p.actions[a].pre.subset_of(s)) apps.push_back(a);
      // enumerate independent subsets by DFS
      std::vector<int> chosen;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == apps.size()) {
          if (chosen.empty()) return;
          Bitset next = s;
          Bitset dels(p.prop_count()), adds(p.prop_count());
          for (int a : chosen) {
            dels |= p.actions[a].del;
            adds |= p.actions[a].add;
          }
          next.subtract(dels);
          next |= adds;
          reach[k].insert(next);
          return;
        }
        rec(i + 1);  // skip apps[i]
        bool ok = true;
        for (int c : chosen)
          if (!statically_independent(p.actions[c], p.actions[apps[i]])) {
            ok = false;
            break;
          }
        if (ok) {
          chosen.push_back(apps[i]);
          rec(i + 1);
          chosen.pop_back();
        }
      };
      rec(0);
    }
  }
  return reach;
}

// minimal number of parallel steps to reach the goal; nullopt if the whole
// space is exhausted without it
inline std::optional<int> optimal_parallel_steps(const GroundedProblem& p,
                                                 int max_steps) {
  auto reach = parallel_reachable(p, max_steps);
  for (int k = 0; k <= max_steps; ++k)
    for (const Bitset& s : reach[k])
      if (p.goal.subset_of(s)) return k;
  return std::nullopt;
}

// straightforward re-simulation used to cross-check the validator
inline Verdict simulate_oracle(const GroundedProblem& p, const LayeredPlan& plan) {
  Bitset state = p.init;
  for (int k = 0; k < plan.step_count(); ++k) {
    std::vector<int> acts = plan.real_actions(k);
    for (int a : acts)
      if (!p.actions[a].pre.subset_of(state))
        return Verdict::fail(k, FailReason::PreconditionViolated);
    for (std::size_t i = 0; i < acts.size(); ++i)
      for (std::size_t j = i + 1; j < acts.size(); ++j)
        if (!statically_independent(p.actions[acts[i]], p.actions[acts[j]]))
          return Verdict::fail(k, FailReason::InterferenceInLayer);
    Bitset dels(p.prop_count()), adds(p.prop_count());
    for (int a : acts) {
      dels |= p.actions[a].del;
      adds |= p.actions[a].add;
    }
    state.subtract(dels);
    state |= adds;
  }
  if (!p.goal.subset_of(state))
    return Verdict::fail(plan.step_count(), FailReason::GoalNotReached);
  return Verdict::ok();
}

// delete-free forward closure from a state
inline Bitset relaxed_closure(const Bitset& state, const GroundedProblem& p) {
  Bitset members = state;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const GroundAction& a : p.actions) {
      if (!a.pre.subset_of(members)) continue;
      Bitset next = members;
      next |= a.add;
      if (next != members) {
        members = std::move(next);
        grew = true;
      }
    }
  }
  return members;
}

}  // namespace testutil

#endif
