#include "plankit/petri.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace plankit::petri {

std::size_t PetriNet::arc_count() const {
  std::size_t n = 0;
  for (const auto& v : in_arcs) n += v.size();
  for (const auto& v : out_arcs) n += v.size();
  return n;
}

PetriNet::Stats PetriNet::stats() const {
  std::size_t conflicts = 0;
  for (const Place& p : places)
    if (p.role == PlaceRole::Mutex) ++conflicts;
  return {places.size(), transitions.size(), arc_count(), conflicts};
}

namespace {

struct NetBuilder {
  PetriNet net;
  std::unordered_map<int, int> prop_place_last, prop_trans_last;

  int add_place(const Place& p, int tokens) {
    net.places.push_back(p);
    net.initial_marking.push_back(tokens);
    return static_cast<int>(net.places.size()) - 1;
  }
  int add_transition(const Transition& t) {
    net.transitions.push_back(t);
    net.in_arcs.emplace_back();
    net.out_arcs.emplace_back();
    return static_cast<int>(net.transitions.size()) - 1;
  }

  void prop_layer_zero(const Bitset& members) {
    members.for_each([&](std::size_t p) {
      int pi = static_cast<int>(p);
      int place = add_place({PlaceRole::Prop, 0, pi, {}, {}}, 1);
      int trans = add_transition({TransRole::Prop, 0, {}, pi});
      net.in_arcs[trans].push_back(place);
      prop_place_last[pi] = place;
      prop_trans_last[pi] = trans;
    });
  }

  // appends action layer j (records + exclusion pairs) and prop layer j
  template <typename PreOf, typename AddOf>
  void action_and_prop_layer(int j, const std::vector<LayerAction>& records,
                             const MutexSet& mutex, const Bitset& next_props,
                             PreOf&& pre_of, AddOf&& add_of) {
    std::vector<int> at(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
      at[r] = add_transition({TransRole::Action, j, records[r], -1});
      pre_of(records[r]).for_each([&](std::size_t p) {
        int pi = static_cast<int>(p);
        int place = add_place({PlaceRole::Precond, j, pi, records[r], {}}, 0);
        net.out_arcs[prop_trans_last[pi]].push_back(place);
        net.in_arcs[at[r]].push_back(place);
      });
    }
    std::vector<std::pair<int, int>> pairs;
    mutex.for_each([&](int a, int b, MutexRule) { pairs.emplace_back(a, b); });
    std::sort(pairs.begin(), pairs.end());
    for (auto [a, b] : pairs) {
      int place = add_place({PlaceRole::Mutex, j, -1, records[a], records[b]}, 1);
      net.in_arcs[at[a]].push_back(place);
      net.in_arcs[at[b]].push_back(place);
    }

    std::unordered_map<int, int> place_now, trans_now;
    next_props.for_each([&](std::size_t p) {
      int pi = static_cast<int>(p);
      int place = add_place({PlaceRole::Prop, j, pi, {}, {}}, 0);
      int trans = add_transition({TransRole::Prop, j, {}, pi});
      net.in_arcs[trans].push_back(place);
      place_now[pi] = place;
      trans_now[pi] = trans;
    });
    for (std::size_t r = 0; r < records.size(); ++r)
      add_of(records[r]).for_each([&](std::size_t p) {
        net.out_arcs[at[r]].push_back(place_now[static_cast<int>(p)]);
      });
    prop_place_last = std::move(place_now);
    prop_trans_last = std::move(trans_now);
    net.depth = j;
  }

  void set_goals(const Bitset& goal) {
    net.goal_places.clear();
    net.goal_total = static_cast<int>(goal.count());
    goal.for_each([&](std::size_t p) {
      auto it = prop_place_last.find(static_cast<int>(p));
      if (it != prop_place_last.end()) net.goal_places.push_back(it->second);
      // a goal proposition absent from the final layer leaves the
      // sub-marking unreachable
    });
    std::sort(net.goal_places.begin(), net.goal_places.end());
  }
};

}  // namespace

PetriNet translate(const PlanGraph& g) {
  if (g.relaxed())
    throw Error(ErrKind::RelaxedGraphRejected,
                "only the full plan graph translates to a net");
  NetBuilder b;
  b.prop_layer_zero(g.prop_layer(0).members);
  for (int j = 1; j <= g.action_layer_count(); ++j) {
    const ActionLayer& layer = g.action_layer(j - 1);
    b.action_and_prop_layer(
        j, layer.records, layer.mutex, g.prop_layer(j).members,
        [&](const LayerAction& r) -> const Bitset& { return g.pre_of(r); },
        [&](const LayerAction& r) -> const Bitset& { return g.add_of(r); });
  }
  b.set_goals(g.problem().goal);
  return std::move(b.net);
}

std::vector<int> fire(const PetriNet& net, const std::vector<int>& marking, int t) {
  for (int place : net.in_arcs[t])
    if (marking[place] < 1)
      throw Error(ErrKind::NotEnabled, "transition " + std::to_string(t) +
                                           " starves place " + std::to_string(place));
  std::vector<int> next = marking;
  for (int place : net.in_arcs[t]) --next[place];
  for (int place : net.out_arcs[t]) ++next[place];
  return next;
}

bool replay(const PetriNet& net, const FiringSet& f) {
  if (static_cast<int>(net.goal_places.size()) != net.goal_total) return false;
  std::vector<int> marking = net.initial_marking;
  for (int t : f.fired) {
    for (int place : net.in_arcs[t])
      if (marking[place] < 1) return false;
    for (int place : net.in_arcs[t]) --marking[place];
    for (int place : net.out_arcs[t]) ++marking[place];
  }
  for (int place : net.goal_places)
    if (marking[place] < 1) return false;
  return true;
}

int FiringSet::real_action_count(const PetriNet& net) const {
  int n = 0;
  for (int t : fired)
    if (net.transitions[t].role == TransRole::Action &&
        !net.transitions[t].record.noop)
      ++n;
  return n;
}

namespace {

// Backward cover search over the net structure: at each action layer pick a
// mutually compatible producer set for the needed propositions, then need
// the picked transitions' preconditions one layer down. Depth-first with
// the running best as bound, plus entry-cost dominance per (layer, needed).
class SubmarkingSolver {
public:
  SubmarkingSolver(const PetriNet& net, const SolveLimits* limits)
      : net_(net), limits_(limits) {
    nprops_ = 1;
    for (const Place& p : net.places)
      if (p.role == PlaceRole::Prop) nprops_ = std::max(nprops_, p.prop + 1);
    producers_.resize(net.depth + 1);
    pre_props_.assign(net.transitions.size(), {});
    add_props_.assign(net.transitions.size(), Bitset(nprops_));
    real_.assign(net.transitions.size(), false);

    std::unordered_map<int, std::vector<int>> mutex_members;
    for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
      int t = static_cast<int>(ti);
      const Transition& tr = net.transitions[ti];
      if (tr.role == TransRole::Prop) {
        prop_trans_[{tr.layer, tr.prop}] = t;
        continue;
      }
      real_[ti] = !tr.record.noop;
      for (int place : net.in_arcs[ti]) {
        const Place& pl = net.places[place];
        if (pl.role == PlaceRole::Precond) pre_props_[ti].push_back(pl.prop);
        if (pl.role == PlaceRole::Mutex) mutex_members[place].push_back(t);
      }
      for (int place : net.out_arcs[ti]) {
        const Place& pl = net.places[place];
        if (pl.role == PlaceRole::Prop) {
          add_props_[ti].set(pl.prop);
          producers_[pl.layer][pl.prop].push_back(t);
        }
      }
    }
    for (auto& [place, members] : mutex_members)
      if (members.size() == 2)
        mutex_pairs_.insert(MutexSet::key(members[0], members[1]));
    // maintenance first (free), then real actions in id order
    for (auto& layer : producers_)
      for (auto& [prop, ts] : layer)
        std::stable_sort(ts.begin(), ts.end(), [&](int a, int b) {
          if (real_[a] != real_[b]) return !real_[a];
          return a < b;
        });
    memo_.resize(net.depth + 1);
    memo_fail_.resize(net.depth + 1);
  }

  std::optional<FiringSet> run(const Bitset& goal_props) {
    if (static_cast<int>(net_.goal_places.size()) != net_.goal_total)
      return std::nullopt;
    cur_.assign(net_.depth + 1, {});
    search(net_.depth, goal_props, 0);
    if (best_cost_ == INT_MAX) return std::nullopt;

    FiringSet fs;
    for (int j = 1; j <= net_.depth; ++j) {
      std::vector<int> feeders;
      Bitset fed(nprops_);
      for (int t : best_picks_[j])
        for (int p : pre_props_[t])
          if (!fed.test(p)) {
            fed.set(p);
            feeders.push_back(prop_trans_.at({j - 1, p}));
          }
      std::sort(feeders.begin(), feeders.end());
      fs.fired.insert(fs.fired.end(), feeders.begin(), feeders.end());
      std::vector<int> picks = best_picks_[j];
      std::sort(picks.begin(), picks.end());
      fs.fired.insert(fs.fired.end(), picks.begin(), picks.end());
    }
    return fs;
  }

private:
  bool compatible(int t, const std::vector<int>& picks) const {
    for (int u : picks)
      if (mutex_pairs_.count(MutexSet::key(t, u))) return false;
    return true;
  }

  void search(int j, const Bitset& needed, int cost) {
    if (cost >= best_cost_) return;
    if (limits_ && limits_->expired()) return;
    if (j == 0) {  // needed is covered by the initial marking by construction
      best_cost_ = cost;
      best_picks_ = cur_;
      return;
    }
    if (memo_fail_[j].count(needed)) return;
    auto [it, fresh] = memo_[j].try_emplace(needed, cost);
    if (!fresh) {
      if (it->second <= cost) return;
      it->second = cost;
    }
    std::vector<int> goals = needed.to_indices();
    std::vector<int> picks;
    int best_at_entry = best_cost_;
    cover(j, goals, picks, Bitset(nprops_), cost);
    // with no bound active the exploration was complete, so a fruitless one
    // proves this needed set unreachable at this layer for good
    if (best_at_entry == INT_MAX && best_cost_ == INT_MAX)
      memo_fail_[j].insert(needed);
  }

  // picks a producer set covering the goals, branching on the subgoal with
  // the fewest compatible producers first (ties on the larger proposition)
  void cover(int j, const std::vector<int>& goals, std::vector<int>& picks,
             const Bitset& covered, int cost) {
    if (cost >= best_cost_) return;
    int chosen_goal = -1;
    std::size_t chosen_count = SIZE_MAX;
    for (int g : goals) {
      if (covered.test(g)) continue;
      auto layer_it = producers_[j].find(g);
      std::size_t n = 0;
      if (layer_it != producers_[j].end())
        for (int t : layer_it->second)
          if (compatible(t, picks) && (!real_[t] || cost + 1 < best_cost_)) ++n;
      if (n < chosen_count || (n == chosen_count && g > chosen_goal)) {
        chosen_count = n;
        chosen_goal = g;
      }
      if (n == 0) break;  // dead end either way
    }
    if (chosen_goal < 0) {  // everything covered
      Bitset next(nprops_);
      for (int t : picks)
        for (int p : pre_props_[t]) next.set(p);
      cur_[j] = picks;
      search(j - 1, next, cost);
      return;
    }
    if (chosen_count == 0) return;
    for (int t : producers_[j].at(chosen_goal)) {
      if (!compatible(t, picks)) continue;
      int c2 = cost + (real_[t] ? 1 : 0);
      if (c2 >= best_cost_ && real_[t]) continue;
      picks.push_back(t);
      Bitset covered2 = covered;
      covered2 |= add_props_[t];
      cover(j, goals, picks, covered2, c2);
      picks.pop_back();
    }
  }

  const PetriNet& net_;
  const SolveLimits* limits_;
  int nprops_;
  std::vector<std::unordered_map<int, std::vector<int>>> producers_;  // [layer]
  std::vector<std::vector<int>> pre_props_;
  std::vector<Bitset> add_props_;
  std::vector<bool> real_;
  std::unordered_set<std::uint64_t> mutex_pairs_;
  std::map<std::pair<int, int>, int> prop_trans_;
  std::vector<std::unordered_map<Bitset, int, BitsetHash>> memo_;
  std::vector<std::unordered_set<Bitset, BitsetHash>> memo_fail_;
  int best_cost_ = INT_MAX;
  std::vector<std::vector<int>> cur_, best_picks_;
};

}  // namespace

std::optional<FiringSet> solve_submarking(const PetriNet& net,
                                          const SolveLimits* limits) {
  int nprops = 1;
  for (const Place& p : net.places)
    if (p.role == PlaceRole::Prop) nprops = std::max(nprops, p.prop + 1);
  Bitset goal_props(nprops);
  for (int place : net.goal_places) goal_props.set(net.places[place].prop);
  SubmarkingSolver solver(net, limits);
  return solver.run(goal_props);
}

LayeredPlan decode_plan(const PetriNet& net, const FiringSet& f) {
  LayeredPlan plan;
  plan.layers.resize(net.depth);
  for (int t : f.fired) {
    const Transition& tr = net.transitions[t];
    if (tr.role == TransRole::Action && !tr.record.noop)
      plan.layers[tr.layer - 1].push_back({false, tr.record.index});
  }
  for (auto& layer : plan.layers)
    std::sort(layer.begin(), layer.end(),
              [](const PlanStep& a, const PlanStep& b) { return a.index < b.index; });
  return plan;
}

void PetriNet::to_text(const SymbolTable& symbols, std::ostream& os) const {
  auto record_name = [&](const LayerAction& r) {
    return r.noop ? "noop(" + symbols.prop_text(r.index) + ")"
                  : symbols.action_text(r.index);
  };
  for (std::size_t i = 0; i < places.size(); ++i) {
    const Place& p = places[i];
    os << "P " << i << " ";
    switch (p.role) {
      case PlaceRole::Prop:
        os << "prop " << symbols.prop_text(p.prop) << " @" << p.layer;
        break;
      case PlaceRole::Precond:
        os << "precond " << symbols.prop_text(p.prop) << " -> " << record_name(p.a)
           << " @" << p.layer;
        break;
      case PlaceRole::Mutex:
        os << "mutex " << record_name(p.a) << " / " << record_name(p.b) << " @"
           << p.layer;
        break;
    }
    os << " marking=" << initial_marking[i] << "\n";
  }
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    const Transition& tr = transitions[t];
    os << "T " << t << " ";
    if (tr.role == TransRole::Action)
      os << "action " << record_name(tr.record) << " @" << tr.layer;
    else
      os << "prop " << symbols.prop_text(tr.prop) << " @" << tr.layer;
    os << "\n";
  }
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    for (int p : in_arcs[t]) os << "A " << p << " -> " << t << "\n";
    for (int p : out_arcs[t]) os << "A " << t << " -> " << p << "\n";
  }
  Stats s = stats();
  os << "rows " << s.rows << "\ncolumns " << s.columns << "\nnonzeros " << s.nonzeros
     << "\nconflicts " << s.conflicts << "\n";
}

DirectBuilder::DirectBuilder(const GroundedProblem& p)
    : problem_(&p), empty_set_(p.prop_count()) {
  singletons_.reserve(p.prop_count());
  for (int i = 0; i < p.prop_count(); ++i) {
    Bitset s(p.prop_count());
    s.set(i);
    singletons_.push_back(std::move(s));
  }
  Layer l0;
  l0.props = p.init;
  layers_.push_back(std::move(l0));

  NetBuilder nb;
  nb.prop_layer_zero(p.init);
  net_ = std::move(nb.net);
  // keep the live lookup tables in the net builder members below
  rebuild_lookups();
}

void DirectBuilder::rebuild_lookups() {
  prop_place_last_.clear();
  prop_trans_last_.clear();
  for (std::size_t i = 0; i < net_.places.size(); ++i)
    if (net_.places[i].role == PlaceRole::Prop && net_.places[i].layer == net_.depth)
      prop_place_last_[net_.places[i].prop] = static_cast<int>(i);
  for (std::size_t t = 0; t < net_.transitions.size(); ++t)
    if (net_.transitions[t].role == TransRole::Prop &&
        net_.transitions[t].layer == net_.depth)
      prop_trans_last_[net_.transitions[t].prop] = static_cast<int>(t);
}

void DirectBuilder::index_producers(const Layer& prev) {
  producers_by_prop_.assign(problem_->prop_count(), {});
  for (std::size_t r = 0; r < prev.records.size(); ++r)
    r_add(prev.records[r]).for_each([&](std::size_t p) {
      producers_by_prop_[p].push_back(static_cast<int>(r));
    });
  one_step_memo_.clear();
}

// every producer of p statically clashes with every producer of q, looking
// one layer back only
bool DirectBuilder::one_step_inconsistent(int p, int q, const Layer& prev) const {
  if (prev.records.empty() || p == q) return false;
  auto [it, fresh] = one_step_memo_.try_emplace(MutexSet::key(p, q), false);
  if (!fresh) return it->second;
  const std::vector<int>& pp = producers_by_prop_[p];
  const std::vector<int>& qq = producers_by_prop_[q];
  bool all = !pp.empty() && !qq.empty();
  for (int a : pp) {
    if (!all) break;
    const LayerAction& ra = prev.records[a];
    for (int b : qq) {
      if (a == b) {
        all = false;
        break;
      }
      const LayerAction& rb = prev.records[b];
      bool clash = false;
      static_clash(r_pre(ra), r_add(ra), r_del(ra), r_pre(rb), r_add(rb), r_del(rb),
                   &clash);
      if (!clash) {
        all = false;
        break;
      }
    }
  }
  it->second = all;
  return all;
}

bool DirectBuilder::one_step_competing(const Bitset& pre1, const Bitset& pre2,
                                       const Layer& prev) const {
  if (prev.records.empty()) return false;
  bool found = false;
  pre1.for_each([&](std::size_t p) {
    if (found) return;
    pre2.for_each([&](std::size_t q) {
      if (!found && p != q &&
          one_step_inconsistent(static_cast<int>(p), static_cast<int>(q), prev))
        found = true;
    });
  });
  return found;
}

void DirectBuilder::expand() {
  const Layer& prev = layers_.back();
  Layer next;

  if (stagnant_) {
    // identical layers from here on: duplicate the previous layer's rows
    // and columns instead of recomputing them
    next = prev;
    ++stagnant_copies_;
  } else {
    index_producers(prev);
    double mutex_spent = 0;
    for (const GroundAction& a : problem_->actions) {
      if (!a.pre.subset_of(prev.props)) continue;
      Stopwatch inner;
      bool blocked = false;
      std::vector<int> pre = a.pre.to_indices();
      for (std::size_t i = 0; i < pre.size() && !blocked; ++i)
        for (std::size_t j = i + 1; j < pre.size() && !blocked; ++j)
          if (one_step_inconsistent(pre[i], pre[j], prev)) blocked = true;
      mutex_spent += inner.seconds();
      if (blocked) continue;
      next.records.push_back({false, a.id});
    }
    prev.props.for_each(
        [&](std::size_t p) { next.records.push_back({true, static_cast<int>(p)}); });

    next.props = prev.props;
    for (const LayerAction& r : next.records)
      if (!r.noop) next.props |= problem_->actions[r.index].add;

    Stopwatch pair_clock;
    for (std::size_t i = 0; i < next.records.size(); ++i) {
      const Bitset& pre_i = r_pre(next.records[i]);
      const Bitset& add_i = r_add(next.records[i]);
      const Bitset& del_i = r_del(next.records[i]);
      for (std::size_t j = i + 1; j < next.records.size(); ++j) {
        bool clash = false;
        MutexRule rule = static_clash(pre_i, add_i, del_i, r_pre(next.records[j]),
                                      r_add(next.records[j]), r_del(next.records[j]),
                                      &clash);
        if (clash) {
          next.mutex.add(static_cast<int>(i), static_cast<int>(j), rule);
        } else if (one_step_competing(pre_i, r_pre(next.records[j]), prev)) {
          next.mutex.add(static_cast<int>(i), static_cast<int>(j),
                         MutexRule::CompetingNeeds);
        }
      }
    }
    mutex_seconds_ += mutex_spent + pair_clock.seconds();

    stagnant_ = next.props == prev.props && next.records == prev.records &&
                next.mutex == prev.mutex;
  }

  append_layer_structure(prev, next);
  layers_.push_back(std::move(next));
}

void DirectBuilder::append_layer_structure(const Layer& prev, Layer& next) {
  (void)prev;
  NetBuilder nb;
  nb.net = std::move(net_);
  nb.prop_place_last.clear();
  nb.prop_trans_last.clear();
  for (auto [p, idx] : prop_place_last_) nb.prop_place_last[p] = idx;
  for (auto [p, idx] : prop_trans_last_) nb.prop_trans_last[p] = idx;
  nb.action_and_prop_layer(
      nb.net.depth + 1, next.records, next.mutex, next.props,
      [&](const LayerAction& r) -> const Bitset& { return r_pre(r); },
      [&](const LayerAction& r) -> const Bitset& { return r_add(r); });
  net_ = std::move(nb.net);
  rebuild_lookups();
}

bool DirectBuilder::has_goals() const {
  const Layer& last = layers_.back();
  if (!problem_->goal.subset_of(last.props)) return false;
  if (last.records.empty()) return true;  // no action layer yet: init covers goal

  // conflict-freedom read off the net: two goals clash when every producer
  // pair shares a mutex place
  std::vector<int> goals = problem_->goal.to_indices();
  for (std::size_t i = 0; i < goals.size(); ++i) {
    for (std::size_t j = i + 1; j < goals.size(); ++j) {
      bool all = true, any_p = false, any_q = false;
      for (std::size_t a = 0; a < last.records.size() && all; ++a) {
        if (!r_add(last.records[a]).test(goals[i])) continue;
        any_p = true;
        for (std::size_t b = 0; b < last.records.size(); ++b) {
          if (!r_add(last.records[b]).test(goals[j])) continue;
          any_q = true;
          if (a == b || !last.mutex.contains(static_cast<int>(a), static_cast<int>(b))) {
            all = false;
            break;
          }
        }
      }
      if (all && any_p && any_q) return false;
    }
  }
  return true;
}

const Bitset& DirectBuilder::r_pre(const LayerAction& r) const {
  return r.noop ? singletons_[r.index] : problem_->actions[r.index].pre;
}
const Bitset& DirectBuilder::r_add(const LayerAction& r) const {
  return r.noop ? singletons_[r.index] : problem_->actions[r.index].add;
}
const Bitset& DirectBuilder::r_del(const LayerAction& r) const {
  return r.noop ? empty_set_ : problem_->actions[r.index].del;
}

namespace {

PetriNet net_with_goals(const DirectBuilder& b) {
  PetriNet net = b.net();  // copy: goal places depend on the current depth
  std::unordered_map<int, int> last_places;
  for (std::size_t i = 0; i < net.places.size(); ++i)
    if (net.places[i].role == PlaceRole::Prop && net.places[i].layer == net.depth)
      last_places[net.places[i].prop] = static_cast<int>(i);
  net.goal_places.clear();
  net.goal_total = static_cast<int>(b.problem().goal.count());
  b.problem().goal.for_each([&](std::size_t p) {
    auto it = last_places.find(static_cast<int>(p));
    if (it != last_places.end()) net.goal_places.push_back(it->second);
  });
  std::sort(net.goal_places.begin(), net.goal_places.end());
  return net;
}

template <typename HasGoals, typename LeveledOff, typename Expand, typename Net,
          typename Sizer>
SolveResult petriplan_loop(const SolveLimits& limits, PhaseTimes* times,
                           HasGoals&& has_goals, LeveledOff&& leveled_off,
                           Expand&& expand, Net&& net_at, Sizer&& fill_sizes,
                           int* depth_out) {
  SolveResult res;
  while (!has_goals()) {
    if (leveled_off()) {
      res.outcome = Outcome::Unsolvable;
      res.note = "criterion=leveled-off";
      res.depth = *depth_out;
      fill_sizes(res);
      return res;
    }
    if (*depth_out >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = *depth_out;
      fill_sizes(res);
      return res;
    }
    if (limits.expired()) {
      res.outcome = Outcome::Timeout;
      res.depth = *depth_out;
      fill_sizes(res);
      return res;
    }
    expand();
  }
  while (true) {
    PetriNet net = net_at();
    Stopwatch clock;
    std::optional<FiringSet> firing = solve_submarking(net, &limits);
    if (times) times->search += clock.seconds();
    if (firing) {
      res.outcome = Outcome::Plan;
      res.plan = decode_plan(net, *firing);
      res.depth = net.depth;
      fill_sizes(res);
      return res;
    }
    if (limits.expired()) {
      res.outcome = Outcome::Timeout;
      res.depth = *depth_out;
      fill_sizes(res);
      return res;
    }
    // stagnant layers still extend the horizon; only the pre-goal loop can
    // settle unsolvability
    if (*depth_out >= limits.max_layers) {
      res.outcome = Outcome::DepthLimit;
      res.depth = *depth_out;
      fill_sizes(res);
      return res;
    }
    expand();
  }
}

}  // namespace

SolveResult solve_petriplan1(const GroundedProblem& p, const SolveLimits& limits,
                             PhaseTimes* times) {
  PlanGraph g(p, /*relaxed=*/false);
  int depth = 0;
  auto expand = [&] {
    Stopwatch clock;
    double mutex_before = g.mutex_seconds();
    g.expand();
    depth = g.action_layer_count();
    if (times) {
      double total = clock.seconds();
      double mutex_delta = g.mutex_seconds() - mutex_before;
      times->mutex += mutex_delta;
      times->expand += total - mutex_delta;
      times->per_expansion.push_back(total - mutex_delta);
    }
  };
  PetriNet::Stats last_net{};
  bool have_net = false;
  auto net_at = [&] {
    Stopwatch clock;
    PetriNet net = translate(g);
    if (times) times->translate += clock.seconds();
    last_net = net.stats();
    have_net = true;
    return net;
  };
  auto fill_sizes = [&](SolveResult& res) {
    res.sizes.has_graph = true;
    res.sizes.nodes = g.node_count();
    res.sizes.edges = g.edge_count();
    res.sizes.mutexes = g.mutex_count();
    if (have_net) {
      res.sizes.has_net = true;
      res.sizes.rows = last_net.rows;
      res.sizes.columns = last_net.columns;
      res.sizes.nonzeros = last_net.nonzeros;
      res.sizes.conflicts = last_net.conflicts;
    }
  };
  return petriplan_loop(
      limits, times, [&] { return g.has_goals(); },
      [&] { return g.leveled_off(); }, expand, net_at, fill_sizes, &depth);
}

SolveResult solve_petriplan2(const GroundedProblem& p, const SolveLimits& limits,
                             PhaseTimes* times) {
  DirectBuilder b(p);
  int depth = 0;
  auto expand = [&] {
    Stopwatch clock;
    double mutex_before = b.mutex_seconds();
    b.expand();
    depth = b.depth();
    if (times) {
      double total = clock.seconds();
      double mutex_delta = b.mutex_seconds() - mutex_before;
      times->expand += total - mutex_delta;
      times->mutex += mutex_delta;
      times->per_expansion.push_back(total - mutex_delta);
    }
  };
  auto net_at = [&] { return net_with_goals(b); };
  auto fill_sizes = [&](SolveResult& res) {
    PetriNet::Stats s = b.net().stats();
    res.sizes.has_net = true;
    res.sizes.rows = s.rows;
    res.sizes.columns = s.columns;
    res.sizes.nonzeros = s.nonzeros;
    res.sizes.conflicts = s.conflicts;
  };
  return petriplan_loop(
      limits, times, [&] { return b.has_goals(); },
      [&] { return b.leveled_off(); }, expand, net_at, fill_sizes, &depth);
}

}  // namespace plankit::petri
