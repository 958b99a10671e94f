#include "plankit/plangraph.hpp"

#include <algorithm>
#include <ostream>

#include "plankit/solve.hpp"

namespace plankit {

MutexRule static_clash(const Bitset& pre1, const Bitset& add1, const Bitset& del1,
                       const Bitset& pre2, const Bitset& add2, const Bitset& del2,
                       bool* found) {
  *found = true;
  if (add1.intersects(del2) || add2.intersects(del1))
    return MutexRule::InconsistentEffects;
  if (del1.intersects(pre2) || del2.intersects(pre1))
    return MutexRule::Interference;
  *found = false;
  return MutexRule::InconsistentEffects;
}

PlanGraph::PlanGraph(const GroundedProblem& p, bool relaxed)
    : PlanGraph(p, relaxed, p.init) {}

PlanGraph::PlanGraph(const GroundedProblem& p, bool relaxed, const Bitset& state)
    : problem_(&p), relaxed_(relaxed), empty_set_(p.prop_count()) {
  singletons_.reserve(p.prop_count());
  for (int i = 0; i < p.prop_count(); ++i) {
    Bitset s(p.prop_count());
    s.set(i);
    singletons_.push_back(std::move(s));
  }
  PropLayer l0;
  l0.members = state;
  prop_layers_.push_back(std::move(l0));
}

const Bitset& PlanGraph::pre_of(const LayerAction& r) const {
  return r.noop ? singletons_[r.index] : problem_->actions[r.index].pre;
}
const Bitset& PlanGraph::add_of(const LayerAction& r) const {
  return r.noop ? singletons_[r.index] : problem_->actions[r.index].add;
}
const Bitset& PlanGraph::del_of(const LayerAction& r) const {
  return r.noop ? empty_set_ : problem_->actions[r.index].del;
}

void PlanGraph::expand() {
  const PropLayer& prev = prop_layers_.back();

  ActionLayer layer;
  for (const GroundAction& a : problem_->actions) {
    if (!a.pre.subset_of(prev.members)) continue;
    if (!relaxed_) {
      // no two preconditions may be exclusive in the supporting layer
      bool blocked = false;
      std::vector<int> pre = a.pre.to_indices();
      for (std::size_t i = 0; i < pre.size() && !blocked; ++i)
        for (std::size_t j = i + 1; j < pre.size() && !blocked; ++j)
          if (prev.mutex.contains(pre[i], pre[j])) blocked = true;
      if (blocked) continue;
    }
    layer.records.push_back({false, a.id});
  }
  prev.members.for_each(
      [&](std::size_t p) { layer.records.push_back({true, static_cast<int>(p)}); });

  PropLayer next;
  next.members = prev.members;  // noops persist everything
  for (const LayerAction& r : layer.records)
    if (!r.noop) next.members |= add_of(r);

  if (!relaxed_) {
    Stopwatch clock;
    compute_action_mutexes(layer, prev);
    compute_prop_mutexes(layer, next);
    mutex_seconds_ += clock.seconds();
  }

  action_layers_.push_back(std::move(layer));
  prop_layers_.push_back(std::move(next));
}

void PlanGraph::compute_action_mutexes(ActionLayer& layer, const PropLayer& prev) {
  const auto& recs = layer.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      bool clash = false;
      MutexRule rule =
          static_clash(pre_of(recs[i]), add_of(recs[i]), del_of(recs[i]),
                       pre_of(recs[j]), add_of(recs[j]), del_of(recs[j]), &clash);
      if (clash) {
        layer.mutex.add(static_cast<int>(i), static_cast<int>(j), rule);
        continue;
      }
      // competing needs against the previous proposition layer
      bool needs = false;
      pre_of(recs[i]).for_each([&](std::size_t p) {
        if (needs) return;
        pre_of(recs[j]).for_each([&](std::size_t q) {
          if (!needs && p != q && prev.mutex.contains(static_cast<int>(p),
                                                      static_cast<int>(q)))
            needs = true;
        });
      });
      if (needs)
        layer.mutex.add(static_cast<int>(i), static_cast<int>(j),
                        MutexRule::CompetingNeeds);
    }
  }
}

void PlanGraph::compute_prop_mutexes(const ActionLayer& producers, PropLayer& layer) {
  // producer record positions per proposition
  std::vector<std::vector<int>> by_prop(problem_->prop_count());
  for (std::size_t r = 0; r < producers.records.size(); ++r)
    add_of(producers.records[r]).for_each([&](std::size_t p) {
      by_prop[p].push_back(static_cast<int>(r));
    });

  std::vector<int> members = layer.members.to_indices();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const std::vector<int>& pi = by_prop[members[i]];
      const std::vector<int>& pj = by_prop[members[j]];
      bool all_mutex = !pi.empty() && !pj.empty();
      for (int a : pi) {
        if (!all_mutex) break;
        for (int b : pj) {
          if (a == b || !producers.mutex.contains(a, b)) {
            all_mutex = false;
            break;
          }
        }
      }
      if (all_mutex)
        layer.mutex.add(members[i], members[j], MutexRule::InconsistentSupport);
    }
  }
}

bool PlanGraph::has_goals() const {
  const PropLayer& last = prop_layers_.back();
  if (!problem_->goal.subset_of(last.members)) return false;
  if (relaxed_) return true;
  std::vector<int> goals = problem_->goal.to_indices();
  for (std::size_t i = 0; i < goals.size(); ++i)
    for (std::size_t j = i + 1; j < goals.size(); ++j)
      if (last.mutex.contains(goals[i], goals[j])) return false;
  return true;
}

bool PlanGraph::leveled_off() const {
  if (prop_layers_.size() < 2) return false;
  const PropLayer& a = prop_layers_[prop_layers_.size() - 2];
  const PropLayer& b = prop_layers_.back();
  return a.members == b.members && a.mutex == b.mutex;
}

std::size_t PlanGraph::node_count() const {
  std::size_t n = 0;
  for (const PropLayer& l : prop_layers_) n += l.members.count();
  for (const ActionLayer& l : action_layers_) n += l.records.size();
  return n;
}

std::size_t PlanGraph::edge_count() const {
  std::size_t n = 0;
  for (const ActionLayer& l : action_layers_)
    for (const LayerAction& r : l.records)
      n += pre_of(r).count() + add_of(r).count() + del_of(r).count();
  return n;
}

std::size_t PlanGraph::mutex_count() const {
  std::size_t n = 0;
  for (const PropLayer& l : prop_layers_) n += l.mutex.size();
  for (const ActionLayer& l : action_layers_) n += l.mutex.size();
  return n;
}

void PlanGraph::dump(std::ostream& os) const {
  const SymbolTable& sym = *problem_->symbols;
  auto record_name = [&](const LayerAction& r) {
    return r.noop ? "noop(" + sym.prop_text(r.index) + ")" : sym.action_text(r.index);
  };
  for (std::size_t k = 0; k < prop_layers_.size(); ++k) {
    const PropLayer& l = prop_layers_[k];
    os << "P" << 2 * k << ": members=" << l.members.count()
       << " mutexes=" << l.mutex.size() << "\n";
    l.members.for_each(
        [&](std::size_t p) { os << "  " << sym.prop_text(static_cast<int>(p)) << "\n"; });
    if (k < action_layers_.size()) {
      const ActionLayer& al = action_layers_[k];
      os << "A" << 2 * k + 1 << ": members=" << al.records.size()
         << " mutexes=" << al.mutex.size() << "\n";
      for (const LayerAction& r : al.records) os << "  " << record_name(r) << "\n";
    }
  }
}

}  // namespace plankit
