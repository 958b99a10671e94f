#include <cstdint>
#include <cstdlib>

#include "plankit/satenc.hpp"

namespace plankit::sat {

namespace {

// Unit propagation over two watched literals with first-UIP conflict
// learning. Decisions follow the fixed rule (lowest unassigned id, false
// first), so the search visits assignments in lexicographic order and the
// first model found is the lexicographically least one; learning only
// prunes model-free subtrees and cannot change which model comes back.
class Solver {
public:
  Solver(int nvars, const std::vector<std::vector<int>>& clauses)
      : nvars_(nvars),
        assign_(nvars + 1, -1),
        level_(nvars + 1, 0),
        reason_(nvars + 1, -1),
        seen_(nvars + 1, false) {
    for (const auto& c : clauses) {
      if (c.empty()) {
        unsat_at_load_ = true;
        return;
      }
      clauses_.push_back(c);
    }
    watches_.assign(2 * (nvars + 1), {});
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) attach(ci);
  }

  std::optional<std::vector<bool>> run(const std::function<bool()>& interrupt) {
    if (unsat_at_load_) return std::nullopt;
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
      if (clauses_[ci].size() == 1)
        if (!enqueue(clauses_[ci][0], static_cast<int>(ci))) return std::nullopt;

    std::uint64_t steps = 0;
    while (true) {
      if (interrupt && (++steps & 0x3ff) == 0 && interrupt()) return std::nullopt;
      int confl = propagate();
      if (confl >= 0) {
        if (current_level() == 0) return std::nullopt;
        std::vector<int> learned;
        int btlevel = 0;
        analyze(confl, learned, btlevel);
        backtrack(btlevel);
        int ci = add_clause(learned);
        enqueue(learned[0], ci);
        continue;
      }
      int var = next_unassigned();
      if (var == 0) {
        std::vector<bool> model(nvars_);
        for (int v = 1; v <= nvars_; ++v) model[v - 1] = assign_[v] == 1;
        return model;
      }
      trail_lim_.push_back(trail_.size());
      enqueue(-var, -1);  // decision: false first
    }
  }

private:
  static std::size_t lit_pos(int lit) {
    return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit > 0 ? 0 : 1);
  }
  int value(int lit) const {
    int v = assign_[std::abs(lit)];
    if (v < 0) return -1;
    return (lit > 0) == (v == 1) ? 1 : 0;
  }
  int current_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(std::size_t ci) {
    const auto& c = clauses_[ci];
    if (c.size() < 2) return;
    watch_.resize(clauses_.size(), {0, 0});
    watch_[ci] = {c[0], c[1]};
    watches_[lit_pos(c[0])].push_back(ci);
    watches_[lit_pos(c[1])].push_back(ci);
  }

  int add_clause(const std::vector<int>& c) {
    clauses_.push_back(c);
    std::size_t ci = clauses_.size() - 1;
    attach(ci);
    return static_cast<int>(ci);
  }

  bool enqueue(int lit, int reason) {
    int v = value(lit);
    if (v == 0) return false;
    if (v == 1) return true;
    int var = std::abs(lit);
    assign_[var] = lit > 0 ? 1 : 0;
    level_[var] = current_level();
    reason_[var] = reason;
    trail_.push_back(lit);
    queue_.push_back(lit);
    return true;
  }

  // returns a conflicting clause index or -1
  int propagate() {
    while (!queue_.empty()) {
      int lit = queue_.back();
      queue_.pop_back();
      int falsified = -lit;
      auto& wl = watches_[lit_pos(falsified)];
      std::size_t keep = 0;
      int conflict = -1;
      for (std::size_t i = 0; i < wl.size(); ++i) {
        std::size_t ci = wl[i];
        auto& [w0, w1] = watch_[ci];
        if (w0 == falsified) std::swap(w0, w1);
        if (value(w0) == 1) {
          wl[keep++] = ci;
          continue;
        }
        int replacement = 0;
        for (int cand : clauses_[ci]) {
          if (cand == w0 || cand == w1) continue;
          if (value(cand) != 0) {
            replacement = cand;
            break;
          }
        }
        if (replacement != 0) {
          w1 = replacement;
          watches_[lit_pos(replacement)].push_back(ci);
          continue;
        }
        wl[keep++] = ci;
        if (!enqueue(w0, static_cast<int>(ci))) {
          for (std::size_t j = i + 1; j < wl.size(); ++j) wl[keep++] = wl[j];
          conflict = static_cast<int>(ci);
          break;
        }
      }
      wl.resize(keep);
      if (conflict >= 0) {
        queue_.clear();
        return conflict;
      }
    }
    return -1;
  }

  // first-UIP scheme; learned[0] is the asserting literal
  void analyze(int confl, std::vector<int>& learned, int& btlevel) {
    learned.clear();
    learned.push_back(0);  // room for the asserting literal
    btlevel = 0;
    int counter = 0;
    int idx = static_cast<int>(trail_.size()) - 1;
    int p_lit = 0;  // literal whose reason is being resolved; 0 first round

    while (true) {
      const auto& c = clauses_[confl];
      for (int lit : c) {
        if (lit == p_lit) continue;  // the reason clause asserts this literal
        int v = std::abs(lit);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = true;
        if (level_[v] == current_level()) {
          ++counter;
        } else {
          learned.push_back(lit);
          btlevel = std::max(btlevel, level_[v]);
        }
      }
      while (!seen_[std::abs(trail_[idx])]) --idx;
      p_lit = trail_[idx];
      int v = std::abs(p_lit);
      seen_[v] = false;
      --counter;
      --idx;
      if (counter <= 0) break;
      confl = reason_[v];
    }
    learned[0] = -p_lit;  // flip the unique implication point
    for (std::size_t i = 1; i < learned.size(); ++i) seen_[std::abs(learned[i])] = false;
  }

  void backtrack(int level) {
    while (current_level() > level) {
      std::size_t mark = trail_lim_.back();
      trail_lim_.pop_back();
      while (trail_.size() > mark) {
        int var = std::abs(trail_.back());
        trail_.pop_back();
        assign_[var] = -1;
        reason_[var] = -1;
      }
    }
    queue_.clear();
  }

  int next_unassigned() const {
    for (int v = 1; v <= nvars_; ++v)
      if (assign_[v] < 0) return v;
    return 0;
  }

  int nvars_;
  bool unsat_at_load_ = false;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::pair<int, int>> watch_;
  std::vector<std::int8_t> assign_;
  std::vector<int> level_, reason_;
  std::vector<char> seen_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<int> queue_;
};

}  // namespace

std::optional<std::vector<bool>> dpll(int nvars,
                                      const std::vector<std::vector<int>>& clauses,
                                      const std::function<bool()>& interrupt) {
  return Solver(nvars, clauses).run(interrupt);
}

}  // namespace plankit::sat
