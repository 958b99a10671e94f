#ifndef PLANKIT_SOLVE_HPP
#define PLANKIT_SOLVE_HPP

#include <chrono>
#include <string>
#include <vector>

#include "plankit/plan.hpp"

namespace plankit {

enum class Outcome { Plan, Unsolvable, DepthLimit, Timeout };

const char* outcome_name(Outcome o);

struct SolveLimits {
  int max_layers = 64;
  double timeout_seconds = 60.0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  bool expired() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
               .count() >= timeout_seconds;
  }
};

struct SizeStats {
  bool has_graph = false;
  std::size_t nodes = 0, edges = 0, mutexes = 0;
  bool has_net = false;
  std::size_t rows = 0, columns = 0, nonzeros = 0, conflicts = 0;
};

struct SolveResult {
  Outcome outcome = Outcome::Unsolvable;
  LayeredPlan plan;
  int depth = 0;          // action layers of the graph/net when decided
  std::string note;       // e.g. "criterion=leveled-off"
  SizeStats sizes;
};

// Wall-clock phase accumulators filled by the solver loops (seconds).
struct PhaseTimes {
  double expand = 0;                  // layer expansion, mutex time excluded
  double mutex = 0;                   // mutex computation
  double translate = 0;               // graph -> net translation
  double search = 0;                  // extraction / SAT / reachability / search
  std::vector<double> per_expansion;  // expansion seconds, one per expand()
};

class Stopwatch {
public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace plankit

#endif
