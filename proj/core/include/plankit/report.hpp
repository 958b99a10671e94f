#ifndef PLANKIT_REPORT_HPP
#define PLANKIT_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "plankit/solve.hpp"

namespace plankit {

// Per-run phase breakdown plus representation sizes. Timers are wall-clock
// seconds; the JSON form carries nanosecond integers as well, the table
// form rounds to 2 decimals.
struct PhaseReport {
  std::string problem, planner;
  Outcome outcome = Outcome::Unsolvable;
  std::string note;

  double parse = 0, ground = 0, mutex = 0, expand = 0, translate = 0, search = 0,
         total = 0;
  std::vector<double> per_expansion;

  bool has_graph = false;
  std::size_t nodes = 0, edges = 0, mutexes = 0;
  bool has_net = false;
  std::size_t rows = 0, columns = 0, nonzeros = 0, conflicts = 0;

  int action_count = -1, step_count = -1;  // -1 when no plan
  bool plan_valid = false;

  std::string to_table() const;
  std::string to_json() const;
  std::string to_csv_row() const;
  static std::string csv_header();
};

}  // namespace plankit

#endif
