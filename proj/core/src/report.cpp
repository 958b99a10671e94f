#include "plankit/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace plankit {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Plan: return "Plan";
    case Outcome::Unsolvable: return "Unsolvable";
    case Outcome::DepthLimit: return "DepthLimit";
    case Outcome::Timeout: return "Timeout";
  }
  return "?";
}

namespace {

std::string secs2(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

std::string secs6(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

long long nanos(double s) { return static_cast<long long>(std::llround(s * 1e9)); }

}  // namespace

std::string PhaseReport::to_table() const {
  std::ostringstream os;
  os << "problem            " << problem << "\n";
  os << "planner            " << planner << "\n";
  os << "outcome            " << outcome_name(outcome);
  if (!note.empty()) os << " (" << note << ")";
  os << "\n";
  bool limited = outcome == Outcome::Timeout || outcome == Outcome::DepthLimit;
  auto cell = [&](int v) { return limited ? std::string("x")
                                          : v < 0 ? std::string("-")
                                                  : std::to_string(v); };
  os << "actions            " << cell(action_count) << "\n";
  os << "plan length        " << cell(step_count) << "\n";
  os << "parse time         " << secs2(parse) << "\n";
  os << "instantiation time " << secs2(ground) << "\n";
  os << "mutex time         " << secs2(mutex) << "\n";
  os << "expansion time     " << secs2(expand) << "\n";
  for (std::size_t i = 0; i < per_expansion.size(); ++i)
    os << "  expansion " << i + 1 << "      " << secs2(per_expansion[i]) << "\n";
  os << "translation time   " << (translate > 0 || has_net ? secs2(translate) : "-")
     << "\n";
  os << "search time        " << secs2(search) << "\n";
  os << "total time         " << secs2(total) << "\n";
  double residual = total - (parse + ground + mutex + expand + translate + search);
  os << "untimed overhead   " << secs2(residual < 0 ? 0 : residual) << "\n";
  if (has_graph)
    os << "graph nodes        " << nodes << "\ngraph edges        " << edges
       << "\ngraph mutexes      " << mutexes << "\n";
  if (has_net)
    os << "net rows           " << rows << "\nnet columns        " << columns
       << "\nnet nonzeros       " << nonzeros << "\nnet conflicts      " << conflicts
       << "\n";
  return os.str();
}

std::string PhaseReport::to_json() const {
  nlohmann::json j;
  j["problem"] = problem;
  j["planner"] = planner;
  j["outcome"] = outcome_name(outcome);
  if (!note.empty()) j["note"] = note;
  j["timers"] = {
      {"parse_s", parse},       {"parse_ns", nanos(parse)},
      {"ground_s", ground},     {"ground_ns", nanos(ground)},
      {"mutex_s", mutex},       {"mutex_ns", nanos(mutex)},
      {"expand_s", expand},     {"expand_ns", nanos(expand)},
      {"translate_s", translate}, {"translate_ns", nanos(translate)},
      {"search_s", search},     {"search_ns", nanos(search)},
      {"total_s", total},       {"total_ns", nanos(total)},
  };
  double residual = total - (parse + ground + mutex + expand + translate + search);
  j["timers"]["residual_s"] = residual < 0 ? 0 : residual;
  j["timers"]["per_expansion_s"] = per_expansion;
  if (has_graph)
    j["graph"] = {{"nodes", nodes}, {"edges", edges}, {"mutexes", mutexes}};
  if (has_net)
    j["net"] = {{"rows", rows},
                {"columns", columns},
                {"nonzeros", nonzeros},
                {"conflicts", conflicts}};
  if (action_count >= 0) {
    j["plan"] = {{"actions", action_count},
                 {"steps", step_count},
                 {"valid", plan_valid}};
  }
  return j.dump(2);
}

std::string PhaseReport::csv_header() {
  return "problem,planner,outcome,actions,steps,parse_s,ground_s,mutex_s,expand_s,"
         "translate_s,search_s,total_s,per_expansion_s,nodes,edges,mutexes,rows,"
         "columns,nonzeros,conflicts";
}

std::string PhaseReport::to_csv_row() const {
  std::ostringstream os;
  bool limited = outcome == Outcome::Timeout || outcome == Outcome::DepthLimit;
  auto plan_cell = [&](int v) {
    return limited ? std::string("x") : v < 0 ? std::string("-") : std::to_string(v);
  };
  auto size_cell = [&](bool present, std::size_t v) {
    return present ? std::to_string(v) : std::string("-");
  };
  std::string per;
  for (std::size_t i = 0; i < per_expansion.size(); ++i) {
    if (i) per += ';';
    per += secs6(per_expansion[i]);
  }
  if (per.empty()) per = "-";
  os << problem << ',' << planner << ',' << outcome_name(outcome) << ','
     << plan_cell(action_count) << ',' << plan_cell(step_count) << ','
     << secs6(parse) << ',' << secs6(ground) << ',' << secs6(mutex) << ','
     << secs6(expand) << ',' << (has_net || translate > 0 ? secs6(translate) : "-")
     << ',' << secs6(search) << ',' << secs6(total) << ',' << per << ','
     << size_cell(has_graph, nodes) << ',' << size_cell(has_graph, edges) << ','
     << size_cell(has_graph, mutexes) << ',' << size_cell(has_net, rows) << ','
     << size_cell(has_net, columns) << ',' << size_cell(has_net, nonzeros) << ','
     << size_cell(has_net, conflicts);
  return os.str();
}

}  // namespace plankit
