#include "plankit/plan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace plankit {

std::vector<int> LayeredPlan::real_actions(int layer) const {
  std::vector<int> out;
  for (const PlanStep& s : layers[layer])
    if (!s.noop) out.push_back(s.index);
  std::sort(out.begin(), out.end());
  return out;
}

std::string plan_to_text(const LayeredPlan& plan, const SymbolTable& symbols) {
  std::ostringstream os;
  for (int k = 0; k < plan.step_count(); ++k) {
    os << k << ":";
    for (int a : plan.real_actions(k)) os << ' ' << symbols.action_sexpr(a);
    os << "\n";
  }
  os << "actions=" << plan.action_count() << " steps=" << plan.step_count() << "\n";
  return os.str();
}

LayeredPlan plan_from_text(std::string_view text, const SymbolTable& symbols) {
  LayeredPlan plan;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::size_t h = line.find_first_not_of(" \t\r");
    if (h == std::string::npos) continue;
    if (line.compare(h, 8, "actions=") == 0) continue;  // summary line
    std::size_t colon = line.find(':', h);
    if (colon == std::string::npos)
      throw Error(ErrKind::PlanFormat, "plan line without step number: " + line);
    int step = 0;
    try {
      step = std::stoi(line.substr(h, colon - h));
    } catch (const std::exception&) {
      throw Error(ErrKind::PlanFormat, "bad step number in: " + line);
    }
    while (plan.step_count() <= step) plan.layers.emplace_back();

    std::size_t i = colon + 1;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      if (line[i] != '(')
        throw Error(ErrKind::PlanFormat, "expected '(' in plan line: " + line);
      std::size_t close = line.find(')', i);
      if (close == std::string::npos)
        throw Error(ErrKind::PlanFormat, "unterminated action in plan line: " + line);
      std::istringstream body(line.substr(i + 1, close - i - 1));
      std::string name, arg;
      body >> name;
      std::vector<std::string> args;
      while (body >> arg) args.push_back(arg);
      for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      for (std::string& a : args)
        for (char& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      int idx = symbols.action_index(SymbolTable::key(name, args));
      if (idx < 0)
        throw Error(ErrKind::PlanFormat, "unknown ground action (" + name + " ...)");
      plan.layers[step].push_back({false, idx});
      i = close + 1;
    }
  }
  return plan;
}

}  // namespace plankit
