#include "plankit/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace plankit::pddl {

namespace {

bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c >= 0x80;
}

bool is_delim(unsigned char c) {
  return std::isspace(c) || c == '(' || c == ')' || c == ';' || c == '\0';
}

std::string fold(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({TokenKind::LParen, "(", i});
      ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({TokenKind::RParen, ")", i});
      ++i;
      continue;
    }
    if (c == '-') {
      // a '-' is a type marker only when it stands alone
      if (i + 1 >= n || is_delim(static_cast<unsigned char>(text[i + 1]))) {
        out.push_back({TokenKind::Dash, "-", i});
        ++i;
        continue;
      }
      // otherwise it starts an identifier such as "-strange"; fall through
    }
    if (c == ':' || c == '?') {
      std::size_t start = i;
      ++i;
      std::size_t begin = i;
      while (i < n && is_name_char(static_cast<unsigned char>(text[i]))) ++i;
      if (i == begin)
        throw Error(ErrKind::IllegalCharacter,
                    std::string("dangling '") + static_cast<char>(c) + "'", start);
      out.push_back({c == ':' ? TokenKind::Keyword : TokenKind::Variable,
                     fold(text.substr(begin, i - begin)), start});
      continue;
    }
    if (is_name_char(c)) {
      std::size_t start = i;
      while (i < n && is_name_char(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({TokenKind::Identifier, fold(text.substr(start, i - start)), start});
      continue;
    }
    throw Error(ErrKind::IllegalCharacter,
                "illegal character '" + std::string(1, text[i]) + "'", i);
  }
  return out;
}

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  DomainAst domain() {
    expect(TokenKind::LParen);
    expect_ident("define");
    expect(TokenKind::LParen);
    expect_ident("domain");
    DomainAst d;
    d.name = ident("domain name");
    expect(TokenKind::RParen);
    while (!at(TokenKind::RParen)) {
      expect(TokenKind::LParen);
      const Token& kw = next();
      if (kw.kind != TokenKind::Keyword)
        throw Error(ErrKind::SyntaxError, "expected a :section keyword", kw.pos);
      if (kw.text == "requirements") {
        requirements();
      } else if (kw.text == "types") {
        d.types = typed_list(TokenKind::Identifier);
        expect(TokenKind::RParen);
      } else if (kw.text == "predicates") {
        while (!at(TokenKind::RParen)) d.predicates.push_back(predicate_decl());
        expect(TokenKind::RParen);
      } else if (kw.text == "action") {
        d.actions.push_back(action(kw.pos));
      } else if (kw.text == "constants" || kw.text == "functions" ||
                 kw.text == "axiom" || kw.text == "derived" ||
                 kw.text == "durative-action") {
        throw Error(ErrKind::UnsupportedFeature, ":" + kw.text + " is not supported",
                    kw.pos);
      } else {
        throw Error(ErrKind::SyntaxError, "unknown section :" + kw.text, kw.pos);
      }
    }
    expect(TokenKind::RParen);
    expect(TokenKind::End);
    validate_domain(d);
    return d;
  }

  ProblemAst problem() {
    expect(TokenKind::LParen);
    expect_ident("define");
    expect(TokenKind::LParen);
    expect_ident("problem");
    ProblemAst p;
    p.name = ident("problem name");
    expect(TokenKind::RParen);
    while (!at(TokenKind::RParen)) {
      expect(TokenKind::LParen);
      const Token& kw = next();
      if (kw.kind != TokenKind::Keyword)
        throw Error(ErrKind::SyntaxError, "expected a :section keyword", kw.pos);
      if (kw.text == "domain") {
        p.domain_name = ident("domain name");
        expect(TokenKind::RParen);
      } else if (kw.text == "requirements") {
        requirements();
      } else if (kw.text == "objects") {
        p.objects = typed_list(TokenKind::Identifier);
        expect(TokenKind::RParen);
      } else if (kw.text == "init") {
        while (!at(TokenKind::RParen)) p.init.push_back(ground_atom());
        expect(TokenKind::RParen);
      } else if (kw.text == "goal") {
        p.goal = conjunction(/*allow_negation=*/false, /*allow_vars=*/false);
        expect(TokenKind::RParen);
      } else {
        throw Error(ErrKind::SyntaxError, "unknown section :" + kw.text, kw.pos);
      }
    }
    expect(TokenKind::RParen);
    expect(TokenKind::End);
    validate_problem(p);
    return p;
  }

private:
  const Token& peek() const {
    static const Token end{TokenKind::End, "", 0};
    return pos_ < toks_.size() ? toks_[pos_] : end;
  }
  const Token& next() {
    static const Token end{TokenKind::End, "", 0};
    return pos_ < toks_.size() ? toks_[pos_++] : end;
  }
  bool at(TokenKind k) const { return peek().kind == k; }

  void expect(TokenKind k) {
    const Token& t = next();
    if (t.kind != k)
      throw Error(ErrKind::SyntaxError,
                  "expected " + token_name(k) + ", found '" + t.text + "'", t.pos);
  }
  void expect_ident(const std::string& word) {
    const Token& t = next();
    if (t.kind != TokenKind::Identifier || t.text != word)
      throw Error(ErrKind::SyntaxError, "expected '" + word + "'", t.pos);
  }
  std::string ident(const std::string& what) {
    const Token& t = next();
    if (t.kind != TokenKind::Identifier)
      throw Error(ErrKind::SyntaxError, "expected " + what, t.pos);
    return t.text;
  }

  static std::string token_name(TokenKind k) {
    switch (k) {
      case TokenKind::LParen: return "'('";
      case TokenKind::RParen: return "')'";
      case TokenKind::Keyword: return "a :keyword";
      case TokenKind::Variable: return "a ?variable";
      case TokenKind::Identifier: return "an identifier";
      case TokenKind::Dash: return "'-'";
      case TokenKind::End: return "end of input";
    }
    return "?";
  }

  void requirements() {
    while (!at(TokenKind::RParen)) {
      const Token& t = next();
      if (t.kind != TokenKind::Keyword)
        throw Error(ErrKind::SyntaxError, "expected a :requirement flag", t.pos);
      if (t.text != "strips" && t.text != "typing")
        throw Error(ErrKind::UnsupportedFeature,
                    "unsupported requirement :" + t.text, t.pos);
    }
    expect(TokenKind::RParen);
  }

  // name* [- type] repeated; untyped names default to "object"
  std::vector<TypedName> typed_list(TokenKind name_kind) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    while (true) {
      const Token& t = peek();
      if (t.kind == name_kind) {
        pending.push_back(t.text);
        next();
      } else if (t.kind == TokenKind::Dash) {
        std::size_t dash_pos = t.pos;
        next();
        const Token& ty = next();
        if (ty.kind != TokenKind::Identifier)
          throw Error(ErrKind::SyntaxError, "expected a type name after '-'", ty.pos);
        if (pending.empty())
          throw Error(ErrKind::SyntaxError, "'-' with no names before it", dash_pos);
        for (const std::string& n : pending) out.push_back({n, ty.text});
        pending.clear();
      } else {
        break;
      }
    }
    for (const std::string& n : pending) out.push_back({n, "object"});
    return out;
  }

  PredicateDecl predicate_decl() {
    expect(TokenKind::LParen);
    PredicateDecl pd;
    pd.name = ident("predicate name");
    pd.params = typed_list(TokenKind::Variable);
    expect(TokenKind::RParen);
    return pd;
  }

  ActionSchema action(std::size_t action_pos) {
    ActionSchema a;
    a.name = ident("action name");
    while (!at(TokenKind::RParen)) {
      const Token& kw = next();
      if (kw.kind != TokenKind::Keyword)
        throw Error(ErrKind::SyntaxError, "expected :parameters/:precondition/:effect",
                    kw.pos);
      if (kw.text == "parameters") {
        expect(TokenKind::LParen);
        a.params = typed_list(TokenKind::Variable);
        expect(TokenKind::RParen);
      } else if (kw.text == "precondition") {
        a.precond = conjunction(/*allow_negation=*/false, /*allow_vars=*/true);
      } else if (kw.text == "effect") {
        a.effects = conjunction(/*allow_negation=*/true, /*allow_vars=*/true);
      } else {
        throw Error(ErrKind::SyntaxError, "unknown action item :" + kw.text, kw.pos);
      }
    }
    expect(TokenKind::RParen);
    if (a.name.empty())
      throw Error(ErrKind::SyntaxError, "action without a name", action_pos);
    return a;
  }

  // (and atom*) | atom | ()   —  the (and ...) wrapper is optional
  std::vector<Atom> conjunction(bool allow_negation, bool allow_vars) {
    std::vector<Atom> out;
    expect(TokenKind::LParen);
    if (at(TokenKind::RParen)) {  // () : empty conjunction
      next();
      return out;
    }
    if (at(TokenKind::Identifier) && peek().text == "and") {
      next();
      while (!at(TokenKind::RParen)) out.push_back(literal(allow_negation, allow_vars));
      expect(TokenKind::RParen);
      return out;
    }
    out.push_back(literal_body(allow_negation, allow_vars));
    return out;
  }

  Atom literal(bool allow_negation, bool allow_vars) {
    expect(TokenKind::LParen);
    return literal_body(allow_negation, allow_vars);
  }

  // parses the inside of "(...)" whose '(' was already consumed
  Atom literal_body(bool allow_negation, bool allow_vars) {
    const Token& head = peek();
    if (head.kind == TokenKind::Identifier && head.text == "not") {
      if (!allow_negation)
        throw Error(ErrKind::UnsupportedFeature,
                    "negation is only supported in effects", head.pos);
      next();
      Atom a = literal(false, allow_vars);
      a.negated = true;
      expect(TokenKind::RParen);
      return a;
    }
    static const std::set<std::string> adl = {"or",     "imply",  "exists",
                                              "forall", "when",   "either",
                                              "increase", "decrease", "assign"};
    if (head.kind == TokenKind::Identifier && adl.count(head.text))
      throw Error(ErrKind::UnsupportedFeature,
                  "'" + head.text + "' is outside the STRIPS fragment", head.pos);
    Atom a;
    a.pred = ident("predicate name");
    while (!at(TokenKind::RParen)) {
      const Token& t = next();
      if (t.kind == TokenKind::Identifier) {
        a.args.push_back(t.text);
      } else if (t.kind == TokenKind::Variable) {
        if (!allow_vars)
          throw Error(ErrKind::SyntaxError, "variable in a ground atom", t.pos);
        a.args.push_back("?" + t.text);
      } else {
        throw Error(ErrKind::SyntaxError, "expected an atom argument", t.pos);
      }
    }
    expect(TokenKind::RParen);
    return a;
  }

  Atom ground_atom() {
    expect(TokenKind::LParen);
    return literal_body(/*allow_negation=*/false, /*allow_vars=*/false);
  }

  // --- static validation -------------------------------------------------

  void validate_domain(const DomainAst& d) {
    std::unordered_map<std::string, std::string> parent;
    parent["object"] = "";
    for (const TypedName& t : d.types) {
      if (t.name == "object")
        throw Error(ErrKind::SyntaxError, "'object' cannot be redeclared");
      parent[t.name] = t.type;
    }
    for (const TypedName& t : d.types) {
      // walk the chain; a cycle revisits a name before reaching the root
      std::unordered_set<std::string> seen;
      std::string cur = t.name;
      while (cur != "object" && !cur.empty()) {
        if (!seen.insert(cur).second)
          throw Error(ErrKind::SyntaxError, "type cycle through '" + cur + "'");
        auto it = parent.find(cur);
        if (it == parent.end()) {
          // parent type never declared: treat as a root under object
          parent[cur] = "object";
          break;
        }
        cur = it->second;
      }
    }

    std::unordered_map<std::string, std::size_t> arity;
    for (const PredicateDecl& pd : d.predicates) arity[pd.name] = pd.params.size();

    for (const ActionSchema& a : d.actions) {
      std::unordered_set<std::string> vars;
      for (const TypedName& p : a.params) vars.insert(p.name);
      auto check = [&](const Atom& atom, bool effect) {
        auto it = arity.find(atom.pred);
        if (it == arity.end())
          throw Error(ErrKind::UndeclaredPredicate,
                      "undeclared predicate '" + atom.pred + "' in action '" +
                          a.name + "'");
        if (it->second != atom.args.size())
          throw Error(ErrKind::ArityMismatch,
                      "predicate '" + atom.pred + "' used with " +
                          std::to_string(atom.args.size()) + " arguments, declared " +
                          std::to_string(it->second));
        for (const std::string& arg : atom.args) {
          if (!arg.empty() && arg[0] == '?' && !vars.count(arg.substr(1)))
            throw Error(ErrKind::SyntaxError,
                        "variable '" + arg + "' is not a parameter of '" + a.name +
                            "'");
        }
        (void)effect;
      };
      for (const Atom& atom : a.precond) check(atom, false);
      for (const Atom& atom : a.effects) check(atom, true);
    }
  }

  void validate_problem(ProblemAst& p) {
    std::unordered_set<std::string> objs;
    for (const TypedName& o : p.objects) objs.insert(o.name);
    auto check = [&](const Atom& atom) {
      for (const std::string& arg : atom.args)
        if (!objs.count(arg))
          throw Error(ErrKind::UnknownObjectInAtom,
                      "atom (" + atom.pred + " ...) names unknown object '" + arg +
                          "'");
    };
    for (const Atom& a : p.init) check(a);
    for (const Atom& a : p.goal) check(a);
    dedup(p.init);
    dedup(p.goal);
  }

  static void dedup(std::vector<Atom>& atoms) {
    std::vector<Atom> out;
    for (const Atom& a : atoms)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    atoms = std::move(out);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print_typed(std::ostringstream& os, const std::vector<TypedName>& list,
                 bool variables) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) os << ' ';
    if (variables) os << '?';
    os << list[i].name << " - " << list[i].type;
  }
}

void print_atom(std::ostringstream& os, const Atom& a) {
  if (a.negated) os << "(not ";
  os << '(' << a.pred;
  for (const std::string& arg : a.args) os << ' ' << arg;
  os << ')';
  if (a.negated) os << ')';
}

void print_conj(std::ostringstream& os, const std::vector<Atom>& atoms) {
  os << "(and";
  for (const Atom& a : atoms) {
    os << ' ';
    print_atom(os, a);
  }
  os << ')';
}

}  // namespace

DomainAst parse_domain(std::string_view text) { return Parser(text).domain(); }
ProblemAst parse_problem(std::string_view text) { return Parser(text).problem(); }

std::string print_domain(const DomainAst& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  os << "  (:requirements :strips :typing)\n";
  if (!d.types.empty()) {
    os << "  (:types ";
    print_typed(os, d.types, false);
    os << ")\n";
  }
  os << "  (:predicates";
  for (const PredicateDecl& pd : d.predicates) {
    os << " (" << pd.name;
    if (!pd.params.empty()) {
      os << ' ';
      print_typed(os, pd.params, true);
    }
    os << ')';
  }
  os << ")\n";
  for (const ActionSchema& a : d.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    print_typed(os, a.params, true);
    os << ")\n    :precondition ";
    print_conj(os, a.precond);
    os << "\n    :effect ";
    print_conj(os, a.effects);
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_problem(const ProblemAst& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n  (:domain " << p.domain_name << ")\n";
  os << "  (:objects ";
  print_typed(os, p.objects, false);
  os << ")\n  (:init";
  for (const Atom& a : p.init) {
    os << ' ';
    print_atom(os, a);
  }
  os << ")\n  (:goal ";
  print_conj(os, p.goal);
  os << "))\n";
  return os.str();
}

}  // namespace plankit::pddl

namespace plankit {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::IllegalCharacter: return "IllegalCharacter";
    case ErrKind::SyntaxError: return "SyntaxError";
    case ErrKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrKind::UndeclaredPredicate: return "UndeclaredPredicate";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::UnknownObjectInAtom: return "UnknownObjectInAtom";
    case ErrKind::TypeMismatch: return "TypeMismatch";
    case ErrKind::GoalAtomUngroundable: return "GoalAtomUngroundable";
    case ErrKind::PreconditionUnsatisfied: return "PreconditionUnsatisfied";
    case ErrKind::RelaxedGraphRejected: return "RelaxedGraphRejected";
    case ErrKind::NotEnabled: return "NotEnabled";
    case ErrKind::GoalAbsent: return "GoalAbsent";
    case ErrKind::PlanFormat: return "PlanFormat";
    case ErrKind::Io: return "Io";
    case ErrKind::Usage: return "Usage";
  }
  return "?";
}

}  // namespace plankit
