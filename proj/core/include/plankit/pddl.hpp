#ifndef PLANKIT_PDDL_HPP
#define PLANKIT_PDDL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "plankit/error.hpp"

namespace plankit::pddl {

enum class TokenKind { LParen, RParen, Keyword, Variable, Identifier, Dash, End };

struct Token {
  TokenKind kind;
  std::string text;  // keyword/variable text without the ':'/'?' sigil
  std::size_t pos;   // byte offset in the input
};

// Lexes the STRIPS+typing PDDL subset: parens, identifiers, :keywords,
// ?variables and stand-alone '-' type markers. ';' comments are stripped
// and ASCII letters are folded to lower case (identifiers are
// case-insensitive). Bytes >= 0x80 pass through, so UTF-8 names work.
std::vector<Token> tokenize(std::string_view text);

struct TypedName {
  std::string name;
  std::string type;  // "object" when the declaration left it implicit

  bool operator==(const TypedName&) const = default;
};

struct Atom {
  std::string pred;
  std::vector<std::string> args;  // ?variables keep their bare name
  bool negated = false;

  bool operator==(const Atom&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;

  bool operator==(const PredicateDecl&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Atom> precond;  // positive atoms only
  std::vector<Atom> effects;  // adds and deletes (negated = delete)

  bool operator==(const ActionSchema&) const = default;
};

struct DomainAst {
  std::string name;
  std::vector<TypedName> types;  // (type, parent) pairs; implicit root "object"
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;

  bool operator==(const DomainAst&) const = default;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Atom> goal;  // duplicates in the source are collapsed

  bool operator==(const ProblemAst&) const = default;
};

DomainAst parse_domain(std::string_view text);
ProblemAst parse_problem(std::string_view text);

std::string print_domain(const DomainAst& d);
std::string print_problem(const ProblemAst& p);

}  // namespace plankit::pddl

#endif
