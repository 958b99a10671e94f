#ifndef PLANKIT_ERROR_HPP
#define PLANKIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plankit {

enum class ErrKind {
  IllegalCharacter,
  SyntaxError,
  UnsupportedFeature,
  UndeclaredPredicate,
  ArityMismatch,
  UnknownObjectInAtom,
  TypeMismatch,
  GoalAtomUngroundable,
  PreconditionUnsatisfied,
  RelaxedGraphRejected,
  NotEnabled,
  GoalAbsent,
  PlanFormat,
  Io,
  Usage,
};

const char* err_kind_name(ErrKind k);

// Everything the front end and the solvers can reject carries a kind and,
// for text inputs, the byte offset of the offending character.
class Error : public std::runtime_error {
public:
  static constexpr std::size_t no_pos = static_cast<std::size_t>(-1);

  Error(ErrKind kind, const std::string& what, std::size_t pos = no_pos)
      : std::runtime_error(what), kind(kind), pos(pos) {}

  ErrKind kind;
  std::size_t pos;
};

}  // namespace plankit

#endif
