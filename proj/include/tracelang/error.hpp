#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracelang {

enum class ErrorKind {
  ReflexivePair,
  UnknownLetter,
  DuplicateLetter,
  NoUpperBound,
  AlphabetMismatch,
  InvalidAutomaton,
  NotWeak,
  NotStabilized,
  NotTraceClosed,
  NotIDiamond,
  SizeLimit,
  FormulaTooDeep,
  MorphismNotOnTraces,
  NotLinked,
  NotAssociative,
  UnknownLocalState,
  BoundExceeded,
  ParseError,
  Usage,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ReflexivePair: return "ReflexivePair";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::DuplicateLetter: return "DuplicateLetter";
    case ErrorKind::NoUpperBound: return "NoUpperBound";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorKind::NotWeak: return "NotWeak";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NotTraceClosed: return "NotTraceClosed";
    case ErrorKind::NotIDiamond: return "NotIDiamond";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::FormulaTooDeep: return "FormulaTooDeep";
    case ErrorKind::MorphismNotOnTraces: return "MorphismNotOnTraces";
    case ErrorKind::NotLinked: return "NotLinked";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::UnknownLocalState: return "UnknownLocalState";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI) can dispatch on the case without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tracelang
