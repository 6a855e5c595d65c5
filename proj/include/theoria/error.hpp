#pragma once

#include <stdexcept>
#include <string>

#include "theoria/names.hpp"

namespace theoria {

enum class ErrorKind {
  Lex,
  Parse,
  ForwardReference,
  InvalidRenaming,
  Capture,
  DuplicateName,
  UnresolvedSymbol,
  NoMorphism,
  AmbiguousMorphism,
  NameClash,
  BrokenArrow,
  UnknownMacro,
  ArityMismatch,
  NonOperationArgument,
  NotSingleSorted,
  ForeignSort,
  UnsupportedDeclaration,
  UnknownTheory,
  SortMismatch,
  UnknownName,
  Io,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::ForwardReference: return "ForwardReference";
    case ErrorKind::InvalidRenaming: return "InvalidRenaming";
    case ErrorKind::Capture: return "CaptureError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnresolvedSymbol: return "UnresolvedSymbol";
    case ErrorKind::NoMorphism: return "NoMorphism";
    case ErrorKind::AmbiguousMorphism: return "AmbiguousMorphism";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::BrokenArrow: return "BrokenArrow";
    case ErrorKind::UnknownMacro: return "UnknownMacro";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NonOperationArgument: return "NonOperationArgument";
    case ErrorKind::NotSingleSorted: return "NotSingleSorted";
    case ErrorKind::ForeignSort: return "ForeignSort";
    case ErrorKind::UnsupportedDeclaration: return "UnsupportedDeclaration";
    case ErrorKind::UnknownTheory: return "UnknownTheory";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourcePos pos = {})
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              SourcePos pos = {}) {
  throw Error(kind, message, pos);
}

}  // namespace theoria
