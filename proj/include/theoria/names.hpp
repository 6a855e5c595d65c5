#pragma once

#include <compare>
#include <optional>
#include <string>

namespace theoria {

// A declared or referenced identifier: alphanumeric (`U`, `bit_and`, `e2`),
// an operator symbol (`*`, `**`, `+'`), or a numeral identifier (`0`, `1`).
struct Name {
  std::string text;

  Name() = default;
  Name(std::string t) : text(std::move(t)) {}
  Name(const char* t) : text(t) {}

  auto operator<=>(const Name&) const = default;
  bool empty() const { return text.empty(); }
};

inline std::string to_string(const Name& n) { return n.text; }

// An operation reference in application/macro position: either a plain name
// or a record-qualified field such as `A.*` or `B.U`.
struct OpName {
  std::optional<Name> qualifier;
  Name name;

  OpName() = default;
  OpName(Name n) : name(std::move(n)) {}
  OpName(Name q, Name n) : qualifier(std::move(q)), name(std::move(n)) {}

  auto operator<=>(const OpName&) const = default;
  bool qualified() const { return qualifier.has_value(); }
};

inline std::string to_string(const OpName& op) {
  return op.qualifier ? op.qualifier->text + "." + op.name.text : op.name.text;
}

struct SourcePos {
  int line = 0;
  int col = 0;

  bool known() const { return line > 0; }
  auto operator<=>(const SourcePos&) const = default;
};

}  // namespace theoria
