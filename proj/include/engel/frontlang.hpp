#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "engel/curves.hpp"
#include "engel/homotopy.hpp"

namespace engel {

struct GeneratorDecl {
  std::string name;
  SeriesDescription description;

  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

struct ScriptDecl {
  std::string name;
  MoveScript moves;

  friend bool operator==(const ScriptDecl&, const ScriptDecl&) = default;
};

/// Generators and scripts share one namespace.
struct Document {
  std::vector<GeneratorDecl> generators;
  std::vector<ScriptDecl> scripts;

  /// Throws UnknownName.
  const SeriesDescription& generator(std::string_view name) const;
  const MoveScript& script(std::string_view name) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws SyntaxError (with 1-based line and column), DuplicateName for a
/// repeated declaration or move parameter, UnknownMoveKind.
///
///   doc       := (generator | script)*
///   generator := "generator" NAME "{" "x" ":" series ";" "y" ":" series ";" "}"
///   series    := term ("+" term)*
///   term      := NUMBER? ("cos" | "sin") "(" INT ")" | NUMBER
///   script    := "script" NAME "{" (move ";")* "}"
///   move      := KIND (NAME "=" NUMBER)*
///
/// NUMBER is a decimal with optional sign and exponent, INT a harmonic in
/// 1..64.  '#' starts a comment running to the end of the line.
Document parse(std::string_view text);

/// Canonical text; parse(emit(d)) == d for every document parse can return.
std::string emit(const Document& doc);

}  // namespace engel
