#ifndef DLW_IO_HPP
#define DLW_IO_HPP

#include <string>
#include <vector>

#include "dlw/semantics.hpp"
#include "dlw/translate.hpp"

namespace dlw {

/// Parsed theory together with its source text and per-line locations for
/// diagnostics.
struct TheoryDocument {
  std::string source;
  DefaultTheory theory;
  std::vector<int> background_lines;  // line of each background conjunct
  std::vector<int> default_lines;     // line of each default
};

/// Formula concrete syntax: identifiers, `true`/`false`, `!`, `&`, `|`, `->`,
/// `<->`; precedence `!` > `&` > `|` > `->` > `<->`, implications
/// right-associative, parentheses allowed.
Formula parse_formula(const std::string& text);

/// Line-oriented theory files (`#` comments):
///   vars <atom> ...                          optional, once
///   w <formula>                              background conjunct
///   [<label>:] <prec?> : <just?> / <cons>    one default per line
/// Omitted preconditions and justifications default to `true`.
TheoryDocument parse_theory(const std::string& text);

/// `free <atoms> .`, `exists <atoms> .`, `forall <atoms> .` blocks (each
/// optional) followed by the matrix formula.
Qbf2 parse_qbf(const std::string& text);

std::string render_formula(Formula f);
std::string render_theory(const DefaultTheory& theory);

}  // namespace dlw

#endif
