#ifndef DLW_SEMANTICS_HPP
#define DLW_SEMANTICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dlw/formula.hpp"

namespace dlw {

/// Inference rule prec : just / cons. Exactly one justification formula.
struct Default {
  Formula prec;
  Formula just;
  Formula cons;
  std::optional<std::string> label;
};

/// The four operational semantics: a success notion (local or global
/// justification consistency) combined with a closure notion (inapplicability
/// or maximality).
enum class SemanticsId { Reiter, Justified, Rational, Constrained };

bool uses_global_success(SemanticsId sem);
bool uses_maximality_closure(SemanticsId sem);
std::string to_string(SemanticsId sem);
std::optional<SemanticsId> semantics_from_string(std::string_view name);

/// A finite list of defaults over a consistent background theory. The list
/// order is the canonical default ordering used by enumeration and counting;
/// `vars` is the declared alphabet, a superset of every occurring atom.
class DefaultTheory {
 public:
  DefaultTheory(std::vector<Default> defaults, FormulaSet background,
                std::optional<AtomSet> declared_vars = std::nullopt);

  const std::vector<Default>& defaults() const { return defaults_; }
  const FormulaSet& background() const { return background_; }
  const AtomSet& vars() const { return vars_; }

  /// Atoms occurring in the background or any default.
  AtomSet occurring_vars() const;

 private:
  std::vector<Default> defaults_;
  FormulaSet background_;
  AtomSet vars_;
};

/// Ordered, duplicate-free sequence of indices into a theory's default list.
using Process = std::vector<std::size_t>;

struct EnumerationOptions {
  std::size_t max_defaults = 8;
};

/// An extension carried by its finite generator W u cons(process), together
/// with one witness process.
struct Extension {
  FormulaSet generator;
  Process witness;
};

/// Extension paired with the justification set of the witness process. Two
/// double extensions are equal when the justification sets agree structurally
/// and the generators are logically equivalent.
struct DoubleExtension {
  std::vector<Formula> justs;  // sorted structurally, deduplicated
  FormulaSet generator;
  Process witness;
};

/// The process property: preconditions entailed stepwise and the consequence
/// set consistent with the background. Justifications are not consulted.
bool is_process(const DefaultTheory& theory, const Process& process);

/// Local success (Reiter, justified) checks each justification separately
/// against W u cons; global success (rational, constrained) checks them
/// jointly. Requires a process.
bool is_successful(const DefaultTheory& theory, const Process& process, SemanticsId sem);

/// Applicability of `d` (not in the process) under the semantics' closure
/// notion: consistency-based for inapplicability semantics, one-step success
/// for maximality semantics.
bool is_applicable(const DefaultTheory& theory, const Process& process, std::size_t d,
                   SemanticsId sem);

/// No default outside the process is applicable (inapplicability) or no
/// one-step extension is a successful process (maximality).
bool is_closed(const DefaultTheory& theory, const Process& process, SemanticsId sem);

/// All successful and closed processes, in lexicographic order of the
/// canonical default ordering (prefixes first).
std::vector<Process> selected_processes(const DefaultTheory& theory, SemanticsId sem,
                                        const EnumerationOptions& options = {});

/// One extension per class of selected-process generators, deduplicated by
/// mutual entailment of the generator conjunctions; first-witness order.
std::vector<Extension> extensions(const DefaultTheory& theory, SemanticsId sem,
                                  const EnumerationOptions& options = {});

std::vector<DoubleExtension> double_extensions(const DefaultTheory& theory, SemanticsId sem,
                                               const EnumerationOptions& options = {});

/// Conjunction of an extension generator in canonical order.
Formula generator_formula(const Extension& extension);

}  // namespace dlw

#endif
