#ifndef DLW_TRANSLATE_HPP
#define DLW_TRANSLATE_HPP

#include <map>
#include <optional>
#include <vector>

#include "dlw/semantics.hpp"

namespace dlw {

/// Ledger of atoms introduced by a translation. All entries are disjoint from
/// the source alphabet and from each other.
struct FreshVars {
  std::optional<Atom> a;
  std::optional<Atom> b;
  std::vector<Atom> z;
  std::vector<Atom> k;
  std::map<Atom, Atom> primed;                // X -> X'
  std::vector<std::map<Atom, Atom>> indexed;  // X -> X_i, one map per source default

  AtomSet all() const;
};

struct TranslatedTheory {
  DefaultTheory theory;
  FreshVars fresh;
  AtomSet source_vars;
};

/// Result of a translation: a theory plus its fresh-variable ledger, or the
/// distinguished bottom marker for extensionless inputs.
class TranslationResult {
 public:
  static TranslationResult bottom() { return TranslationResult(std::nullopt); }
  static TranslationResult of(TranslatedTheory t) { return TranslationResult(std::move(t)); }

  bool is_bottom() const { return !value_.has_value(); }
  const TranslatedTheory& get() const&;
  TranslatedTheory get() &&;

 private:
  explicit TranslationResult(std::optional<TranslatedTheory> v) : value_(std::move(v)) {}
  std::optional<TranslatedTheory> value_;
};

/// Two-level quantified boolean formula ∃X ∀Y . F, optionally with a free
/// block Z that the generators treat as assignment variables.
struct Qbf2 {
  AtomSet x_vars;
  AtomSet y_vars;
  AtomSet z_vars;
  Formula matrix;
};

/// Validity of ∃X ∀Y . matrix (Z must be empty). Decided by enumerating X
/// assignments and delegating the universal check to the decision backend.
bool qbf2_valid(const Qbf2& q);

/// Validity of ∃X ∀Y . matrix with the free variables fixed to `omega_z`.
bool qbf2_valid_under(const Qbf2& q, const std::map<Atom, bool>& omega_z);

/// Number of Z assignments whose restriction makes the formula valid.
std::size_t qbf2_count_valid_assignments(const Qbf2& q);

struct TranslateOptions {
  /// Check that the supplied formula is equivalent to the generator of some
  /// strongest extension of the source theory before translating.
  bool verify_strongest = true;
  EnumerationOptions enumeration;
};

/// Seminormalization: every default alpha:beta/gamma becomes
/// alpha:(beta&gamma)/gamma. Constrained extensions of the source equal the
/// rational extensions of the target. Never bottom.
TranslationResult t_cr(const DefaultTheory& theory);

/// Per-justification alphabets: justified extensions of the source are in
/// var-equivalent bijection with the constrained extensions of the target.
/// Never bottom.
TranslationResult t_jc(const DefaultTheory& theory);

/// Rational-to-constrained translation given a strongest rational extension
/// `strongest` (a formula over the source alphabet). Passing nullopt asserts
/// that the source has no rational extension and yields bottom.
TranslationResult t_rc(const DefaultTheory& theory, const std::optional<Formula>& strongest,
                       const TranslateOptions& options = {});

/// Reiter-to-justified translation given a strongest Reiter extension;
/// nullopt yields bottom as in t_rc.
TranslationResult t_rj(const DefaultTheory& theory, const std::optional<Formula>& strongest,
                       const TranslateOptions& options = {});

/// Guards every default with a fresh atom so the target is guaranteed the
/// extra extension Cn(a) besides the source extensions extended by !a.
TranslationResult add_known_extension(const DefaultTheory& theory);

/// Disjoint union of two theories with empty backgrounds, switched by a fresh
/// selector atom b.
TranslationResult combine_with_selector(const DefaultTheory& first, const DefaultTheory& second);

/// Theory with one rational extension iff ∃X ∀Y . F is valid (Z empty).
DefaultTheory gen_sigma2_rational(const Qbf2& q);

/// Theory whose rational and constrained extensions are !a&!b and, iff the
/// formula is valid, !a&b (Z empty).
DefaultTheory gen_one_or_two(const Qbf2& q);

/// Theory with one extension per Z assignment plus one more per valid
/// restriction, under both rational and constrained semantics.
DefaultTheory gen_assignment(const Qbf2& q);

}  // namespace dlw

#endif
