#ifndef DLW_FORMULA_HPP
#define DLW_FORMULA_HPP

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dlw {

/// A propositional variable. Names follow [A-Za-z_][A-Za-z0-9_']* and are
/// compared case-sensitively.
struct Atom {
  std::string name;

  auto operator<=>(const Atom&) const = default;
};

using AtomSet = std::set<Atom>;

bool is_valid_atom_name(std::string_view name);

namespace detail {
struct Node;
}

/// Immutable propositional formula. Handles are cheap values backed by a
/// hash-consed node pool, so structural equality is pointer equality.
/// Constructors perform no simplification; see simplify() for constant folding.
class Formula {
 public:
  enum class Kind : unsigned char { True, False, Var, Not, And, Or, Implies, Iff };

  static Formula constant(bool value);
  static Formula var(Atom atom);
  static Formula var(std::string_view name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);

  /// Left fold of conjunction; the empty span yields the constant true.
  static Formula conjoin_all(std::span<const Formula> fs);

  Kind kind() const;
  bool is_constant() const;
  bool is_true() const;
  bool is_false() const;

  /// Var only.
  const Atom& atom() const;
  /// Child accessors; lhs() is the operand of Not.
  Formula lhs() const;
  Formula rhs() const;

  /// Set of atoms occurring in the formula (shared, cached per node).
  const AtomSet& vars() const;

  std::size_t hash() const;

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

  const detail::Node* node() const { return node_; }

 private:
  explicit Formula(const detail::Node* node) : node_(node) {}
  const detail::Node* node_;
};

/// Deterministic total order on formulas (by shape, not by identity of the
/// underlying pool), usable for canonical sorting.
int structural_compare(Formula a, Formula b);
inline bool structural_less(Formula a, Formula b) { return structural_compare(a, b) < 0; }

/// Finite list of formulas read conjunctively. Order never affects the
/// decision operations below.
using FormulaSet = std::vector<Formula>;

/// Conjunction of a set in canonical member order, duplicates and "true"
/// members dropped. Equal sets produce the identical formula node.
Formula conjoin_canonical(const FormulaSet& fs);

/// Recursive constant folding; the only simplification the engine performs.
Formula simplify(Formula f);

/// Simultaneous substitution of formulas for atoms.
Formula substitute(Formula f, const std::map<Atom, Formula>& repl);

/// Renames every atom of `xs` occurring in `f` by appending `tag`.
/// Throws RenamingCollisionError if a renamed atom would clash with an atom
/// of `f` outside `xs`.
Formula substitute_alphabet(Formula f, const AtomSet& xs, const std::string& tag);

/// Satisfiability of the conjunction of `fs` (complete DPLL backend).
bool is_consistent(const FormulaSet& fs);

/// Every model of `fs` satisfies `goal`.
bool entails(const FormulaSet& fs, Formula goal);

/// Mutual entailment.
bool equivalent(Formula a, Formula b);

/// Existential elimination of `vs` by iterated Shannon expansion with
/// per-step constant folding. The result ranges over vars(f) minus `vs` and
/// has exactly the same consequences over that alphabet.
Formula forget(Formula f, const AtomSet& vs);

/// True iff `a` and `b` have the same consequences over formulas built from
/// `xs` alone.
bool var_equivalent(Formula a, Formula b, const AtomSet& xs);

}  // namespace dlw

#endif
