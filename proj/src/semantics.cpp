#include "dlw/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "dlw/errors.hpp"

namespace dlw {

bool uses_global_success(SemanticsId sem) {
  return sem == SemanticsId::Rational || sem == SemanticsId::Constrained;
}

bool uses_maximality_closure(SemanticsId sem) {
  return sem == SemanticsId::Justified || sem == SemanticsId::Constrained;
}

std::string to_string(SemanticsId sem) {
  switch (sem) {
    case SemanticsId::Reiter:
      return "reiter";
    case SemanticsId::Justified:
      return "justified";
    case SemanticsId::Rational:
      return "rational";
    case SemanticsId::Constrained:
      return "constrained";
  }
  return "?";
}

std::optional<SemanticsId> semantics_from_string(std::string_view name) {
  if (name == "reiter") return SemanticsId::Reiter;
  if (name == "justified") return SemanticsId::Justified;
  if (name == "rational") return SemanticsId::Rational;
  if (name == "constrained") return SemanticsId::Constrained;
  return std::nullopt;
}

DefaultTheory::DefaultTheory(std::vector<Default> defaults, FormulaSet background,
                             std::optional<AtomSet> declared_vars)
    : defaults_(std::move(defaults)), background_(std::move(background)) {
  if (!is_consistent(background_)) throw ContractError("inconsistent background theory");
  AtomSet occurring;
  auto add = [&occurring](Formula f) { occurring.insert(f.vars().begin(), f.vars().end()); };
  for (Formula w : background_) add(w);
  for (const Default& d : defaults_) {
    add(d.prec);
    add(d.just);
    add(d.cons);
  }
  if (declared_vars) {
    for (const Atom& a : occurring) {
      if (!declared_vars->count(a))
        throw ContractError("atom '" + a.name + "' occurs but is not declared");
    }
    vars_ = std::move(*declared_vars);
  } else {
    vars_ = std::move(occurring);
  }
}

AtomSet DefaultTheory::occurring_vars() const {
  AtomSet occurring;
  auto add = [&occurring](Formula f) { occurring.insert(f.vars().begin(), f.vars().end()); };
  for (Formula w : background_) add(w);
  for (const Default& d : defaults_) {
    add(d.prec);
    add(d.just);
    add(d.cons);
  }
  return occurring;
}

namespace {

void check_indices(const DefaultTheory& theory, const Process& process) {
  for (std::size_t i : process) {
    if (i >= theory.defaults().size())
      throw ContractError("malformed process: default index " + std::to_string(i) +
                          " out of range");
  }
}

bool has_duplicates(const Process& process) {
  Process sorted = process;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

FormulaSet with_cons(const DefaultTheory& theory, const Process& process) {
  FormulaSet fs = theory.background();
  for (std::size_t i : process) fs.push_back(theory.defaults()[i].cons);
  return fs;
}

bool success_of(const DefaultTheory& theory, const Process& process, SemanticsId sem) {
  FormulaSet base = with_cons(theory, process);
  if (uses_global_success(sem)) {
    FormulaSet all = base;
    for (std::size_t i : process) all.push_back(theory.defaults()[i].just);
    return is_consistent(all);
  }
  for (std::size_t i : process) {
    FormulaSet one = base;
    one.push_back(theory.defaults()[i].just);
    if (!is_consistent(one)) return false;
  }
  return true;
}

bool process_property(const DefaultTheory& theory, const Process& process) {
  if (has_duplicates(process)) return false;
  FormulaSet sofar = theory.background();
  for (std::size_t i : process) {
    if (!entails(sofar, theory.defaults()[i].prec)) return false;
    sofar.push_back(theory.defaults()[i].cons);
  }
  return is_consistent(sofar);
}

// Applicability of d (not in the process) under the semantics' closure notion.
bool applicable_to(const DefaultTheory& theory, const Process& process, std::size_t d,
                   SemanticsId sem) {
  const Default& def = theory.defaults()[d];
  if (uses_maximality_closure(sem)) {
    Process extended = process;
    extended.push_back(d);
    return process_property(theory, extended) && success_of(theory, extended, sem);
  }
  FormulaSet base = with_cons(theory, process);
  if (!entails(base, def.prec)) return false;
  if (sem == SemanticsId::Rational) {
    for (std::size_t i : process) base.push_back(theory.defaults()[i].just);
  }
  base.push_back(def.just);
  return is_consistent(base);
}

bool closed_under(const DefaultTheory& theory, const Process& process, SemanticsId sem) {
  for (std::size_t d = 0; d < theory.defaults().size(); ++d) {
    if (std::find(process.begin(), process.end(), d) != process.end()) continue;
    if (applicable_to(theory, process, d, sem)) return false;
  }
  return true;
}

}  // namespace

bool is_process(const DefaultTheory& theory, const Process& process) {
  check_indices(theory, process);
  return process_property(theory, process);
}

bool is_successful(const DefaultTheory& theory, const Process& process, SemanticsId sem) {
  if (!is_process(theory, process)) throw ContractError("is_successful requires a process");
  return success_of(theory, process, sem);
}

bool is_applicable(const DefaultTheory& theory, const Process& process, std::size_t d,
                   SemanticsId sem) {
  check_indices(theory, process);
  if (d >= theory.defaults().size())
    throw ContractError("is_applicable: default index out of range");
  if (std::find(process.begin(), process.end(), d) != process.end())
    throw ContractError("is_applicable requires a default outside the process");
  return applicable_to(theory, process, d, sem);
}

bool is_closed(const DefaultTheory& theory, const Process& process, SemanticsId sem) {
  if (!is_process(theory, process)) throw ContractError("is_closed requires a process");
  return closed_under(theory, process, sem);
}

namespace {

struct Enumerator {
  const DefaultTheory& theory;
  SemanticsId sem;
  std::vector<Process> selected;
  Process current;
  std::vector<bool> used;

  Enumerator(const DefaultTheory& t, SemanticsId s)
      : theory(t), sem(s), used(t.defaults().size(), false) {}

  // Invariant: `current` is a successful process. Branches that violate the
  // process property or success are pruned, which is sound because success is
  // anti-monotone over prefixes.
  void explore() {
    std::size_t n = theory.defaults().size();
    std::vector<std::size_t> children;
    bool closed = true;
    for (std::size_t d = 0; d < n; ++d) {
      if (used[d]) continue;
      Process extended = current;
      extended.push_back(d);
      bool appendable =
          process_property(theory, extended) && success_of(theory, extended, sem);
      if (appendable) children.push_back(d);
      if (uses_maximality_closure(sem)) {
        if (appendable) closed = false;
      } else if (applicable_to(theory, current, d, sem)) {
        closed = false;
      }
    }
    if (closed) selected.push_back(current);
    for (std::size_t d : children) {
      current.push_back(d);
      used[d] = true;
      explore();
      used[d] = false;
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<Process> selected_processes(const DefaultTheory& theory, SemanticsId sem,
                                        const EnumerationOptions& options) {
  if (theory.defaults().size() > options.max_defaults)
    throw EnumerationBoundError("theory has " + std::to_string(theory.defaults().size()) +
                                " defaults, enumeration bound is " +
                                std::to_string(options.max_defaults));
  Enumerator e(theory, sem);
  e.explore();
  return e.selected;
}

Formula generator_formula(const Extension& extension) {
  return conjoin_canonical(extension.generator);
}

std::vector<Extension> extensions(const DefaultTheory& theory, SemanticsId sem,
                                  const EnumerationOptions& options) {
  std::vector<Extension> out;
  std::vector<Formula> keys;
  std::unordered_map<const detail::Node*, bool> seen;  // canonical conjunctions already placed
  for (const Process& p : selected_processes(theory, sem, options)) {
    FormulaSet generator = with_cons(theory, p);
    Formula key = conjoin_canonical(generator);
    if (seen.count(key.node())) continue;
    seen.emplace(key.node(), true);
    bool duplicate = false;
    for (Formula existing : keys) {
      if (equivalent(key, existing)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    keys.push_back(key);
    out.push_back(Extension{std::move(generator), p});
  }
  return out;
}

std::vector<DoubleExtension> double_extensions(const DefaultTheory& theory, SemanticsId sem,
                                               const EnumerationOptions& options) {
  std::vector<DoubleExtension> out;
  std::vector<Formula> keys;  // canonical generator conjunction per entry
  for (const Process& p : selected_processes(theory, sem, options)) {
    std::vector<Formula> justs;
    for (std::size_t i : p) justs.push_back(theory.defaults()[i].just);
    std::sort(justs.begin(), justs.end(), structural_less);
    justs.erase(std::unique(justs.begin(), justs.end()), justs.end());

    FormulaSet generator = with_cons(theory, p);
    Formula key = conjoin_canonical(generator);
    bool duplicate = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].justs == justs && (keys[i] == key || equivalent(keys[i], key))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    keys.push_back(key);
    out.push_back(DoubleExtension{std::move(justs), std::move(generator), p});
  }
  return out;
}

}  // namespace dlw
