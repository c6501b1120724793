#include "dlw/faithful.hpp"


#include "dlw/errors.hpp"

namespace dlw {

bool ProcessOrder::operator()(const Process& lhs, const Process& rhs) const {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
  }
  return false;
}

std::vector<Extension> strongest_extensions(const DefaultTheory& theory, SemanticsId sem,
                                            const EnumerationOptions& options) {
  std::vector<Extension> all = extensions(theory, sem, options);
  std::vector<Formula> conjs;
  conjs.reserve(all.size());
  for (const Extension& e : all) conjs.push_back(generator_formula(e));

  std::vector<Extension> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool strongest = true;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      // Extensions are pairwise non-equivalent, so entailment means strict
      // strengthening.
      if (entails({conjs[j]}, conjs[i])) {
        strongest = false;
        break;
      }
    }
    if (strongest) out.push_back(all[i]);
  }
  return out;
}

FaithfulReport match_extensions(const std::vector<Extension>& src,
                                const std::vector<Extension>& tgt, const AtomSet& xs) {
  FaithfulReport report;
  std::vector<Formula> src_conjs, tgt_conjs;
  for (const Extension& e : src) src_conjs.push_back(generator_formula(e));
  for (const Extension& e : tgt) tgt_conjs.push_back(generator_formula(e));

  std::vector<std::size_t> tgt_hits(tgt.size(), 0);
  bool all_sources_single = true;
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<std::size_t> matches;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      if (var_equivalent(src_conjs[i], tgt_conjs[j], xs)) {
        matches.push_back(j);
        ++tgt_hits[j];
      }
    }
    if (matches.empty()) report.unmatched_source.push_back(i);
    if (matches.size() != 1) all_sources_single = false;
    report.matching.emplace_back(i, std::move(matches));
  }
  bool all_targets_single = true;
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    if (tgt_hits[j] == 0) report.unmatched_target.push_back(j);
    if (tgt_hits[j] != 1) all_targets_single = false;
  }
  report.faithful = report.unmatched_source.empty() && report.unmatched_target.empty();
  report.bijective = report.faithful && all_sources_single && all_targets_single;
  return report;
}

FaithfulReport check_faithful(const DefaultTheory& src, SemanticsId src_sem,
                              const DefaultTheory& tgt, SemanticsId tgt_sem, const AtomSet& xs,
                              const EnumerationOptions& options) {
  for (const Atom& x : xs) {
    if (!src.vars().count(x))
      throw ContractError("comparison alphabet mentions '" + x.name +
                          "', which is not a source variable");
  }
  return match_extensions(extensions(src, src_sem, options), extensions(tgt, tgt_sem, options),
                          xs);
}

CountResult count_extensions(const DefaultTheory& theory, SemanticsId sem, std::size_t k,
                             const EnumerationOptions& options) {
  std::vector<Process> selected = selected_processes(theory, sem, options);
  std::vector<Formula> gens;
  gens.reserve(selected.size());
  for (const Process& p : selected) {
    FormulaSet generator = theory.background();
    for (std::size_t i : p) generator.push_back(theory.defaults()[i].cons);
    gens.push_back(conjoin_canonical(generator));
  }

  // Equivalence class per process; identical canonical conjunctions short-cut
  // the entailment checks.
  std::vector<std::size_t> cls(selected.size());
  std::vector<Formula> reps;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    std::size_t assigned = reps.size();
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (gens[i] == reps[c] || equivalent(gens[i], reps[c])) {
        assigned = c;
        break;
      }
    }
    if (assigned == reps.size()) reps.push_back(gens[i]);
    cls[i] = assigned;
  }

  // A process is counted when it is shortlex-minimal among the selected
  // processes generating an equivalent extension.
  ProcessOrder less;
  std::vector<const Process*> minimum(reps.size(), nullptr);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const Process*& m = minimum[cls[i]];
    if (m == nullptr || less(selected[i], *m)) m = &selected[i];
  }
  CountResult result;
  for (const Process* m : minimum) {
    if (m != nullptr) ++result.count;
  }
  result.geq = result.count >= k;
  return result;
}

}  // namespace dlw
