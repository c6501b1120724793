#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace dlw::testing {

bool tt_eval(Formula f, const std::map<Atom, bool>& assignment) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Var:
      return assignment.at(f.atom());
    case Formula::Kind::Not:
      return !tt_eval(f.lhs(), assignment);
    case Formula::Kind::And:
      return tt_eval(f.lhs(), assignment) && tt_eval(f.rhs(), assignment);
    case Formula::Kind::Or:
      return tt_eval(f.lhs(), assignment) || tt_eval(f.rhs(), assignment);
    case Formula::Kind::Implies:
      return !tt_eval(f.lhs(), assignment) || tt_eval(f.rhs(), assignment);
    case Formula::Kind::Iff:
      return tt_eval(f.lhs(), assignment) == tt_eval(f.rhs(), assignment);
  }
  return false;
}

namespace {

std::vector<Atom> collect_vars(const FormulaSet& fs) {
  AtomSet all;
  for (Formula f : fs) all.insert(f.vars().begin(), f.vars().end());
  return {all.begin(), all.end()};
}

template <typename Fn>
void for_each_assignment(const std::vector<Atom>& vars, Fn fn) {
  for (std::size_t bits = 0; bits < (std::size_t{1} << vars.size()); ++bits) {
    std::map<Atom, bool> assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      assignment.emplace(vars[i], (bits >> i) & 1);
    }
    fn(assignment);
  }
}

}  // namespace

bool tt_sat(const FormulaSet& fs) {
  bool found = false;
  for_each_assignment(collect_vars(fs), [&](const std::map<Atom, bool>& assignment) {
    if (found) return;
    for (Formula f : fs) {
      if (!tt_eval(f, assignment)) return;
    }
    found = true;
  });
  return found;
}

bool tt_entails(const FormulaSet& fs, Formula goal) {
  FormulaSet all = fs;
  all.push_back(goal);
  bool violated = false;
  for_each_assignment(collect_vars(all), [&](const std::map<Atom, bool>& assignment) {
    if (violated) return;
    for (Formula f : fs) {
      if (!tt_eval(f, assignment)) return;
    }
    if (!tt_eval(goal, assignment)) violated = true;
  });
  return !violated;
}

bool tt_equivalent(Formula a, Formula b) {
  bool differ = false;
  for_each_assignment(collect_vars({a, b}), [&](const std::map<Atom, bool>& assignment) {
    if (tt_eval(a, assignment) != tt_eval(b, assignment)) differ = true;
  });
  return !differ;
}

bool tt_var_equivalent(Formula a, Formula b, const AtomSet& xs) {
  std::vector<Atom> all = collect_vars({a, b});
  std::vector<Atom> shared;
  for (const Atom& atom : all) {
    if (xs.count(atom)) shared.push_back(atom);
  }
  std::set<std::vector<bool>> proj_a, proj_b;
  for_each_assignment(all, [&](const std::map<Atom, bool>& assignment) {
    std::vector<bool> key;
    key.reserve(shared.size());
    for (const Atom& atom : shared) key.push_back(assignment.at(atom));
    if (tt_eval(a, assignment)) proj_a.insert(key);
    if (tt_eval(b, assignment)) proj_b.insert(key);
  });
  return proj_a == proj_b;
}

bool tt_qbf_valid(const Qbf2& q, const std::map<Atom, bool>& omega_z) {
  std::vector<Atom> xs(q.x_vars.begin(), q.x_vars.end());
  std::vector<Atom> ys(q.y_vars.begin(), q.y_vars.end());
  bool exists = false;
  for_each_assignment(xs, [&](const std::map<Atom, bool>& wx) {
    if (exists) return;
    bool holds_for_all = true;
    for_each_assignment(ys, [&](const std::map<Atom, bool>& wy) {
      if (!holds_for_all) return;
      std::map<Atom, bool> full = omega_z;
      full.insert(wx.begin(), wx.end());
      full.insert(wy.begin(), wy.end());
      if (!tt_eval(q.matrix, full)) holds_for_all = false;
    });
    if (holds_for_all) exists = true;
  });
  return exists;
}

std::size_t tt_qbf_count_valid(const Qbf2& q) {
  std::vector<Atom> zs(q.z_vars.begin(), q.z_vars.end());
  std::size_t count = 0;
  for_each_assignment(zs, [&](const std::map<Atom, bool>& wz) {
    if (tt_qbf_valid(q, wz)) ++count;
  });
  return count;
}

namespace {

void all_sequences(std::size_t n, Process& current, std::vector<bool>& used,
                   std::vector<Process>& out) {
  out.push_back(current);
  for (std::size_t d = 0; d < n; ++d) {
    if (used[d]) continue;
    used[d] = true;
    current.push_back(d);
    all_sequences(n, current, used, out);
    current.pop_back();
    used[d] = false;
  }
}

}  // namespace

std::vector<Process> unpruned_selected_processes(const DefaultTheory& theory, SemanticsId sem) {
  std::size_t n = theory.defaults().size();
  Process current;
  std::vector<bool> used(n, false);
  std::vector<Process> sequences;
  all_sequences(n, current, used, sequences);

  std::vector<Process> out;
  for (const Process& p : sequences) {
    if (is_process(theory, p) && is_successful(theory, p, sem) && is_closed(theory, p, sem)) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<Process> unpruned_successful_processes(const DefaultTheory& theory, SemanticsId sem) {
  std::size_t n = theory.defaults().size();
  Process current;
  std::vector<bool> used(n, false);
  std::vector<Process> sequences;
  all_sequences(n, current, used, sequences);

  std::vector<Process> out;
  for (const Process& p : sequences) {
    if (is_process(theory, p) && is_successful(theory, p, sem)) out.push_back(p);
  }
  return out;
}

namespace {

FormulaSet o_with_cons(const DefaultTheory& t, const Process& p) {
  FormulaSet fs = t.background();
  for (std::size_t i : p) fs.push_back(t.defaults()[i].cons);
  return fs;
}

bool o_process(const DefaultTheory& t, const Process& p) {
  FormulaSet sofar = t.background();
  for (std::size_t i : p) {
    if (!tt_entails(sofar, t.defaults()[i].prec)) return false;
    sofar.push_back(t.defaults()[i].cons);
  }
  return tt_sat(sofar);
}

bool o_success(const DefaultTheory& t, const Process& p, SemanticsId sem) {
  FormulaSet base = o_with_cons(t, p);
  if (uses_global_success(sem)) {
    for (std::size_t i : p) base.push_back(t.defaults()[i].just);
    return tt_sat(base);
  }
  for (std::size_t i : p) {
    FormulaSet one = base;
    one.push_back(t.defaults()[i].just);
    if (!tt_sat(one)) return false;
  }
  return true;
}

bool o_closed(const DefaultTheory& t, const Process& p, SemanticsId sem) {
  for (std::size_t d = 0; d < t.defaults().size(); ++d) {
    if (std::find(p.begin(), p.end(), d) != p.end()) continue;
    if (uses_maximality_closure(sem)) {
      Process ext = p;
      ext.push_back(d);
      if (o_process(t, ext) && o_success(t, ext, sem)) return false;
    } else {
      FormulaSet base = o_with_cons(t, p);
      if (!tt_entails(base, t.defaults()[d].prec)) continue;
      if (sem == SemanticsId::Rational) {
        for (std::size_t i : p) base.push_back(t.defaults()[i].just);
      }
      base.push_back(t.defaults()[d].just);
      if (tt_sat(base)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Process> tt_selected_processes(const DefaultTheory& theory, SemanticsId sem) {
  std::size_t n = theory.defaults().size();
  Process current;
  std::vector<bool> used(n, false);
  std::vector<Process> sequences;
  all_sequences(n, current, used, sequences);

  std::vector<Process> out;
  for (const Process& p : sequences) {
    if (o_process(theory, p) && o_success(theory, p, sem) && o_closed(theory, p, sem)) {
      out.push_back(p);
    }
  }
  return out;
}

Formula random_formula(std::mt19937& rng, const RandomFormulaOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(options.atoms.size()) - 1);
  if (options.max_depth == 0 || options.atoms.empty()) {
    if (options.atoms.empty() || unit(rng) < options.constant_weight) {
      return Formula::constant(unit(rng) < 0.5);
    }
    return Formula::var(options.atoms[pick_atom(rng)]);
  }
  std::uniform_int_distribution<int> pick_shape(0, 6);
  RandomFormulaOptions sub = options;
  sub.max_depth = options.max_depth - 1;
  switch (pick_shape(rng)) {
    case 0:
      return Formula::negation(random_formula(rng, sub));
    case 1:
      return Formula::conjunction(random_formula(rng, sub), random_formula(rng, sub));
    case 2:
      return Formula::disjunction(random_formula(rng, sub), random_formula(rng, sub));
    case 3:
      return Formula::implication(random_formula(rng, sub), random_formula(rng, sub));
    case 4:
      return Formula::biconditional(random_formula(rng, sub), random_formula(rng, sub));
    default: {
      sub.max_depth = 0;
      return random_formula(rng, sub);
    }
  }
}

DefaultTheory random_theory(std::mt19937& rng, const RandomTheoryOptions& options) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u"};
  std::uniform_int_distribution<int> natoms(1, options.max_atoms);
  std::uniform_int_distribution<int> ndefaults(1, options.max_defaults);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  RandomFormulaOptions fopt;
  int n = natoms(rng);
  for (int i = 0; i < n; ++i) fopt.atoms.push_back(Atom{kNames[i]});
  fopt.max_depth = options.max_depth;

  FormulaSet background;
  if (unit(rng) < options.background_probability) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      Formula w = random_formula(rng, fopt);
      if (tt_sat({w})) {
        background.push_back(w);
        break;
      }
    }
  }

  std::vector<Default> defaults;
  int m = ndefaults(rng);
  for (int i = 0; i < m; ++i) {
    defaults.push_back(Default{random_formula(rng, fopt), random_formula(rng, fopt),
                               random_formula(rng, fopt), std::nullopt});
  }
  AtomSet declared(fopt.atoms.begin(), fopt.atoms.end());
  return DefaultTheory(std::move(defaults), std::move(background), std::move(declared));
}

Qbf2 random_qbf(std::mt19937& rng, std::size_t nx, std::size_t ny, std::size_t nz) {
  Qbf2 q{{}, {}, {}, Formula::constant(true)};
  RandomFormulaOptions fopt;
  for (std::size_t i = 1; i <= nx; ++i) {
    Atom atom{"x" + std::to_string(i)};
    q.x_vars.insert(atom);
    fopt.atoms.push_back(atom);
  }
  for (std::size_t i = 1; i <= ny; ++i) {
    Atom atom{"y" + std::to_string(i)};
    q.y_vars.insert(atom);
    fopt.atoms.push_back(atom);
  }
  for (std::size_t i = 1; i <= nz; ++i) {
    Atom atom{"z" + std::to_string(i)};
    q.z_vars.insert(atom);
    fopt.atoms.push_back(atom);
  }
  fopt.max_depth = 3;
  q.matrix = random_formula(rng, fopt);
  return q;
}

}  // namespace dlw::testing
