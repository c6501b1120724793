#include "dlw/translate.hpp"

#include <algorithm>
#include <string>

#include "dlw/errors.hpp"
#include "dlw/faithful.hpp"

namespace dlw {

AtomSet FreshVars::all() const {
  AtomSet out;
  if (a) out.insert(*a);
  if (b) out.insert(*b);
  out.insert(z.begin(), z.end());
  out.insert(k.begin(), k.end());
  for (const auto& [from, to] : primed) out.insert(to);
  for (const auto& m : indexed) {
    for (const auto& [from, to] : m) out.insert(to);
  }
  return out;
}

const TranslatedTheory& TranslationResult::get() const& {
  if (!value_) throw ContractError("translation result is bottom");
  return *value_;
}

TranslatedTheory TranslationResult::get() && {
  if (!value_) throw ContractError("translation result is bottom");
  return *std::move(value_);
}

namespace {

constexpr const char* kPrimeTag = "__p";

// Picks control-atom names, stepping past anything already reserved.
class FreshNamer {
 public:
  explicit FreshNamer(AtomSet reserved) : reserved_(std::move(reserved)) {}

  Atom next(const std::string& base) {
    Atom candidate{base};
    int suffix = 2;
    while (reserved_.count(candidate)) candidate.name = base + "_" + std::to_string(suffix++);
    reserved_.insert(candidate);
    return candidate;
  }

 private:
  AtomSet reserved_;
};

Formula background_conjunction(const DefaultTheory& theory) {
  return Formula::conjoin_all(theory.background());
}

std::map<Atom, Atom> alphabet_map(const AtomSet& xs, const std::string& tag) {
  std::map<Atom, Atom> out;
  for (const Atom& x : xs) out.emplace(x, Atom{x.name + tag});
  return out;
}

void check_over_alphabet(Formula e, const AtomSet& vars) {
  for (const Atom& atom : e.vars()) {
    if (!vars.count(atom))
      throw ContractError("extension formula mentions '" + atom.name +
                          "', which is outside the source alphabet");
  }
}

void verify_strongest_of(const DefaultTheory& theory, SemanticsId sem, Formula e,
                         const EnumerationOptions& options) {
  for (const Extension& ext : strongest_extensions(theory, sem, options)) {
    if (equivalent(e, generator_formula(ext))) return;
  }
  throw ContractError("formula is not equivalent to a strongest " + to_string(sem) +
                      " extension of the source theory");
}

Formula conj(Formula a, Formula b) { return Formula::conjunction(a, b); }
Formula neg(Formula a) { return Formula::negation(a); }
Formula imp(Formula a, Formula b) { return Formula::implication(a, b); }

}  // namespace

TranslationResult t_cr(const DefaultTheory& theory) {
  std::vector<Default> defaults;
  defaults.reserve(theory.defaults().size());
  for (const Default& d : theory.defaults()) {
    defaults.push_back(Default{d.prec, conj(d.just, d.cons), d.cons, d.label});
  }
  TranslatedTheory out{DefaultTheory(std::move(defaults), theory.background(), theory.vars()),
                       FreshVars{}, theory.vars()};
  return TranslationResult::of(std::move(out));
}

TranslationResult t_jc(const DefaultTheory& theory) {
  const AtomSet& xs = theory.vars();
  std::size_t m = theory.defaults().size();

  FreshVars fresh;
  std::vector<std::string> tags;
  for (std::size_t i = 1; i <= m; ++i) {
    tags.push_back("__c" + std::to_string(i));
    fresh.indexed.push_back(alphabet_map(xs, tags.back()));
  }

  FormulaSet background;
  if (!theory.background().empty()) {
    Formula wc = background_conjunction(theory);
    background.push_back(wc);
    for (const std::string& tag : tags) background.push_back(substitute_alphabet(wc, xs, tag));
  }

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < m; ++i) {
    const Default& d = theory.defaults()[i];
    Formula cons = d.cons;
    for (const std::string& tag : tags) cons = conj(cons, substitute_alphabet(d.cons, xs, tag));
    defaults.push_back(Default{d.prec, substitute_alphabet(d.just, xs, tags[i]), cons, d.label});
  }

  AtomSet target_vars = xs;
  for (const auto& map : fresh.indexed) {
    for (const auto& [from, to] : map) target_vars.insert(to);
  }
  TranslatedTheory out{DefaultTheory(std::move(defaults), std::move(background), target_vars),
                       std::move(fresh), xs};
  return TranslationResult::of(std::move(out));
}

namespace {

struct StrongestSetup {
  Formula e;
  FreshVars fresh;
  Formula a;
  std::vector<Formula> z;
  AtomSet target_vars;
};

StrongestSetup strongest_setup(const DefaultTheory& theory, Formula e, SemanticsId source_sem,
                               const TranslateOptions& options, bool with_b) {
  const AtomSet& xs = theory.vars();
  check_over_alphabet(e, xs);
  if (options.verify_strongest) verify_strongest_of(theory, source_sem, e, options.enumeration);

  StrongestSetup s{e, FreshVars{}, Formula::constant(true), {}, {}};
  s.fresh.primed = alphabet_map(xs, kPrimeTag);

  AtomSet reserved = xs;
  for (const auto& [from, to] : s.fresh.primed) reserved.insert(to);
  FreshNamer namer(std::move(reserved));
  s.fresh.a = namer.next("__a");
  s.a = Formula::var(*s.fresh.a);
  if (with_b) s.fresh.b = namer.next("__b");
  for (std::size_t i = 1; i <= theory.defaults().size(); ++i) {
    s.fresh.z.push_back(namer.next("__z" + std::to_string(i)));
    s.z.push_back(Formula::var(s.fresh.z.back()));
  }

  s.target_vars = xs;
  for (const Atom& atom : s.fresh.all()) s.target_vars.insert(atom);
  return s;
}

Formula prime(Formula f, const AtomSet& xs) { return substitute_alphabet(f, xs, kPrimeTag); }

Formula closing_precondition(const DefaultTheory& theory, Formula a,
                             const std::vector<Formula>& z) {
  FormulaSet parts;
  for (std::size_t i = 0; i < theory.defaults().size(); ++i) {
    parts.push_back(imp(imp(a, theory.defaults()[i].prec), z[i]));
  }
  return Formula::conjoin_all(parts);
}

}  // namespace

TranslationResult t_rc(const DefaultTheory& theory, const std::optional<Formula>& strongest,
                       const TranslateOptions& options) {
  if (!strongest) return TranslationResult::bottom();
  const AtomSet& xs = theory.vars();
  StrongestSetup s = strongest_setup(theory, *strongest, SemanticsId::Rational, options, true);
  Formula a = s.a;
  Formula b = Formula::var(*s.fresh.b);

  FormulaSet background;
  if (!theory.background().empty()) {
    Formula wc = background_conjunction(theory);
    background.push_back(imp(a, wc));
    background.push_back(prime(wc, xs));
  }

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < theory.defaults().size(); ++i) {
    const Default& d = theory.defaults()[i];
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{
        imp(a, d.prec),
        conj(prime(d.just, xs), prime(d.cons, xs)),
        conj(conj(s.z[i], imp(a, d.cons)), imp(b, d.just)),
        "e" + num,
    });
    defaults.push_back(Default{
        conj(imp(a, d.prec), imp(conj(a, b), neg(d.just))),
        Formula::constant(true),
        s.z[i],
        "n" + num,
    });
  }

  Formula g_cons = conj(a, neg(b));
  for (Formula zi : s.z) g_cons = conj(g_cons, zi);
  defaults.push_back(Default{closing_precondition(theory, a, s.z), conj(a, neg(s.e)), g_cons, "g"});

  Formula s_cons = conj(conj(neg(a), neg(b)), s.e);
  for (Formula zi : s.z) s_cons = conj(s_cons, zi);
  defaults.push_back(
      Default{Formula::constant(true), Formula::constant(true), s_cons, "s"});

  TranslatedTheory out{DefaultTheory(std::move(defaults), std::move(background), s.target_vars),
                       std::move(s.fresh), xs};
  return TranslationResult::of(std::move(out));
}

TranslationResult t_rj(const DefaultTheory& theory, const std::optional<Formula>& strongest,
                       const TranslateOptions& options) {
  if (!strongest) return TranslationResult::bottom();
  const AtomSet& xs = theory.vars();
  StrongestSetup s = strongest_setup(theory, *strongest, SemanticsId::Reiter, options, false);
  Formula a = s.a;

  FormulaSet background;
  if (!theory.background().empty()) {
    background.push_back(imp(a, background_conjunction(theory)));
  }

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < theory.defaults().size(); ++i) {
    const Default& d = theory.defaults()[i];
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{
        imp(a, d.prec),
        prime(d.just, xs),
        conj(s.z[i], imp(a, d.cons)),
        "e" + num,
    });
    defaults.push_back(Default{
        conj(imp(a, d.prec), imp(a, neg(d.just))),
        Formula::constant(true),
        s.z[i],
        "n" + num,
    });
  }

  Formula g_cons = a;
  for (const auto& [x, xp] : s.fresh.primed) {
    g_cons = conj(g_cons, Formula::biconditional(Formula::var(x), Formula::var(xp)));
  }
  for (Formula zi : s.z) g_cons = conj(g_cons, zi);
  defaults.push_back(Default{closing_precondition(theory, a, s.z), neg(s.e), g_cons, "g"});

  Formula s_cons = conj(neg(a), s.e);
  for (Formula zi : s.z) s_cons = conj(s_cons, zi);
  defaults.push_back(
      Default{Formula::constant(true), Formula::constant(true), s_cons, "s"});

  TranslatedTheory out{DefaultTheory(std::move(defaults), std::move(background), s.target_vars),
                       std::move(s.fresh), xs};
  return TranslationResult::of(std::move(out));
}

TranslationResult add_known_extension(const DefaultTheory& theory) {
  FreshNamer namer(theory.vars());
  FreshVars fresh;
  fresh.a = namer.next("__a");
  Formula a = Formula::var(*fresh.a);

  std::vector<Default> defaults;
  defaults.push_back(Default{Formula::constant(true), a, a, "pa"});
  defaults.push_back(Default{Formula::constant(true), neg(a), neg(a), "na"});
  for (const Default& d : theory.defaults()) {
    defaults.push_back(Default{conj(neg(a), d.prec), d.just, d.cons, d.label});
  }

  AtomSet target_vars = theory.vars();
  target_vars.insert(*fresh.a);
  TranslatedTheory out{DefaultTheory(std::move(defaults), theory.background(), target_vars),
                       std::move(fresh), theory.vars()};
  return TranslationResult::of(std::move(out));
}

TranslationResult combine_with_selector(const DefaultTheory& first, const DefaultTheory& second) {
  for (const DefaultTheory* t : {&first, &second}) {
    for (Formula w : t->background()) {
      if (!w.is_true())
        throw ContractError("selector combination requires empty background theories");
    }
  }

  AtomSet source_vars = first.vars();
  source_vars.insert(second.vars().begin(), second.vars().end());
  FreshNamer namer(source_vars);
  FreshVars fresh;
  fresh.b = namer.next("__b");
  Formula b = Formula::var(*fresh.b);

  std::vector<Default> defaults;
  defaults.push_back(Default{Formula::constant(true), b, b, "pb"});
  defaults.push_back(Default{Formula::constant(true), neg(b), neg(b), "nb"});
  for (const Default& d : first.defaults()) {
    defaults.push_back(Default{conj(b, d.prec), d.just, d.cons, d.label});
  }
  for (const Default& d : second.defaults()) {
    defaults.push_back(Default{conj(neg(b), d.prec), d.just, d.cons, d.label});
  }

  AtomSet target_vars = source_vars;
  target_vars.insert(*fresh.b);
  TranslatedTheory out{DefaultTheory(std::move(defaults), FormulaSet{}, target_vars),
                       std::move(fresh), source_vars};
  return TranslationResult::of(std::move(out));
}

namespace {

void validate_qbf(const Qbf2& q) {
  for (const Atom& x : q.x_vars) {
    if (q.y_vars.count(x) || q.z_vars.count(x))
      throw ContractError("quantifier blocks are not disjoint at '" + x.name + "'");
  }
  for (const Atom& y : q.y_vars) {
    if (q.z_vars.count(y))
      throw ContractError("quantifier blocks are not disjoint at '" + y.name + "'");
  }
  for (const Atom& atom : q.matrix.vars()) {
    if (!q.x_vars.count(atom) && !q.y_vars.count(atom) && !q.z_vars.count(atom))
      throw ContractError("matrix variable '" + atom.name + "' is not in any block");
  }
}

AtomSet qbf_vars(const Qbf2& q) {
  AtomSet out = q.x_vars;
  out.insert(q.y_vars.begin(), q.y_vars.end());
  out.insert(q.z_vars.begin(), q.z_vars.end());
  return out;
}

void require_empty_z(const Qbf2& q) {
  if (!q.z_vars.empty())
    throw ContractError("this construction requires an empty free block");
}

}  // namespace

bool qbf2_valid_under(const Qbf2& q, const std::map<Atom, bool>& omega_z) {
  validate_qbf(q);
  std::map<Atom, Formula> fix;
  for (const Atom& z : q.z_vars) {
    auto it = omega_z.find(z);
    if (it == omega_z.end())
      throw ContractError("assignment misses free variable '" + z.name + "'");
    fix.emplace(z, Formula::constant(it->second));
  }
  Formula restricted = substitute(q.matrix, fix);

  std::vector<Atom> xs(q.x_vars.begin(), q.x_vars.end());
  for (std::size_t bits = 0; bits < (std::size_t{1} << xs.size()); ++bits) {
    std::map<Atom, Formula> assign;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      assign.emplace(xs[i], Formula::constant((bits >> i) & 1));
    }
    Formula grounded = substitute(restricted, assign);
    if (!is_consistent({neg(grounded)})) return true;  // valid over Y
  }
  return false;
}

bool qbf2_valid(const Qbf2& q) {
  require_empty_z(q);
  return qbf2_valid_under(q, {});
}

std::size_t qbf2_count_valid_assignments(const Qbf2& q) {
  std::vector<Atom> zs(q.z_vars.begin(), q.z_vars.end());
  std::size_t count = 0;
  for (std::size_t bits = 0; bits < (std::size_t{1} << zs.size()); ++bits) {
    std::map<Atom, bool> omega;
    for (std::size_t i = 0; i < zs.size(); ++i) omega.emplace(zs[i], (bits >> i) & 1);
    if (qbf2_valid_under(q, omega)) ++count;
  }
  return count;
}

DefaultTheory gen_sigma2_rational(const Qbf2& q) {
  validate_qbf(q);
  require_empty_z(q);
  std::vector<Atom> xs(q.x_vars.begin(), q.x_vars.end());

  FreshNamer namer(qbf_vars(q));
  Formula a = Formula::var(namer.next("__a"));
  std::vector<Formula> z;
  for (std::size_t i = 1; i <= xs.size(); ++i) {
    z.push_back(Formula::var(namer.next("__z" + std::to_string(i))));
  }

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Formula xi = Formula::var(xs[i]);
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{Formula::constant(true), conj(xi, z[i]),
                               conj(z[i], imp(a, xi)), "px" + num});
    defaults.push_back(Default{Formula::constant(true), conj(neg(xi), z[i]),
                               conj(z[i], imp(a, neg(xi))), "nx" + num});
  }
  Formula all_z = Formula::conjoin_all(z);
  Formula close_prec = z.empty() ? imp(a, q.matrix) : conj(all_z, imp(a, q.matrix));
  defaults.push_back(Default{close_prec, Formula::constant(true), neg(a), "ca"});
  defaults.push_back(Default{all_z, a, Formula::constant(false), "fa"});

  AtomSet vars = qbf_vars(q);
  vars.insert(a.atom());
  for (Formula zi : z) vars.insert(zi.atom());
  return DefaultTheory(std::move(defaults), FormulaSet{}, std::move(vars));
}

DefaultTheory gen_one_or_two(const Qbf2& q) {
  validate_qbf(q);
  require_empty_z(q);
  std::vector<Atom> xs(q.x_vars.begin(), q.x_vars.end());

  FreshNamer namer(qbf_vars(q));
  Formula a = Formula::var(namer.next("__a"));
  Formula b = Formula::var(namer.next("__b"));

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Formula xi = Formula::var(xs[i]);
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{Formula::constant(true), xi, imp(a, xi), "px" + num});
    defaults.push_back(Default{Formula::constant(true), neg(xi), imp(a, neg(xi)), "nx" + num});
  }
  defaults.push_back(
      Default{imp(a, q.matrix), conj(neg(a), b), conj(neg(a), b), "fb"});
  defaults.push_back(Default{Formula::constant(true), conj(neg(a), neg(b)),
                             conj(neg(a), neg(b)), "nb"});

  AtomSet vars = qbf_vars(q);
  vars.insert(a.atom());
  vars.insert(b.atom());
  return DefaultTheory(std::move(defaults), FormulaSet{}, std::move(vars));
}

DefaultTheory gen_assignment(const Qbf2& q) {
  validate_qbf(q);
  std::vector<Atom> xs(q.x_vars.begin(), q.x_vars.end());
  std::vector<Atom> zs(q.z_vars.begin(), q.z_vars.end());

  FreshNamer namer(qbf_vars(q));
  Formula a = Formula::var(namer.next("__a"));
  Formula b = Formula::var(namer.next("__b"));
  std::vector<Formula> k;
  for (std::size_t i = 1; i <= zs.size(); ++i) {
    k.push_back(Formula::var(namer.next("__k" + std::to_string(i))));
  }
  Formula big_k = Formula::conjoin_all(k);

  std::vector<Default> defaults;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    Formula zi = Formula::var(zs[i]);
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{Formula::constant(true), conj(zi, k[i]), conj(zi, k[i]),
                               "pz" + num});
    defaults.push_back(Default{Formula::constant(true), conj(neg(zi), k[i]),
                               conj(neg(zi), k[i]), "nz" + num});
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Formula xi = Formula::var(xs[i]);
    std::string num = std::to_string(i + 1);
    defaults.push_back(Default{big_k, xi, imp(a, xi), "px" + num});
    defaults.push_back(Default{big_k, neg(xi), imp(a, neg(xi)), "nx" + num});
  }
  Formula fb_prec = zs.empty() ? imp(a, q.matrix) : conj(big_k, imp(a, q.matrix));
  defaults.push_back(Default{fb_prec, conj(neg(a), b), conj(neg(a), b), "fb"});
  defaults.push_back(Default{big_k, conj(neg(a), neg(b)), conj(neg(a), neg(b)), "nb"});

  AtomSet vars = qbf_vars(q);
  vars.insert(a.atom());
  vars.insert(b.atom());
  for (Formula ki : k) vars.insert(ki.atom());
  return DefaultTheory(std::move(defaults), FormulaSet{}, std::move(vars));
}

}  // namespace dlw
