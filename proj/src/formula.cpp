#include "dlw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "dlw/errors.hpp"
#include "dlw/sat.hpp"

namespace dlw {

bool is_valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  char c0 = name.front();
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (char c : name.substr(1)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return name != "true" && name != "false";
}

namespace detail {

struct Node {
  Formula::Kind kind;
  Atom atom;        // Var only
  const Node* a;    // operand / lhs
  const Node* b;    // rhs
  std::shared_ptr<const AtomSet> vars;
  std::size_t hash;
};

namespace {

struct NodeKey {
  Formula::Kind kind;
  std::string_view name;
  const Node* a;
  const Node* b;

  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = std::hash<std::string_view>{}(k.name);
    h = h * 31 + static_cast<std::size_t>(k.kind);
    h = h * 31 + std::hash<const void*>{}(k.a);
    h = h * 31 + std::hash<const void*>{}(k.b);
    return h;
  }
};

struct Pool {
  std::mutex mutex;
  std::deque<Node> nodes;
  std::unordered_map<NodeKey, const Node*, NodeKeyHash> index;
};

Pool& pool() {
  static Pool* p = new Pool();  // never destroyed; nodes live for the process
  return *p;
}

std::shared_ptr<const AtomSet> merge_vars(const Node* a, const Node* b) {
  if (!a) return std::make_shared<const AtomSet>();
  if (!b) return a->vars;
  const AtomSet& va = *a->vars;
  const AtomSet& vb = *b->vars;
  if (std::includes(va.begin(), va.end(), vb.begin(), vb.end())) return a->vars;
  if (std::includes(vb.begin(), vb.end(), va.begin(), va.end())) return b->vars;
  AtomSet merged = va;
  merged.insert(vb.begin(), vb.end());
  return std::make_shared<const AtomSet>(std::move(merged));
}

const Node* intern(Formula::Kind kind, Atom atom, const Node* a, const Node* b) {
  Pool& p = pool();
  std::scoped_lock lock(p.mutex);
  NodeKey key{kind, atom.name, a, b};
  if (auto it = p.index.find(key); it != p.index.end()) return it->second;

  Node node;
  node.kind = kind;
  node.atom = std::move(atom);
  node.a = a;
  node.b = b;
  if (kind == Formula::Kind::Var) {
    node.vars = std::make_shared<const AtomSet>(AtomSet{node.atom});
  } else {
    node.vars = merge_vars(a, b);
  }
  std::size_t h = NodeKeyHash{}(key);
  node.hash = h;
  p.nodes.push_back(std::move(node));
  const Node* stored = &p.nodes.back();
  p.index.emplace(NodeKey{kind, stored->atom.name, a, b}, stored);
  return stored;
}

}  // namespace
}  // namespace detail

using detail::Node;

Formula Formula::constant(bool value) {
  return Formula(detail::intern(value ? Kind::True : Kind::False, Atom{}, nullptr, nullptr));
}

Formula Formula::var(Atom atom) {
  if (!is_valid_atom_name(atom.name)) throw ContractError("invalid atom name: '" + atom.name + "'");
  return Formula(detail::intern(Kind::Var, std::move(atom), nullptr, nullptr));
}

Formula Formula::var(std::string_view name) { return var(Atom{std::string(name)}); }

Formula Formula::negation(Formula f) {
  return Formula(detail::intern(Kind::Not, Atom{}, f.node_, nullptr));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(detail::intern(Kind::And, Atom{}, lhs.node_, rhs.node_));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(detail::intern(Kind::Or, Atom{}, lhs.node_, rhs.node_));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(detail::intern(Kind::Implies, Atom{}, lhs.node_, rhs.node_));
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
  return Formula(detail::intern(Kind::Iff, Atom{}, lhs.node_, rhs.node_));
}

Formula Formula::conjoin_all(std::span<const Formula> fs) {
  if (fs.empty()) return constant(true);
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_constant() const { return kind() == Kind::True || kind() == Kind::False; }
bool Formula::is_true() const { return kind() == Kind::True; }
bool Formula::is_false() const { return kind() == Kind::False; }

const Atom& Formula::atom() const {
  if (kind() != Kind::Var) throw ContractError("atom() on a non-variable formula");
  return node_->atom;
}

Formula Formula::lhs() const {
  if (!node_->a) throw ContractError("lhs() on a leaf formula");
  return Formula(node_->a);
}

Formula Formula::rhs() const {
  if (!node_->b) throw ContractError("rhs() on a non-binary formula");
  return Formula(node_->b);
}

const AtomSet& Formula::vars() const { return *node_->vars; }

std::size_t Formula::hash() const { return node_->hash; }

int structural_compare(Formula a, Formula b) {
  if (a == b) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return 0;
    case Formula::Kind::Var:
      return a.atom().name.compare(b.atom().name) < 0 ? -1 : 1;
    case Formula::Kind::Not:
      return structural_compare(a.lhs(), b.lhs());
    default: {
      int c = structural_compare(a.lhs(), b.lhs());
      if (c != 0) return c;
      return structural_compare(a.rhs(), b.rhs());
    }
  }
}

Formula conjoin_canonical(const FormulaSet& fs) {
  FormulaSet sorted;
  sorted.reserve(fs.size());
  for (Formula f : fs) {
    if (!f.is_true()) sorted.push_back(f);
  }
  std::sort(sorted.begin(), sorted.end(), structural_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return Formula::conjoin_all(sorted);
}

namespace {

Formula simplify_impl(Formula f, std::unordered_map<const Node*, Formula>& memo) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  Formula result = f;
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Var:
      break;
    case Formula::Kind::Not: {
      Formula x = simplify_impl(f.lhs(), memo);
      if (x.is_true())
        result = Formula::constant(false);
      else if (x.is_false())
        result = Formula::constant(true);
      else
        result = Formula::negation(x);
      break;
    }
    case Formula::Kind::And: {
      Formula l = simplify_impl(f.lhs(), memo);
      Formula r = simplify_impl(f.rhs(), memo);
      if (l.is_false() || r.is_false())
        result = Formula::constant(false);
      else if (l.is_true())
        result = r;
      else if (r.is_true())
        result = l;
      else
        result = Formula::conjunction(l, r);
      break;
    }
    case Formula::Kind::Or: {
      Formula l = simplify_impl(f.lhs(), memo);
      Formula r = simplify_impl(f.rhs(), memo);
      if (l.is_true() || r.is_true())
        result = Formula::constant(true);
      else if (l.is_false())
        result = r;
      else if (r.is_false())
        result = l;
      else
        result = Formula::disjunction(l, r);
      break;
    }
    case Formula::Kind::Implies: {
      Formula l = simplify_impl(f.lhs(), memo);
      Formula r = simplify_impl(f.rhs(), memo);
      if (l.is_false() || r.is_true())
        result = Formula::constant(true);
      else if (l.is_true())
        result = r;
      else if (r.is_false())
        result = Formula::negation(l);
      else
        result = Formula::implication(l, r);
      break;
    }
    case Formula::Kind::Iff: {
      Formula l = simplify_impl(f.lhs(), memo);
      Formula r = simplify_impl(f.rhs(), memo);
      if (l.is_true())
        result = r;
      else if (r.is_true())
        result = l;
      else if (l.is_false())
        result = r.is_false() ? Formula::constant(true) : Formula::negation(r);
      else if (r.is_false())
        result = Formula::negation(l);
      else
        result = Formula::biconditional(l, r);
      break;
    }
  }
  memo.emplace(f.node(), result);
  return result;
}

Formula substitute_impl(Formula f, const std::map<Atom, Formula>& repl,
                        std::unordered_map<const Node*, Formula>& memo) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  Formula result = f;
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      break;
    case Formula::Kind::Var: {
      if (auto it = repl.find(f.atom()); it != repl.end()) result = it->second;
      break;
    }
    case Formula::Kind::Not:
      result = Formula::negation(substitute_impl(f.lhs(), repl, memo));
      break;
    case Formula::Kind::And:
      result = Formula::conjunction(substitute_impl(f.lhs(), repl, memo),
                                    substitute_impl(f.rhs(), repl, memo));
      break;
    case Formula::Kind::Or:
      result = Formula::disjunction(substitute_impl(f.lhs(), repl, memo),
                                    substitute_impl(f.rhs(), repl, memo));
      break;
    case Formula::Kind::Implies:
      result = Formula::implication(substitute_impl(f.lhs(), repl, memo),
                                    substitute_impl(f.rhs(), repl, memo));
      break;
    case Formula::Kind::Iff:
      result = Formula::biconditional(substitute_impl(f.lhs(), repl, memo),
                                      substitute_impl(f.rhs(), repl, memo));
      break;
  }
  memo.emplace(f.node(), result);
  return result;
}

}  // namespace

Formula simplify(Formula f) {
  std::unordered_map<const Node*, Formula> memo;
  return simplify_impl(f, memo);
}

Formula substitute(Formula f, const std::map<Atom, Formula>& repl) {
  if (repl.empty()) return f;
  std::unordered_map<const Node*, Formula> memo;
  return substitute_impl(f, repl, memo);
}

Formula substitute_alphabet(Formula f, const AtomSet& xs, const std::string& tag) {
  std::map<Atom, Formula> repl;
  for (const Atom& x : xs) {
    if (!f.vars().count(x)) continue;
    Atom renamed{x.name + tag};
    if (!is_valid_atom_name(renamed.name))
      throw ContractError("renaming tag produces invalid atom name: '" + renamed.name + "'");
    if (f.vars().count(renamed) && !xs.count(renamed))
      throw RenamingCollisionError("renaming " + x.name + " to " + renamed.name +
                                   " collides with an existing atom");
    repl.emplace(x, Formula::var(renamed));
  }
  return substitute(f, repl);
}

namespace {

// Consistency results are memoized on the canonicalized member set; interned
// nodes make the key stable and the lookup cheap.
struct ConsistencyCache {
  std::mutex mutex;
  std::unordered_map<std::size_t, std::vector<std::pair<std::vector<const Node*>, bool>>> buckets;

  bool lookup(const std::vector<const Node*>& key, std::size_t h, bool& result) {
    std::scoped_lock lock(mutex);
    auto it = buckets.find(h);
    if (it == buckets.end()) return false;
    for (const auto& [k, v] : it->second) {
      if (k == key) {
        result = v;
        return true;
      }
    }
    return false;
  }

  void store(std::vector<const Node*> key, std::size_t h, bool result) {
    std::scoped_lock lock(mutex);
    buckets[h].emplace_back(std::move(key), result);
  }
};

ConsistencyCache& consistency_cache() {
  static ConsistencyCache* c = new ConsistencyCache();
  return *c;
}

}  // namespace

bool is_consistent(const FormulaSet& fs) {
  FormulaSet members;
  members.reserve(fs.size());
  for (Formula f : fs) {
    if (f.is_true()) continue;
    if (f.is_false()) return false;
    members.push_back(f);
  }
  std::sort(members.begin(), members.end(),
            [](Formula a, Formula b) { return a.node() < b.node(); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return true;

  std::vector<const Node*> key;
  key.reserve(members.size());
  for (Formula f : members) key.push_back(f.node());
  std::size_t h = 0;
  for (const Node* n : key) h = h * 1000003 + std::hash<const void*>{}(n);

  ConsistencyCache& cache = consistency_cache();
  bool cached = false;
  if (cache.lookup(key, h, cached)) return cached;

  bool result = sat::satisfiable(members);
  cache.store(std::move(key), h, result);
  return result;
}

bool entails(const FormulaSet& fs, Formula goal) {
  FormulaSet query = fs;
  query.push_back(Formula::negation(goal));
  return !is_consistent(query);
}

bool equivalent(Formula a, Formula b) {
  if (a == b) return true;
  return entails({a}, b) && entails({b}, a);
}

Formula forget(Formula f, const AtomSet& vs) {
  Formula g = simplify(f);
  AtomSet present;
  std::set_intersection(vs.begin(), vs.end(), f.vars().begin(), f.vars().end(),
                        std::inserter(present, present.end()));
  for (const Atom& v : present) {
    std::map<Atom, Formula> pos{{v, Formula::constant(true)}};
    std::map<Atom, Formula> neg{{v, Formula::constant(false)}};
    g = simplify(Formula::disjunction(substitute(g, pos), substitute(g, neg)));
  }
  return g;
}

bool var_equivalent(Formula a, Formula b, const AtomSet& xs) {
  if (a == b) return true;
  // Same consequences over xs == same projections of the model sets onto xs.
  // Enumerating the shared alphabet avoids materializing the forgotten
  // formulas, whose size is exponential in the number of dropped atoms.
  AtomSet relevant;
  for (const Atom& x : xs) {
    if (a.vars().count(x) || b.vars().count(x)) relevant.insert(x);
  }
  std::vector<Atom> order(relevant.begin(), relevant.end());
  std::size_t n = order.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    FormulaSet qa{a};
    FormulaSet qb{b};
    for (std::size_t i = 0; i < n; ++i) {
      Formula lit = Formula::var(order[i]);
      if (!((bits >> i) & 1)) lit = Formula::negation(lit);
      qa.push_back(lit);
      qb.push_back(lit);
    }
    if (is_consistent(qa) != is_consistent(qb)) return false;
  }
  return true;
}

}  // namespace dlw
