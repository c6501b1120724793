#include "dlw/sat.hpp"

#include <unordered_map>
#include <vector>

namespace dlw::sat {

namespace {

// Literals are +v / -v with v >= 1.
using Clause = std::vector<int>;

struct CnfBuilder {
  std::unordered_map<const detail::Node*, int> ids;
  std::vector<Clause> clauses;
  int next_id = 1;

  int fresh() { return next_id++; }

  int encode(Formula f) {
    if (auto it = ids.find(f.node()); it != ids.end()) return it->second;
    int t = fresh();
    ids.emplace(f.node(), t);
    switch (f.kind()) {
      case Formula::Kind::True:
        clauses.push_back({t});
        break;
      case Formula::Kind::False:
        clauses.push_back({-t});
        break;
      case Formula::Kind::Var:
        break;
      case Formula::Kind::Not: {
        int x = encode(f.lhs());
        clauses.push_back({-t, -x});
        clauses.push_back({t, x});
        break;
      }
      case Formula::Kind::And: {
        int x = encode(f.lhs());
        int y = encode(f.rhs());
        clauses.push_back({-t, x});
        clauses.push_back({-t, y});
        clauses.push_back({t, -x, -y});
        break;
      }
      case Formula::Kind::Or: {
        int x = encode(f.lhs());
        int y = encode(f.rhs());
        clauses.push_back({t, -x});
        clauses.push_back({t, -y});
        clauses.push_back({-t, x, y});
        break;
      }
      case Formula::Kind::Implies: {
        int x = encode(f.lhs());
        int y = encode(f.rhs());
        clauses.push_back({-t, -x, y});
        clauses.push_back({t, x});
        clauses.push_back({t, -y});
        break;
      }
      case Formula::Kind::Iff: {
        int x = encode(f.lhs());
        int y = encode(f.rhs());
        clauses.push_back({-t, -x, y});
        clauses.push_back({-t, x, -y});
        clauses.push_back({t, x, y});
        clauses.push_back({t, -x, -y});
        break;
      }
    }
    return t;
  }
};

enum : signed char { kUnassigned = 0, kTrue = 1, kFalse = -1 };

struct Solver {
  const std::vector<Clause>& clauses;
  std::vector<signed char> value;  // indexed by var

  explicit Solver(const std::vector<Clause>& cs, int nvars)
      : clauses(cs), value(static_cast<std::size_t>(nvars) + 1, kUnassigned) {}

  bool assign(int lit) {
    int v = lit > 0 ? lit : -lit;
    signed char want = lit > 0 ? kTrue : kFalse;
    if (value[v] == kUnassigned) {
      value[v] = want;
      return true;
    }
    return value[v] == want;
  }

  // Returns false on conflict; appends assigned literals to trail.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : clauses) {
        int unassigned_lit = 0;
        int unassigned_count = 0;
        bool satisfied = false;
        for (int lit : c) {
          int v = lit > 0 ? lit : -lit;
          signed char val = value[v];
          if (val == kUnassigned) {
            ++unassigned_count;
            unassigned_lit = lit;
          } else if ((lit > 0) == (val == kTrue)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned_count == 0) return false;
        if (unassigned_count == 1) {
          assign(unassigned_lit);
          trail.push_back(unassigned_lit);
          changed = true;
        }
      }
    }
    return true;
  }

  void undo(const std::vector<int>& trail) {
    for (int lit : trail) value[lit > 0 ? lit : -lit] = kUnassigned;
  }

  bool solve() {
    std::vector<int> trail;
    bool ok = propagate(trail) && branch();
    undo(trail);
    return ok;
  }

  // Assumes the current assignment is propagated and conflict-free.
  bool branch() {
    int branch_var = 0;
    for (int v = 1; v < static_cast<int>(value.size()); ++v) {
      if (value[v] == kUnassigned) {
        branch_var = v;
        break;
      }
    }
    if (branch_var == 0) return true;
    for (int lit : {branch_var, -branch_var}) {
      std::vector<int> sub{lit};
      assign(lit);
      if (propagate(sub) && branch()) {
        undo(sub);
        return true;
      }
      undo(sub);
    }
    return false;
  }
};

}  // namespace

bool satisfiable(std::span<const Formula> roots) {
  CnfBuilder builder;
  std::vector<int> root_ids;
  root_ids.reserve(roots.size());
  for (Formula f : roots) root_ids.push_back(builder.encode(f));
  for (int t : root_ids) builder.clauses.push_back({t});

  Solver solver(builder.clauses, builder.next_id - 1);
  return solver.solve();
}

}  // namespace dlw::sat
