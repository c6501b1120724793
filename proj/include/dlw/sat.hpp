#ifndef DLW_SAT_HPP
#define DLW_SAT_HPP

#include <span>

#include "dlw/formula.hpp"

namespace dlw::sat {

/// Satisfiability of the conjunction of the given formulas, decided by DPLL
/// with unit propagation over a structure-preserving CNF encoding. Auxiliary
/// definition variables never escape this call.
bool satisfiable(std::span<const Formula> roots);

}  // namespace dlw::sat

#endif
