#ifndef DLW_FAITHFUL_HPP
#define DLW_FAITHFUL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dlw/semantics.hpp"

namespace dlw {

/// Outcome of a faithfulness check. `matching[i]` lists the target extensions
/// var-equivalent to source extension i. Faithful requires coverage in both
/// directions; bijective additionally requires the correspondence to be
/// one-to-one.
struct FaithfulReport {
  bool faithful = false;
  bool bijective = false;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> matching;
  std::vector<std::size_t> unmatched_source;
  std::vector<std::size_t> unmatched_target;
};

/// Shortlex order on processes over the canonical default ordering: shorter
/// first, then by the first differing index.
struct ProcessOrder {
  bool operator()(const Process& lhs, const Process& rhs) const;
};

/// Extensions entailed by no other extension (minimal w.r.t. containment of
/// the generated deductive closures). Empty input yields an empty list.
std::vector<Extension> strongest_extensions(const DefaultTheory& theory, SemanticsId sem,
                                            const EnumerationOptions& options = {});

/// Pairwise var-equivalence matching between the extensions of two
/// theory/semantics pairs over the alphabet `xs` (must be contained in the
/// source alphabet).
FaithfulReport check_faithful(const DefaultTheory& src, SemanticsId src_sem,
                              const DefaultTheory& tgt, SemanticsId tgt_sem, const AtomSet& xs,
                              const EnumerationOptions& options = {});

/// Matching on precomputed extension lists; `xs` unconstrained.
FaithfulReport match_extensions(const std::vector<Extension>& src,
                                const std::vector<Extension>& tgt, const AtomSet& xs);

struct CountResult {
  std::size_t count = 0;
  bool geq = false;
};

/// Number of selected processes that are shortlex-minimal among those
/// generating an equivalent extension; equals the number of extensions.
/// `geq` reports count >= k.
CountResult count_extensions(const DefaultTheory& theory, SemanticsId sem, std::size_t k,
                             const EnumerationOptions& options = {});

}  // namespace dlw

#endif
