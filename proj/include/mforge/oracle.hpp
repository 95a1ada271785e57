#pragma once

#include <vector>

#include "mforge/frames.hpp"
#include "mforge/perm.hpp"
#include "mforge/polar_space.hpp"
#include "mforge/subspace.hpp"

namespace mforge {

struct OracleStats {
  long candidates = 0;   // full isometries found before filtering
  long rejected = 0;     // failed root-elation certification
};

/// Point permutations induced by isometries of the form that fix every point of
/// the root's inside. With `certified`, only those passing certify_root_elation
/// are kept. Distinct permutations, identity included, sorted.
std::vector<Perm> pointwise_stabilizer_oracle(const PolarSpace& g, const Root& r, bool certified = true,
                                              OracleStats* stats = nullptr);

/// All collineations of a GQ passing certify_gq_root_elation for r, found by
/// backtracking on collinearity with the fixed/stabilized constraints of r.
std::vector<Perm> gq_root_elation_oracle(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                         const GQRoot& r);

}  // namespace mforge
