#pragma once

#include <cstdint>

#include "mforge/polar_space.hpp"

namespace mforge {

struct AxiomStats {
  std::int64_t incidence_tests = 0;  // (point, line) pairs examined
  std::int64_t collinear_pairs = 0;
  int min_planes_per_line = 0;
};

/// Buekenhout-Shult check plus thickness and partial linearity. Throws
/// AxiomViolation with a witness (point, line) or (line) on the first failure.
AxiomStats axiom_check(const PolarSpace& g);

/// Bit-exact agreement between the adjacency table and the form. Throws
/// AxiomViolation with the offending pair.
void check_form_agreement(const PolarSpace& g);

}  // namespace mforge
