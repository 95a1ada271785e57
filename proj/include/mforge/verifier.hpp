#pragma once

#include <string>
#include <vector>

#include "mforge/frames.hpp"
#include "mforge/perm.hpp"
#include "mforge/polar_space.hpp"
#include "mforge/subspace.hpp"

namespace mforge {

struct Collineation {
  Perm perm;
  bool bijective = false;
  bool line_preserving = false;
  bool plane_preserving = false;
  std::vector<int> witness;  // offending point pair or line/plane id

  bool ok() const { return bijective && line_preserving && plane_preserving; }
};

/// Exhaustive bijectivity, line and plane checks. Failures are reported, never thrown.
Collineation check_collineation(const PolarSpace& g, const Perm& sigma);

/// Image of an element under a point permutation; id -1 if the image is not an element.
Element image_element(const PolarSpace& g, const Perm& sigma, Element e);

struct CertifyResult {
  bool pass = false;
  std::string failure;  // which check failed
  std::vector<int> witness;
  int elements_checked = 0;
  int apartments_checked = 0;
};

/// (a) every element of the inside is mapped to itself (points fixed, lines and
/// planes setwise); (b) every element completing an interior panel of the root
/// to a chamber is stabilized; (c) apartments containing r go to apartments containing r.
/// Pass `containing` to reuse a precomputed apartment list.
CertifyResult certify_root_elation(const PolarSpace& g, const Perm& sigma, const Root& r,
                                   const std::vector<Apartment>* containing = nullptr);

/// Perm on local GQ points preserving collinearity both ways; witness on failure.
bool gq_is_collineation(const PointLineGeometry& gq, const Perm& sigma, std::vector<int>* witness = nullptr);

/// GQ version: interior elements of the root path fixed, elements completing an
/// interior panel stabilized, apartments containing the root permuted.
CertifyResult certify_gq_root_elation(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                      const Perm& sigma, const GQRoot& r);

struct TransitivityResult {
  bool pass = false;
  std::size_t group_order = 0;
  int apartments = 0;
  int orbit_size = 0;
  std::string failure;
};

TransitivityResult gq_moufang_transitivity(const PointLineGeometry& gq, const std::vector<GQApartment>& apartments,
                                           const GQRoot& r, const std::vector<Perm>& elations, std::size_t cap);
TransitivityResult moufang_transitivity(const PolarSpace& g, const Root& r, const std::vector<Perm>& elations,
                                        std::size_t cap);

struct FixpointResult {
  bool pass = false;
  std::string failure;
  std::vector<int> witness;
  int planes_checked = 0;
  int lines_checked = 0;
};

/// First kind: planes through p_{-i}p_{-j} fixed pointwise, lines through either
/// point stabilized. Second kind: lines through p_{-i} stabilized.
FixpointResult verify_fixpoint_corollary(const PolarSpace& g, const Perm& sigma, const Root& r);

struct SelfProjectivityResult {
  bool pass = false;
  std::string failure;
};

SelfProjectivityResult verify_self_projectivity(const PolarSpace& g, const std::vector<int>& bases);

}  // namespace mforge

namespace mforge {

struct ResidualRealization {
  bool pass = false;
  int nontrivial = 0;  // oracle root elations other than the identity
  int realized = 0;
  int instances = 0;   // recipe instances swept
  int chains_checked = 0;
  std::vector<std::vector<int>> chains;  // a realizing base sequence per nontrivial elation
  std::string failure;
  std::vector<int> witness;
};

/// Sweeps every recipe instance for root r of Γ (all containing apartments, targets
/// and j / j′ choices) and matches the realized maps against the GQ oracle.
ResidualRealization realize_all_residual_elations(const PolarSpace& g, const GQView& gq,
                                                  const std::vector<GQApartment>& apartments, const GQRoot& r);

}  // namespace mforge
