#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "mforge/polar_space.hpp"
#include "mforge/subspace.hpp"

namespace mforge {

// Frame index i in {±1, ±2, ±3} lives in slot 0..5 (1,2,3,-1,-2,-3).
inline int frame_slot(int i) { return i > 0 ? i - 1 : 2 - i; }
inline int slot_index(int s) { return s < 3 ? s + 1 : 2 - s; }
inline unsigned index_bit(int i) { return 1u << frame_slot(i); }

struct PolarFrame {
  std::array<int, 6> pts{-1, -1, -1, -1, -1, -1};

  int at(int i) const { return pts[frame_slot(i)]; }
  int& at(int i) { return pts[frame_slot(i)]; }
  bool operator==(const PolarFrame&) const = default;
};

/// p_i ⊥ p_j iff i + j != 0, points distinct.
bool frame_valid(const PolarSpace& g, const PolarFrame& f);

/// Lowest-id-first completion of a partial index -> point assignment. Throws NoFrame.
PolarFrame frame_search(const PolarSpace& g, const std::map<int, int>& constraints);
/// All completions, in lowest-id-first order, at most `cap` of them.
std::vector<PolarFrame> enumerate_frames(const PolarSpace& g, const std::map<int, int>& constraints,
                                         std::size_t cap = 1u << 20);

struct ApartmentElement {
  unsigned mask;  // frame slots spanning the element
  Element elem;
};

struct Apartment {
  PolarFrame frame;
  std::vector<ApartmentElement> elements;  // 6 points, 12 lines, 8 planes

  std::vector<Element> element_set() const;  // sorted
  bool contains(Element e) const;
  Element element_of(unsigned mask) const;
};

Apartment apartment_from_frame(const PolarSpace& g, const PolarFrame& f);

enum class RootKind { First, Second };

/// Half-apartment of an octahedral apartment together with its inside.
struct Root {
  RootKind kind = RootKind::First;
  int i = 0, j = 0;  // removed frame indices (j unused for the second kind)
  Apartment apartment;
  std::vector<unsigned> member_masks, inside_masks;
  std::vector<Element> members, inside;  // sorted

  bool in_members(unsigned mask) const;
};

/// Throws BadIndices for First(i, j) with p_i not collinear to p_j, or out-of-range indices.
Root root_of_apartment(const Apartment& a, RootKind kind, int i, int j = 0);

/// Every apartment whose subspace set contains the members of r, sorted by frame.
std::vector<Apartment> apartments_containing(const PolarSpace& g, const Root& r);

/// An apartment containing both U and V (constraint-first backtracking).
Apartment common_apartment(const PolarSpace& g, const SingularSubspace& U, const SingularSubspace& V);

// Generalized quadrangle level.

struct GQApartment {
  std::array<int, 4> cycle;  // cycle[k] ⊥ cycle[k+1]
  std::array<int, 4> lines;  // lines[k] joins cycle[k], cycle[k+1]

  std::array<int, 4> sorted_points() const;
  bool operator==(const GQApartment&) const = default;
};

enum class GQRootKind { First, Second };

/// First kind: path (line, q, centre line qd, d, line); second kind: path (q, line dq, d, line dn, n).
struct GQRoot {
  GQRootKind kind = GQRootKind::First;
  std::array<int, 5> path{};

  bool operator==(const GQRoot&) const = default;
  auto operator<=>(const GQRoot&) const = default;
};

std::vector<GQApartment> gq_apartments(const PointLineGeometry& gq);
/// Distinct roots of both kinds carried by the apartments, in sorted order.
std::vector<GQRoot> gq_roots(const std::vector<GQApartment>& apartments, const PointLineGeometry& gq);
/// The four first-kind and four second-kind roots of one apartment.
std::vector<GQRoot> roots_of_gq_apartment(const GQApartment& a);
bool gq_apartment_contains(const GQApartment& a, const GQRoot& r);
std::vector<int> gq_apartments_containing(const std::vector<GQApartment>& apartments, const GQRoot& r);
/// Image of an apartment under a point permutation; nullopt-like empty cycle (-1) if not an apartment.
GQApartment gq_apartment_image(const PointLineGeometry& gq, const GQApartment& a, const std::vector<int>& perm);
GQApartment canonical_gq_apartment(const PointLineGeometry& gq, std::array<int, 4> cycle);

}  // namespace mforge
