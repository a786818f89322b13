#pragma once

// Unions of open integer intervals of the circle R/kZ.
//
// A set is stored as two bitmasks over Z/k: `units` (bit i <=> the open unit
// interval (i, i+1) is contained) and `points` (bit j <=> the integer j is
// contained). Every value of this type is an open set, so a point may only be
// present when both adjacent unit intervals are present ("point closure").
// Symmetry (A = -A) is a separate predicate; raw unions built by
// from_intervals() need not be symmetric.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cflow/rational.hpp"

namespace cflow {

class IntervalSet {
 public:
  using Mask = std::uint64_t;
  static constexpr int kMaxModulus = 64;

  // The empty subset of R/kZ.
  explicit IntervalSet(int modulus);

  static IntervalSet empty(int modulus) { return IntervalSet(modulus); }
  static IntervalSet full(int modulus);

  // Throws std::invalid_argument when a point lacks an adjacent unit interval
  // or when a mask has bits at or above the modulus.
  static IntervalSet from_masks(int modulus, Mask units, Mask points);

  // Union of open intervals (a, b), traversed clockwise from a to b. The
  // interval (a, a) is the whole circle minus {a}.
  static IntervalSet from_intervals(int modulus, std::span<const std::pair<int, int>> intervals);

  int modulus() const { return modulus_; }
  Mask units() const { return units_; }
  Mask points() const { return points_; }
  Mask all_mask() const;

  bool has_unit(int i) const;
  bool has_point(int j) const;
  bool is_empty() const { return units_ == 0; }
  bool is_full() const { return units_ == all_mask() && points_ == all_mask(); }
  bool is_symmetric() const;

  // Membership of the residue t, 0 <= t < k.
  bool contains(const Rational& t) const;

  bool is_subset_of(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  friend std::strong_ordering operator<=>(const IntervalSet& a, const IntervalSet& b);

 private:
  IntervalSet(int modulus, Mask units, Mask points)
      : modulus_(modulus), units_(units), points_(points) {}

  int modulus_;
  Mask units_ = 0;
  Mask points_ = 0;
};

// A maximal open integer interval (left, right) inside a set; `length` counts
// unit intervals and equals the modulus for (a, a).
struct MaximalInterval {
  int left;
  int right;
  int length;
};

// Maximal intervals sorted by left endpoint. Empty for the empty set and for
// the full circle (which has no endpoint).
std::vector<MaximalInterval> maximal_intervals(const IntervalSet& set);

IntervalSet add(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet open_complement(const IntervalSet& a);
IntervalSet negate(const IntervalSet& a);

inline IntervalSet operator+(const IntervalSet& a, const IntervalSet& b) { return add(a, b); }
inline IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) { return intersect(a, b); }
inline IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) { return unite(a, b); }
inline IntervalSet operator~(const IntervalSet& a) { return open_complement(a); }

// Number of unit intervals contained.
int measure(const IntervalSet& a);
// Length of the shortest interval containing the set: k minus the longest
// cyclic run of absent unit intervals. 0 for the empty set, k when no unit
// interval is absent.
int amplitude(const IntervalSet& a);

// All symmetric members of SI_k, ordered by (units, points). 1 <= k <= 20.
std::vector<IntervalSet> enumerate_symmetric(int modulus);

// Canonical text: "empty", "full", or maximal intervals joined by "u",
// e.g. "(1,2)u(3,4)".
std::string to_string(const IntervalSet& set);

// SET := "empty" | "full" | IV ("u" IV)* ; IV := "(" INT "," INT ")".
// Whitespace is ignored. Throws std::invalid_argument on malformed input.
IntervalSet parse_interval_set(std::string_view text, int modulus);

}  // namespace cflow
