#pragma once

#include <string>
#include <string_view>

#include "cflow/interval_set.hpp"
#include "cflow/rational.hpp"

namespace cflow {

// Flow values for a rational r = p/q are multiplied by q, so that all work
// happens in R/pZ where every capacity boundary is an integer. The simple-edge
// window (1, r-1) becomes (q, p-q).
struct ScaledContext {
  Rational r;
  int p = 5;
  int q = 1;

  // Requires r > 2 and p <= IntervalSet::kMaxModulus.
  static ScaledContext of(const Rational& r);

  IntervalSet window() const;
  // Scaled value back in units of r.
  Rational unscale(const Rational& scaled) const { return scaled / Rational(q); }
  Rational scale(const Rational& value) const { return value * Rational(q); }

  friend bool operator==(const ScaledContext&, const ScaledContext&) = default;
};

// Capacity text for a network of ratio r: the IntervalSet grammar with
// endpoints given in units of r, so rationals are allowed ("(4,1/2)" at
// r = 9/2 is the scaled set (8,1) of R/9Z). Every endpoint times q must be an
// integer in [0, p).
IntervalSet parse_capacity(std::string_view text, const ScaledContext& ctx);
std::string format_capacity(const IntervalSet& scaled, const ScaledContext& ctx);

}  // namespace cflow
