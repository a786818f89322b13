#pragma once

// Capacity expressions over SI_k.
//
//   expr   := join ("|" join)*          union
//   join   := meet ("+" meet)*          Minkowski sum (parallel join)
//   meet   := lit ("^" lit)*            intersection (serial join)
//   lit    := unary ("u" unary)*        literal union
//   unary  := "~" unary | atom          open complement
//   atom   := "empty" | "full" | "(" INT "," INT ")" | "(" expr ")"
//
// Whitespace is ignored.

#include <string_view>

#include "cflow/interval_set.hpp"

namespace cflow {

// Throws std::invalid_argument with the offending position on bad input.
IntervalSet evaluate_expression(std::string_view text, int modulus);

}  // namespace cflow
