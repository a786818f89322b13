#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace cflow {

using Rational = boost::rational<std::int64_t>;

// Accepts "7", "-3", "9/2". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// "7" for integers, "9/2" otherwise.
std::string to_string(const Rational& value);

// floor(value) for any sign.
std::int64_t floor_of(const Rational& value);

// value reduced into [0, modulus).
Rational mod_positive(const Rational& value, std::int64_t modulus);

}  // namespace cflow
