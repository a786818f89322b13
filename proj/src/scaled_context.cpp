#include "cflow/scaled_context.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace cflow {

ScaledContext ScaledContext::of(const Rational& r) {
  if (r <= 2) throw std::invalid_argument("r must exceed 2, got " + to_string(r));
  const auto p = r.numerator();
  const auto q = r.denominator();
  if (p > IntervalSet::kMaxModulus) {
    throw std::invalid_argument("numerator of r = " + to_string(r) + " exceeds 64");
  }
  return ScaledContext{r, static_cast<int>(p), static_cast<int>(q)};
}

IntervalSet ScaledContext::window() const {
  const std::pair<int, int> iv{q, p - q};
  return IntervalSet::from_intervals(p, std::span(&iv, 1));
}

IntervalSet parse_capacity(std::string_view text, const ScaledContext& ctx) {
  std::string compact;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact == "empty") return IntervalSet::empty(ctx.p);
  if (compact == "full") return IntervalSet::full(ctx.p);

  const auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad capacity '" + std::string(text) + "': " + why);
  };
  std::vector<std::pair<int, int>> intervals;
  std::size_t pos = 0;
  const auto read_endpoint = [&]() {
    const std::size_t start = pos;
    while (pos < compact.size() &&
           (std::isdigit(static_cast<unsigned char>(compact[pos])) || compact[pos] == '/')) {
      ++pos;
    }
    if (start == pos) throw fail("expected endpoint at offset " + std::to_string(start));
    const Rational scaled = ctx.scale(parse_rational(compact.substr(start, pos - start)));
    if (scaled.denominator() != 1 || scaled < Rational(0) || scaled >= Rational(ctx.p)) {
      throw fail("endpoint is not a multiple of 1/" + std::to_string(ctx.q) + " in [0, r)");
    }
    return static_cast<int>(scaled.numerator());
  };
  const auto expect = [&](char c) {
    if (pos >= compact.size() || compact[pos] != c) {
      throw fail(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    }
    ++pos;
  };
  while (true) {
    expect('(');
    const int a = read_endpoint();
    expect(',');
    const int b = read_endpoint();
    expect(')');
    intervals.emplace_back(a, b);
    if (pos == compact.size()) break;
    expect('u');
  }
  return IntervalSet::from_intervals(ctx.p, intervals);
}

std::string format_capacity(const IntervalSet& scaled, const ScaledContext& ctx) {
  if (scaled.modulus() != ctx.p) throw std::invalid_argument("capacity modulus differs from p");
  if (scaled.is_empty()) return "empty";
  if (scaled.is_full()) return "full";
  std::string out;
  for (const auto& iv : maximal_intervals(scaled)) {
    if (!out.empty()) out += 'u';
    out += '(' + to_string(ctx.unscale(Rational(iv.left))) + ',' +
           to_string(ctx.unscale(Rational(iv.right))) + ')';
  }
  return out;
}

}  // namespace cflow
