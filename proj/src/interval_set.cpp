#include "cflow/interval_set.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace cflow {

namespace {

using Mask = IntervalSet::Mask;

int wrap(int value, int modulus) {
  const int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

Mask bit(int i) { return Mask{1} << i; }

Mask mask_for(int modulus) {
  return modulus == 64 ? ~Mask{0} : (Mask{1} << modulus) - 1;
}

void check_modulus(int modulus) {
  if (modulus < 1 || modulus > IntervalSet::kMaxModulus) {
    throw std::invalid_argument("modulus must lie in [1, 64], got " + std::to_string(modulus));
  }
}

void require_same_modulus(const IntervalSet& a, const IntervalSet& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                                std::to_string(b.modulus()));
  }
}

// Open interval (left, left + length) as masks. length in [1, k].
std::pair<Mask, Mask> interval_masks(int left, int length, int modulus) {
  Mask units = 0;
  Mask points = 0;
  for (int s = 0; s < length; ++s) units |= bit(wrap(left + s, modulus));
  for (int s = 1; s < length; ++s) points |= bit(wrap(left + s, modulus));
  return {units, points};
}

}  // namespace

IntervalSet::IntervalSet(int modulus) : modulus_(modulus) { check_modulus(modulus); }

IntervalSet IntervalSet::full(int modulus) {
  check_modulus(modulus);
  return IntervalSet(modulus, mask_for(modulus), mask_for(modulus));
}

IntervalSet IntervalSet::from_masks(int modulus, Mask units, Mask points) {
  check_modulus(modulus);
  const Mask all = mask_for(modulus);
  if ((units & ~all) != 0 || (points & ~all) != 0) {
    throw std::invalid_argument("mask bits beyond modulus");
  }
  for (int j = 0; j < modulus; ++j) {
    if ((points & bit(j)) == 0) continue;
    if ((units & bit(j)) == 0 || (units & bit(wrap(j - 1, modulus))) == 0) {
      throw std::invalid_argument("point " + std::to_string(j) +
                                  " present without both adjacent unit intervals");
    }
  }
  return IntervalSet(modulus, units, points);
}

IntervalSet IntervalSet::from_intervals(int modulus, std::span<const std::pair<int, int>> intervals) {
  check_modulus(modulus);
  Mask units = 0;
  Mask points = 0;
  for (const auto& [a, b] : intervals) {
    if (a < 0 || a >= modulus || b < 0 || b >= modulus) {
      throw std::invalid_argument("interval endpoint outside [0, " + std::to_string(modulus) + ")");
    }
    const int length = a == b ? modulus : wrap(b - a, modulus);
    const auto [u, p] = interval_masks(a, length, modulus);
    units |= u;
    points |= p;
  }
  return IntervalSet(modulus, units, points);
}

Mask IntervalSet::all_mask() const { return mask_for(modulus_); }

bool IntervalSet::has_unit(int i) const { return (units_ & bit(wrap(i, modulus_))) != 0; }
bool IntervalSet::has_point(int j) const { return (points_ & bit(wrap(j, modulus_))) != 0; }

bool IntervalSet::is_symmetric() const { return *this == negate(*this); }

bool IntervalSet::contains(const Rational& t) const {
  if (t < Rational(0) || t >= Rational(modulus_)) throw std::invalid_argument("residue outside [0, k)");
  const auto whole = floor_of(t);
  if (t.denominator() == 1) return has_point(static_cast<int>(whole));
  return has_unit(static_cast<int>(whole));
}

bool IntervalSet::is_subset_of(const IntervalSet& other) const {
  require_same_modulus(*this, other);
  return (units_ & ~other.units_) == 0 && (points_ & ~other.points_) == 0;
}

std::strong_ordering operator<=>(const IntervalSet& a, const IntervalSet& b) {
  if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
  if (auto c = a.units_ <=> b.units_; c != 0) return c;
  return a.points_ <=> b.points_;
}

std::vector<MaximalInterval> maximal_intervals(const IntervalSet& set) {
  std::vector<MaximalInterval> out;
  const int k = set.modulus();
  if (set.is_empty() || set.is_full()) return out;
  // Every maximal interval starts at an absent point followed by a present unit.
  for (int a = 0; a < k; ++a) {
    if (set.has_point(a) || !set.has_unit(a)) continue;
    int length = 1;
    while (length < k && set.has_point(a + length)) ++length;
    out.push_back({a, wrap(a + length, k), length});
  }
  return out;
}

IntervalSet add(const IntervalSet& a, const IntervalSet& b) {
  require_same_modulus(a, b);
  const int k = a.modulus();
  if (a.is_empty() || b.is_empty()) return IntervalSet::empty(k);
  // The full circle has no maximal-interval decomposition; any non-empty
  // summand already covers it.
  if (a.is_full() || b.is_full()) return IntervalSet::full(k);

  Mask units = 0;
  Mask points = 0;
  for (const auto& x : maximal_intervals(a)) {
    for (const auto& y : maximal_intervals(b)) {
      const int total = x.length + y.length;
      if (total > k) return IntervalSet::full(k);
      const auto [u, p] = interval_masks(wrap(x.left + y.left, k), total, k);
      units |= u;
      points |= p;
    }
  }
  return IntervalSet::from_masks(k, units, points);
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  require_same_modulus(a, b);
  return IntervalSet::from_masks(a.modulus(), a.units() & b.units(), a.points() & b.points());
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  require_same_modulus(a, b);
  return IntervalSet::from_masks(a.modulus(), a.units() | b.units(), a.points() | b.points());
}

IntervalSet open_complement(const IntervalSet& a) {
  const int k = a.modulus();
  const Mask units = ~a.units() & a.all_mask();
  Mask points = 0;
  for (int j = 0; j < k; ++j) {
    if (!a.has_unit(j - 1) && !a.has_unit(j)) points |= bit(j);
  }
  return IntervalSet::from_masks(k, units, points);
}

IntervalSet negate(const IntervalSet& a) {
  const int k = a.modulus();
  Mask units = 0;
  Mask points = 0;
  for (int i = 0; i < k; ++i) {
    if (a.has_unit(i)) units |= bit(wrap(k - 1 - i, k));
    if (a.has_point(i)) points |= bit(wrap(k - i, k));
  }
  return IntervalSet::from_masks(k, units, points);
}

int measure(const IntervalSet& a) { return std::popcount(a.units()); }

int amplitude(const IntervalSet& a) {
  const int k = a.modulus();
  if (a.is_empty()) return 0;
  int longest_gap = 0;
  for (int start = 0; start < k; ++start) {
    if (a.has_unit(start) || !a.has_unit(start - 1)) continue;
    int run = 0;
    while (run < k && !a.has_unit(start + run)) ++run;
    longest_gap = std::max(longest_gap, run);
  }
  return k - longest_gap;
}

std::vector<IntervalSet> enumerate_symmetric(int modulus) {
  if (modulus < 1 || modulus > 20) {
    throw std::invalid_argument("enumeration supports 1 <= k <= 20");
  }
  const int k = modulus;
  // Orbits of x -> -x on unit indices (i <-> k-1-i) and on points (j <-> k-j).
  std::vector<Mask> unit_orbits;
  for (int i = 0; i < k; ++i) {
    const int mirror = k - 1 - i;
    if (i <= mirror) unit_orbits.push_back(bit(i) | bit(mirror));
  }
  std::vector<Mask> point_orbits;
  for (int j = 0; j < k; ++j) {
    const int mirror = wrap(k - j, k);
    if (j <= mirror) point_orbits.push_back(bit(j) | bit(mirror));
  }

  std::vector<IntervalSet> out;
  for (Mask choice = 0; choice < (Mask{1} << unit_orbits.size()); ++choice) {
    Mask units = 0;
    for (std::size_t o = 0; o < unit_orbits.size(); ++o) {
      if (choice & bit(static_cast<int>(o))) units |= unit_orbits[o];
    }
    std::vector<Mask> allowed;
    for (const Mask orbit : point_orbits) {
      bool ok = true;
      for (int j = 0; j < k; ++j) {
        if ((orbit & bit(j)) == 0) continue;
        if ((units & bit(j)) == 0 || (units & bit(wrap(j - 1, k))) == 0) ok = false;
      }
      if (ok) allowed.push_back(orbit);
    }
    for (Mask pick = 0; pick < (Mask{1} << allowed.size()); ++pick) {
      Mask points = 0;
      for (std::size_t o = 0; o < allowed.size(); ++o) {
        if (pick & bit(static_cast<int>(o))) points |= allowed[o];
      }
      out.push_back(IntervalSet::from_masks(k, units, points));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const IntervalSet& set) {
  if (set.is_empty()) return "empty";
  if (set.is_full()) return "full";
  std::string out;
  for (const auto& iv : maximal_intervals(set)) {
    if (!out.empty()) out += 'u';
    out += '(' + std::to_string(iv.left) + ',' + std::to_string(iv.right) + ')';
  }
  return out;
}

IntervalSet parse_interval_set(std::string_view text, int modulus) {
  std::string compact;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact == "empty") return IntervalSet::empty(modulus);
  if (compact == "full") return IntervalSet::full(modulus);

  const auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad interval expression '" + std::string(text) + "': " + why);
  };
  std::vector<std::pair<int, int>> intervals;
  std::size_t pos = 0;
  const auto read_int = [&]() {
    const std::size_t start = pos;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
    if (start == pos) throw fail("expected integer at offset " + std::to_string(start));
    return std::stoi(compact.substr(start, pos - start));
  };
  const auto expect = [&](char c) {
    if (pos >= compact.size() || compact[pos] != c) {
      throw fail(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    }
    ++pos;
  };
  while (true) {
    expect('(');
    const int a = read_int();
    expect(',');
    const int b = read_int();
    expect(')');
    intervals.emplace_back(a, b);
    if (pos == compact.size()) break;
    expect('u');
  }
  try {
    return IntervalSet::from_intervals(modulus, intervals);
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
}

}  // namespace cflow
