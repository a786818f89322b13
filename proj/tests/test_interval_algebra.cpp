#include <doctest.h>

#include <algorithm>
#include <random>

#include "cflow/interval_expr.hpp"
#include "cflow/interval_set.hpp"
#include "cflow/scaled_context.hpp"
#include "support.hpp"

using namespace cflow;

namespace {

IntervalSet S(const char* text, int k = 5) { return parse_interval_set(text, k); }

}  // namespace

TEST_SUITE("interval_algebra") {
  TEST_CASE("SI_k sizes follow the Fibonacci numbers") {
    const std::vector<std::size_t> expected = {3, 5, 8, 13, 21};
    for (int k = 1; k <= 5; ++k) CHECK(enumerate_symmetric(k).size() == expected[k - 1]);
    for (int k = 3; k <= 12; ++k) {
      CHECK(enumerate_symmetric(k).size() ==
            enumerate_symmetric(k - 1).size() + enumerate_symmetric(k - 2).size());
    }
  }

  TEST_CASE("enumeration matches the half-grid oracle") {
    for (int k = 1; k <= 12; ++k) {
      auto oracle = testing::si_oracle(k);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> ours;
      for (const auto& s : enumerate_symmetric(k)) {
        CHECK(s.is_symmetric());
        ours.emplace_back(s.units(), s.points());
      }
      std::sort(oracle.begin(), oracle.end());
      std::sort(ours.begin(), ours.end());
      CHECK_MESSAGE(ours == oracle, "k = " << k);
    }
  }

  TEST_CASE("sum matches the grid oracle on SI_5 and SI_7") {
    for (const int k : {5, 7}) {
      const auto all = enumerate_symmetric(k);
      for (const auto& a : all) {
        for (const auto& b : all) {
          const IntervalSet s = add(a, b);
          const auto [u, p] = testing::sum_oracle(a, b);
          CHECK_MESSAGE((s.units() == u && s.points() == p), to_string(a) << " + " << to_string(b));
        }
      }
    }
  }

  TEST_CASE("sum of unsymmetric unions matches the oracle") {
    std::mt19937_64 rng(7);
    const int k = 9;
    for (int trial = 0; trial < 200; ++trial) {
      const auto pick = [&]() {
        std::vector<std::pair<int, int>> iv;
        const int count = static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) {
          const int a = static_cast<int>(rng() % k);
          iv.emplace_back(a, (a + 1 + static_cast<int>(rng() % 4)) % k);
        }
        return IntervalSet::from_intervals(k, iv);
      };
      const IntervalSet a = pick(), b = pick();
      const auto [u, p] = testing::sum_oracle(a, b);
      CHECK(add(a, b).units() == u);
      CHECK(add(a, b).points() == p);
    }
  }

  TEST_CASE("paper identities on SI_5") {
    CHECK(add(S("(4,1)"), S("(4,1)")) == S("(3,2)"));
    CHECK(add(S("(1,4)"), S("(1,4)")) == IntervalSet::full(5));
    CHECK(add(S("(4,1)"), S("(1,4)")) == S("(0,0)"));
    CHECK(intersect(S("(1,4)"), S("(4,1)")).is_empty());
    CHECK(add(S("(1,2)u(3,4)"), S("(1,2)u(3,4)")) == S("(1,4)u(4,1)"));
    CHECK(intersect(S("(0,0)"), S("(3,2)")) == S("(3,0)u(0,2)"));
    CHECK(intersect(S("(4,1)u(2,3)"), S("(1,4)")) == S("(2,3)"));
    CHECK(open_complement(S("(4,1)")) == S("(1,4)"));
    CHECK(open_complement(S("(1,2)u(3,4)")) == S("(4,1)u(2,3)"));
    CHECK(open_complement(IntervalSet::full(5)).is_empty());
    CHECK(open_complement(IntervalSet::empty(5)) == IntervalSet::full(5));
    CHECK(add(IntervalSet::empty(5), S("(1,4)")).is_empty());
  }

  TEST_CASE("amplitude and measure") {
    CHECK(amplitude(S("(4,1)u(2,3)")) == 4);
    CHECK(measure(S("(4,1)u(2,3)")) == 3);
    CHECK(amplitude(S("(1,2)u(3,4)")) == 3);
    CHECK(measure(S("(1,2)u(3,4)")) == 2);
    CHECK(amplitude(S("(4,0)u(0,1)")) == 2);
    CHECK(measure(S("(4,0)u(0,1)")) == 2);
    CHECK(amplitude(IntervalSet::empty(5)) == 0);
    CHECK(amplitude(IntervalSet::full(5)) == 5);
    CHECK(amplitude(S("(0,0)")) == 5);
  }

  TEST_CASE("algebraic laws over SI_6") {
    const auto all = enumerate_symmetric(6);
    for (const auto& a : all) {
      CHECK(a.is_subset_of(open_complement(open_complement(a))));
      CHECK(open_complement(open_complement(open_complement(a))) == open_complement(a));
      CHECK(negate(a) == a);
      CHECK(intersect(a, open_complement(a)).is_empty());
      for (const auto& b : all) {
        CHECK(add(a, b) == add(b, a));
        CHECK(add(a, b).is_symmetric());
        CHECK(intersect(a, b).is_subset_of(a));
        CHECK(a.is_subset_of(unite(a, b)));
        if (b.has_point(0)) CHECK(a.is_subset_of(add(a, b)));
      }
    }
  }

  TEST_CASE("sum is monotone") {
    const auto all = enumerate_symmetric(5);
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (!a.is_subset_of(b)) continue;
        for (const auto& c : all) CHECK(add(a, c).is_subset_of(add(b, c)));
      }
    }
  }

  TEST_CASE("point closure is enforced") {
    CHECK_THROWS_AS(IntervalSet::from_masks(5, 0b00001, 0b00001), std::invalid_argument);
    CHECK_NOTHROW(IntervalSet::from_masks(5, 0b10001, 0b00001));
    CHECK_THROWS_AS(IntervalSet::from_masks(5, 0b100000, 0), std::invalid_argument);
  }

  TEST_CASE("canonical text round-trips") {
    for (int k = 1; k <= 7; ++k) {
      for (const auto& s : enumerate_symmetric(k)) CHECK(parse_interval_set(to_string(s), k) == s);
    }
    CHECK(to_string(S("(3,4)u(1,2)")) == "(1,2)u(3,4)");
    CHECK(to_string(S("(4,0)u(0,1)")) == "(0,1)u(4,0)");
    CHECK(open_complement(open_complement(S("(0,0)"))) == IntervalSet::full(5));
    CHECK(to_string(S("(4,1)")) == "(4,1)");
    CHECK(to_string(S("(0,0)")) == "(0,0)");
    CHECK(to_string(IntervalSet::full(5)) == "full");
    CHECK_THROWS_AS(parse_interval_set("(1,2", 5), std::invalid_argument);
    CHECK_THROWS_AS(parse_interval_set("(1,7)", 5), std::invalid_argument);
  }

  TEST_CASE("membership of rational points") {
    const IntervalSet d = S("(4,1)u(2,3)");
    CHECK(d.contains(Rational(0)));
    CHECK(d.contains(Rational(5, 2)));
    CHECK_FALSE(d.contains(Rational(2)));
    CHECK_FALSE(d.contains(Rational(3, 2)));
    CHECK_FALSE(S("(4,0)u(0,1)").contains(Rational(0)));
  }

  TEST_CASE("expressions") {
    CHECK(evaluate_expression("(4,1)+(4,1)", 5) == S("(3,2)"));
    CHECK(evaluate_expression("~(4,1)", 5) == S("(1,4)"));
    CHECK(evaluate_expression("empty+(1,4)", 5).is_empty());
    CHECK(evaluate_expression("((4,1)u(2,3))^(1,4)", 5) == S("(2,3)"));
    CHECK(evaluate_expression("(4,1)|(2,3)", 5) == S("(4,1)u(2,3)"));
    CHECK(evaluate_expression("(4,1)+(4,1)^(1,4)", 5) == add(S("(4,1)"), intersect(S("(4,1)"), S("(1,4)"))));
    CHECK_THROWS_AS(evaluate_expression("(4,1)+", 5), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_expression("(4,1))", 5), std::invalid_argument);
  }

  TEST_CASE("scaled capacities") {
    const ScaledContext ctx = ScaledContext::of(Rational(9, 2));
    CHECK(ctx.p == 9);
    CHECK(ctx.q == 2);
    CHECK(ctx.window() == parse_interval_set("(2,7)", 9));
    const IntervalSet c = parse_capacity("(4,1/2)", ctx);
    CHECK(c == parse_interval_set("(8,1)", 9));
    CHECK(format_capacity(c, ctx) == "(4,1/2)");
    CHECK_THROWS_AS(parse_capacity("(1/3,1)", ctx), std::invalid_argument);
  }
}
