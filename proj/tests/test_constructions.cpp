#include <doctest.h>

#include "cflow/constructions.hpp"
#include "cflow/flow_engine.hpp"
#include "cflow/graph_analysis.hpp"
#include "cflow/interval_expr.hpp"
#include "support.hpp"

using namespace cflow;

namespace {

IntervalSet S(const char* text, int k = 5) { return parse_interval_set(text, k); }

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("catalog recipes and builders") {
    const auto cat = gi5_catalog();
    REQUIRE(cat.size() == 16);
    int built = 0;
    std::vector<IntervalSet> seen;
    for (const auto& e : cat) {
      CHECK_MESSAGE(evaluate_expression(e.recipe, 5) == e.capacity, e.name);
      CHECK(amplitude(e.capacity) == e.amplitude);
      CHECK(measure(e.capacity) == e.measure);
      CHECK(e.capacity.is_symmetric());
      for (const auto& s : seen) CHECK(s != e.capacity);
      seen.push_back(e.capacity);
      if (!e.build) continue;
      ++built;
      CHECK_MESSAGE(capacity(e.build(false)) == e.capacity, e.name);
      CHECK_MESSAGE(capacity(e.build(true)) == e.capacity, e.name);
    }
    CHECK(built >= 13);
  }

  TEST_CASE("resolver") {
    const GadgetResolver res = standard_resolver();
    const ScaledContext five = ScaledContext::of(Rational(5));
    CHECK(res.declared_capacity("petersen_minus_edge", five) == S("(4,1)"));
    CHECK(res.declared_capacity("thick14", five) == S("(1,4)"));
    CHECK(res.declared_capacity("measure2_edge", five) == S("(1,2)u(3,4)"));
    CHECK(res.declared_capacity("k4_gadget", five) == S("(4,1)u(2,3)"));
    CHECK(res.declared_capacity("q_r", ScaledContext::of(Rational(9, 2))) == S("(7,2)", 9));
    CHECK(res.declared_capacity("petersen_minus_edge", ScaledContext::of(Rational(9, 2))) == S("(8,1)", 9));
    CHECK_THROWS(res.build("q_r"));
    CHECK_THROWS(res.build("nonsense"));
    for (const auto& name : gadget_names()) {
      if (name == "q_r") continue;
      CHECK(capacity(concretize(res.build(name), res)) == res.declared_capacity(name, five));
    }
  }

  TEST_CASE("gadget anchors") {
    const IntervalSet thick = capacity(thick_14_edge(true));
    CHECK(thick == S("(1,4)"));
    CHECK(thick.contains(Rational(2)));
    const IntervalSet d = capacity(k4_gadget(true));
    CHECK(d == S("(4,1)u(2,3)"));
    CHECK(d.contains(Rational(0)));
    CHECK(d.contains(Rational(5, 2)));
    CHECK(d.is_subset_of(open_complement(S("(1,2)u(3,4)"))));
    CHECK(capacity(butterfly(true)) == S("(1,4)"));
    CHECK_FALSE(butterfly(true).network.has_gadgets());
  }

  TEST_CASE("S_28 and the mr family") {
    const Network g = s28();
    CHECK(g.vertex_count() == 28);
    CHECK(g.all_simple());
    CHECK(is_cubic(g));
    CHECK(girth(g) >= 5);
    CHECK(mr_family(0) == petersen());
    const Network m1 = mr_family(1);
    CHECK(is_cubic(m1));
    CHECK(m1.vertex_count() == 50);
    CHECK(snark_report(m1).is_snark);
    CHECK(decide_sub_r_mcnzf(mr_family_abstract(1)).is_false());
    CHECK(decide_sub_r_mcnzf(k4_triangle_41()).is_false());
  }

  TEST_CASE("odd cycle construction") {
    const Network k4 = complete_graph(4);
    const Network x = odd_cycle_construction(k4, {0, 1, 2}, S("(4,1)"));
    CHECK(decide_sub_r_mcnzf(x).is_false());
    CHECK(x.edge_count() == 6);
    const Network y = odd_cycle_construction(petersen(), {0, 1, 2, 3, 4}, S("(1,2)u(3,4)"));
    CHECK(decide_sub_r_mcnzf(y).is_false());
    CHECK_THROWS_AS(odd_cycle_construction(testing::named("cube"), {0, 1, 3, 2}, S("(4,1)")),
                    std::invalid_argument);
    CHECK_THROWS_AS(odd_cycle_construction(k4, {0, 1, 2}, S("(1,4)")), std::invalid_argument);
  }

  TEST_CASE("cycle replacement") {
    const Network p = petersen();
    const std::vector<VertexId> c = {0, 1, 2, 3, 4};
    CHECK(decide_sub_r_mcnzf(cycle_replacement(p, c, std::vector<IntervalSet>(5, S("(4,1)")))).is_false());
    const std::vector<IntervalSet> mixed = {S("(4,0)u(0,1)"), S("(4,1)"), S("(4,1)"), S("(4,0)u(0,1)"),
                                            S("(4,1)")};
    CHECK(decide_sub_r_mcnzf(cycle_replacement(p, c, mixed)).is_false());
    CHECK_THROWS_AS(cycle_replacement(p, c, std::vector<IntervalSet>(5, S("(3,2)"))), std::invalid_argument);
    CHECK_THROWS_AS(cycle_replacement(p, {0, 1, 2}, std::vector<IntervalSet>(3, S("(4,1)"))),
                    std::invalid_argument);
  }

  TEST_CASE("forcing pairs and empty edges") {
    const Network k4 = complete_graph(4);
    const auto inc = k4.incident_edges(0);
    const Network f = force_ge5_pair(k4, 0, inc[0], inc[1]);
    CHECK(decide_sub_r_mcnzf(f).is_false());
    Network restored = f;
    restored.set_kind(inc[0], SimpleEdge{});
    restored.set_kind(inc[1], SimpleEdge{});
    CHECK(restored == k4);
    CHECK(decide_sub_r_mcnzf(restored).is_true());
    CHECK(decide_sub_r_mcnzf(insert_empty_edge(k4, 0, 1)).is_false());
    CHECK_THROWS_AS(force_ge5_pair(k4, 0, inc[0], 5), std::invalid_argument);
  }

  TEST_CASE("random cubic graphs") {
    for (const int n : {4, 10, 20}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Network g = random_cubic_graph(n, seed);
        CHECK(g.vertex_count() == static_cast<std::size_t>(n));
        CHECK(is_cubic(g));
        CHECK(girth(g) >= 3);
        CHECK(random_cubic_graph(n, seed) == g);
      }
    }
    CHECK_THROWS(random_cubic_graph(7, 1));
  }

  TEST_CASE("cycle search") {
    const auto c5 = find_cycle_of_length(petersen(), 5);
    REQUIRE(c5.has_value());
    CHECK(c5->size() == 5);
    CHECK(cycle_edges(petersen(), *c5).size() == 5);
    CHECK_FALSE(find_odd_cycle(testing::named("cube")).has_value());
    const auto odd = find_odd_cycle(testing::named("prism"));
    REQUIRE(odd.has_value());
    CHECK(odd->size() == 3);
  }
}
