#include <doctest.h>

#include <functional>
#include <random>

#include "cflow/constructions.hpp"
#include "cflow/flow_engine.hpp"
#include "cflow/graph_analysis.hpp"
#include "support.hpp"

using namespace cflow;

namespace {

// Exhaustive over 3^m colorings with early rejection at each vertex.
bool coloring_oracle(const Network& g) {
  std::vector<int> color(g.edge_count(), -1);
  const std::function<bool(std::size_t)> go = [&](std::size_t e) {
    if (e == g.edge_count()) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (const VertexId v : {g.edge(e).tail, g.edge(e).head}) {
        for (const EdgeIndex f : g.incident_edges(v)) {
          if (f != e && color[f] == c) ok = false;
        }
      }
      if (!ok) continue;
      color[e] = c;
      if (go(e + 1)) return true;
      color[e] = -1;
    }
    return false;
  };
  return go(0);
}

bool proper(const Network& g, const std::vector<int>& color) {
  for (const VertexId v : g.vertices()) {
    std::vector<int> seen;
    for (const EdgeIndex e : g.incident_edges(v)) {
      for (const int c : seen) {
        if (c == color[e]) return false;
      }
      seen.push_back(color[e]);
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("graph_analysis") {
  TEST_CASE("bridges") {
    CHECK(bridges(testing::named("k4_k4_bridge")).size() == 1);
    CHECK(has_bridge(testing::named("paw")));
    CHECK(bridges(testing::named("p3")).size() == 2);
    CHECK_FALSE(has_bridge(petersen()));
    CHECK_FALSE(has_bridge(testing::named("theta3")));
    // A doubled edge is not a bridge.
    CHECK(find_bridges(3, {{0, 1}, {0, 1}, {1, 2}}) == std::vector<bool>{false, false, true});
  }

  TEST_CASE("girth") {
    CHECK(girth(petersen()) == 5);
    CHECK(girth(testing::named("heawood")) == 6);
    CHECK(girth(testing::named("desargues")) == 6);
    CHECK(girth(testing::named("dodecahedron")) == 5);
    CHECK(girth(testing::named("cube")) == 4);
    CHECK(girth(testing::named("k4")) == 3);
    CHECK(girth(testing::named("theta3")) == 2);
    CHECK(girth(testing::named("p3")) == kInfiniteGirth);
    CHECK(girth(testing::flower_snark(5)) == 5);
  }

  TEST_CASE("cyclic edge connectivity") {
    CHECK(cyclic_edge_connectivity_at_least(petersen(), 4));
    CHECK(cyclic_edge_connectivity_at_least(testing::named("cube"), 4));
    CHECK(cyclic_edge_connectivity_at_least(testing::named("prism"), 3));
    CHECK_FALSE(cyclic_edge_connectivity_at_least(testing::named("prism"), 4));
    CHECK_FALSE(cyclic_edge_connectivity_at_least(testing::named("k4_k4_bridge"), 2));
    CHECK(cyclic_edge_connectivity_at_least(testing::named("k33"), 4));
    CHECK_FALSE(cyclic_edge_connectivity_at_least(testing::named("frucht"), 4));
  }

  TEST_CASE("3-edge-coloring agrees with exhaustive search") {
    std::vector<Network> graphs;
    for (const auto& ng : testing::graph_suite()) {
      const Network g = testing::load(ng);
      if (is_cubic(g)) graphs.push_back(g);
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) graphs.push_back(random_cubic_graph(10, seed));
    graphs.push_back(testing::flower_snark(3));
    for (const Network& g : graphs) {
      const auto c = three_edge_coloring(g);
      CHECK(c.has_value() == coloring_oracle(g));
      CHECK(is_3_edge_colorable(g) == c.has_value());
      if (c) CHECK(proper(g, *c));
    }
    CHECK_FALSE(is_3_edge_colorable(petersen()));
    CHECK_THROWS_AS(is_3_edge_colorable(testing::named("k5")), std::invalid_argument);
  }

  TEST_CASE("4-flows agree with 3-edge-colorings on cubic graphs") {
    for (const auto& ng : testing::graph_suite()) {
      const Network g = testing::load(ng);
      if (!is_cubic(g)) continue;
      CHECK_MESSAGE(decide_4flow(g) == is_3_edge_colorable(g), ng.name);
    }
    CHECK_FALSE(decide_4flow(petersen()));
    CHECK_FALSE(decide_4flow(testing::flower_snark(5)));
    CHECK(decide_4flow(testing::named("k5")));
  }

  TEST_CASE("snark reports") {
    CHECK(snark_report(petersen()).is_snark);
    CHECK(snark_report(testing::flower_snark(5)).is_snark);
    CHECK(snark_report(s28()).is_snark);
    const SnarkReport k4 = snark_report(testing::named("k4"));
    CHECK(k4.cubic);
    CHECK(k4.three_edge_colorable);
    CHECK_FALSE(k4.is_snark);
    // J3 has a triangle.
    CHECK_FALSE(snark_report(testing::flower_snark(3)).is_snark);
    const std::string text = to_string(snark_report(petersen()));
    CHECK(text.find("is_snark: true") != std::string::npos);
    CHECK(text.find("girth: 5") != std::string::npos);
  }
}
