#include <doctest.h>

#include <algorithm>

#include "cflow/constructions.hpp"
#include "cflow/formats.hpp"
#include "cflow/graph_analysis.hpp"
#include "cflow/network.hpp"
#include "support.hpp"

using namespace cflow;

namespace {

std::vector<std::pair<VertexId, VertexId>> sorted_edges(const Network& g) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.tail, e.head);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("network_model") {
  TEST_CASE("graph6 decodes the frozen suite") {
    CHECK(testing::named("petersen").vertex_count() == 10);
    CHECK(testing::named("petersen").edge_count() == 15);
    CHECK(testing::named("k6").edge_count() == 15);
    CHECK(testing::named("heawood").edge_count() == 21);
    CHECK(testing::named("theta4").vertex_count() == 2);
    CHECK(testing::named("theta4").edge_count() == 4);
    CHECK(testing::named("k4par").edge_count() == 7);
    for (const auto& ng : testing::graph_suite()) {
      const Network g = testing::load(ng);
      CHECK(graph6_encode(g) == ng.code);
      for (const Edge& e : g.edges()) CHECK(e.tail < e.head);
    }
  }

  TEST_CASE("headers and newlines are accepted") {
    CHECK(graph6_decode(">>graph6<<C~\n") == graph6_decode("C~"));
    CHECK(graph6_decode(">>sparse6<<:A_N\n") == graph6_decode(":A_N"));
    CHECK_THROWS_AS(graph6_decode("C"), ParseError);
  }

  TEST_CASE("sparse6 round-trips multigraphs") {
    for (const auto& ng : testing::small_suite()) {
      const Network g = testing::load(ng);
      // sparse6 lists edges by larger endpoint, graph6 by column.
      CHECK(sorted_edges(graph6_decode(sparse6_encode(g))) == sorted_edges(g));
    }
    const Network p = petersen();
    CHECK(graph6_decode(sparse6_encode(p)).edge_count() == 15);
  }

  TEST_CASE("petersen labelling") {
    const Network p = petersen();
    CHECK(is_cubic(p));
    CHECK(girth(p) == 5);
    CHECK(graph6_encode(p) == "IheA@GUAo");
    const GEdge q = petersen_minus_edge();
    CHECK(q.network.edge_count() == 14);
    CHECK(q.source == 0);
    CHECK(q.sink == 1);
    CHECK(q.network.degree(0) == 2);
  }

  TEST_CASE("native format round-trips") {
    Network g(Rational(9, 2));
    g.add_vertices(4);
    g.add_edge(0, 1);
    g.add_abstract_edge(1, 2, "(4,1/2)");
    g.add_gadget_edge(2, 3, "petersen_minus_edge");
    g.add_edge(3, 0);
    const std::string text = write_network(g);
    const NetworkFile back = read_network(text);
    CHECK(back.network == g);
    CHECK_FALSE(back.terminals.has_value());
    CHECK(write_network(back.network) == text);

    const GEdge q = thick_14_edge();
    const NetworkFile qf = read_network(write_network(q));
    REQUIRE(qf.terminals.has_value());
    CHECK(qf.terminals->first == 0);
    CHECK(qf.terminals->second == 1);
    CHECK(to_gedge(qf).network.edge_count() == q.network.edge_count());
  }

  TEST_CASE("native format errors") {
    CHECK_THROWS_AS(read_network("cfnet 5"), ParseError);
    CHECK_THROWS_AS(read_network("0 1 simple"), ParseError);
    CHECK_THROWS_AS(read_network("cfnet 5 2\n0 0 simple"), ParseError);
    CHECK_THROWS_AS(read_network("cfnet 5 2\n0 1 (1,2)"), ParseError);
    CHECK_THROWS_AS(read_network("cfnet 5 2\nterminals 0 0\n0 1 simple"), ParseError);
    CHECK_THROWS_AS(read_network("cfnet 5 2\n0 1 (1,2"), ParseError);
    CHECK_NOTHROW(read_network("# comment\ncfnet 5 2 # trailing\n0 1 (1,2)u(3,4)\n"));
  }

  TEST_CASE("abstract capacities must be symmetric") {
    Network g;
    g.add_vertices(2);
    CHECK_THROWS_AS(g.add_abstract_edge(0, 1, "(1,2)"), std::invalid_argument);
    CHECK_NOTHROW(g.add_abstract_edge(0, 1, "(2,3)"));
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 7), std::invalid_argument);
  }

  TEST_CASE("replace_edge splices in place") {
    const Network k4 = complete_graph(4);
    const Spliced s = replace_edge(k4, 2, petersen_minus_edge());
    CHECK(s.network.vertex_count() == 12);
    CHECK(s.network.edge_count() == 5 + 14);
    CHECK(s.placed.at(0) == k4.edge(2).tail);
    CHECK(s.placed.at(1) == k4.edge(2).head);
    CHECK(is_cubic(s.network) == false);
    // Edges before the replaced one keep their indices.
    CHECK(s.network.edge(0) == k4.edge(0));
    CHECK(s.network.edge(1) == k4.edge(1));
  }

  TEST_CASE("expand and smooth") {
    Network g = complete_graph(4);
    Network two;
    two.add_vertices(2);
    std::map<EdgeIndex, VertexId> at;
    const auto inc = g.incident_edges(0);
    at[inc[0]] = 0;
    at[inc[1]] = 1;
    at[inc[2]] = 1;
    const Spliced s = expand_vertex(g, 0, two, at);
    CHECK(s.network.vertex_count() == 5);
    CHECK(s.network.degree(s.placed.at(0)) == 1);
    CHECK(s.network.degree(s.placed.at(1)) == 2);
    const Network sm = smooth_vertex(s.network, s.placed.at(1));
    CHECK(sm.vertex_count() == 4);
    CHECK(sm.edge_count() == 5);
    CHECK_THROWS_AS(smooth_vertex(sm, 1), std::invalid_argument);
    CHECK_THROWS_AS(expand_vertex(g, 0, two, {}), std::invalid_argument);
  }

  TEST_CASE("gadget edges resolve") {
    Network g;
    g.add_vertices(2);
    g.add_edge(0, 1);
    g.add_gadget_edge(0, 1, "petersen_minus_edge");
    const GadgetResolver res = standard_resolver();
    const Network c = concretize(g, res);
    CHECK_FALSE(c.has_gadgets());
    CHECK(c.edge_count() == 15);
    CHECK(c.vertex_count() == 10);
    const Network a = abstractify(g, res);
    CHECK(a.edge(1).is_abstract());
    CHECK(std::get<AbstractEdge>(a.edge(1).kind).capacity == parse_interval_set("(4,1)", 5));
  }

  TEST_CASE("relabelled copies") {
    Network g;
    g.add_vertex(3);
    g.add_vertex(10);
    g.add_vertex(7);
    g.add_edge(10, 3);
    const Network r = g.relabeled();
    CHECK(r.vertices() == std::vector<VertexId>{0, 1, 2});
    CHECK(r.edge(0).tail == 2);
    CHECK(r.edge(0).head == 0);
  }

  TEST_CASE("hypergraph format") {
    const Hypergraph3 h = read_hypergraph("# fano\n1 2 3\n1 4 5\n\n2 4 6\n");
    CHECK(h.nodes == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(h.triplets.size() == 3);
    CHECK(h.occurrences() == std::vector<int>{2, 2, 1, 2, 1, 1});
    CHECK(read_hypergraph(write_hypergraph(h)).triplets == h.triplets);
    CHECK_THROWS_AS(read_hypergraph("1 2"), ParseError);
    CHECK_THROWS_AS(read_hypergraph("1 1 2"), ParseError);
  }
}
