#pragma once

// Named graphs, g-edges and the generators that build networks without
// sub-5-flows.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cflow/interval_set.hpp"
#include "cflow/network.hpp"

namespace cflow {

// Outer cycle 0-1-2-3-4, spokes i-(i+5), inner pentagram (5+i)-(5+(i+2)%5).
Network petersen(const Rational& r = Rational(5));
// Petersen without the outer edge 0-1; terminals 0 and 1.
GEdge petersen_minus_edge(const Rational& r = Rational(5));
Network complete_graph(int n, const Rational& r = Rational(5));
// One simple edge 0 -> 1.
GEdge simple_gedge(const Rational& r = Rational(5));

// b is attached after a: a's sink becomes b's source.
GEdge serial(const GEdge& a, const GEdge& b);
// Sources identified, sinks identified.
GEdge parallel(const GEdge& a, const GEdge& b);

// K4 on u=0, v=1, w=2, x=3 with uw and vw replaced by A-edges and uv
// removed; terminals u and v.
// In all gadget builders, concrete = false keeps every Petersen-minus-edge
// piece as an abstract (4,1)-edge; concrete = true splices the graph itself.
GEdge thick_14_edge(bool concrete = false);
// (1,2)u(3,4): two Petersen-minus-edge gadgets in parallel, then a simple edge
// in series.
GEdge measure2_edge(bool concrete = false);
// The (4,1)u(2,3) gadget: as the thick edge, with (1,2)u(3,4)-edges.
GEdge k4_gadget(bool concrete = false);
// Thick edge whose simple edges ux and vx are each replaced by a thick edge.
GEdge butterfly(bool concrete = true);

// Gadget names usable as "gadget:<name>" edges: petersen_minus_edge, thick14,
// measure2_edge, k4_gadget, butterfly, and q_r (declared capacity only).
GadgetResolver standard_resolver();
std::vector<std::string> gadget_names();

struct GadgetCatalogEntry {
  std::string name;
  IntervalSet capacity;
  // Expression over the generators, in the grammar of evaluate_expression.
  std::string recipe;
  std::string note;
  int amplitude;
  int measure;
  // Two-terminal realisation, if available.
  std::function<GEdge(bool concrete)> build;
};

// The sixteen graphic capacities of SI_5 listed with their derivations.
std::vector<GadgetCatalogEntry> gi5_catalog();

// Cycles are given as vertex sequences v0 v1 ... v(l-1), closed implicitly.
// Index of the lowest-index edge joining consecutive vertices; throws if one
// is missing.
std::vector<EdgeIndex> cycle_edges(const Network& g, const std::vector<VertexId>& cycle);

// Replaces the edges of an odd cycle through degree-3 vertices by abstract
// A-edges, Me(A) = 2, when every third edge has capacity inside (1,4).
Network odd_cycle_construction(const Network& g, const std::vector<VertexId>& cycle,
                               const IntervalSet& a);

// Replaces the i-th edge of a cycle of simple edges by an abstract edge of
// capacity assignment[i]. The union of the assigned sets must have amplitude
// at most 3.
Network cycle_replacement(const Network& g, const std::vector<VertexId>& cycle,
                          const std::vector<IntervalSet>& assignment);

// Replaces the simple edges e1, e2 at a degree-3 vertex v by (2,3)-edges.
Network force_ge5_pair(const Network& g, VertexId v, EdgeIndex e1, EdgeIndex e2);
// Adds an abstract empty-capacity edge u -> v.
Network insert_empty_edge(const Network& g, VertexId u, VertexId v);

// K4 whose triangle 0-1-2 carries abstract (4,1)-edges.
Network k4_triangle_41();
// The cubic 28-vertex graph obtained from K4 with three Petersen-minus-edge
// splices, each degree-5 vertex split into two vertices one of which is
// smoothed away.
Network s28();
// Depth 0 is the Petersen graph. Each level replaces one 5-cycle by
// Petersen-minus-edge gadgets and splits the degree-5 vertices as in s28().
Network mr_family(int depth);
// The network of the last level of mr_family(depth) before any gadget is
// spliced: the 5-cycle carries abstract (4,1)-edges. depth >= 1.
Network mr_family_abstract(int depth);

// A 5-cycle of simple edges, the lexicographically first by vertex sequence
// starting at its smallest vertex.
std::optional<std::vector<VertexId>> find_cycle_of_length(const Network& g, int length);
// Shortest odd cycle, if any.
std::optional<std::vector<VertexId>> find_odd_cycle(const Network& g);

// Uniform-ish random simple cubic graph on n vertices (n even, n >= 4) by the
// pairing model with restarts.
Network random_cubic_graph(int n, std::uint64_t seed);

}  // namespace cflow
