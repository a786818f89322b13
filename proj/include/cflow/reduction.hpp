#pragma once

// Compiling a 3-hypergraph H into the network G(H) whose circular flow
// number is below 5 exactly when H is 2-colorable.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cflow/flow_engine.hpp"
#include "cflow/network.hpp"

namespace cflow {

// Node -> color (0 or 1).
using Coloring = std::map<int, int>;

struct NodeCycle {
  int node;
  // Cycle order; even positions are positive terminals. The k-th occurrence
  // of the node (in triplet list order) uses positions 2k and 2k+1.
  std::vector<VertexId> vertices;
  // edges[i] runs vertices[i] -> vertices[i+1].
  std::vector<EdgeIndex> edges;
};

struct TripletCycle {
  std::array<int, 3> nodes;
  // T1+, T2+, T3+, T3-, T2-, T1-.
  std::array<VertexId, 6> vertices;
  // edges[i] runs vertices[i] -> vertices[(i+1)%6].
  std::array<EdgeIndex, 6> edges;
};

struct Occurrence {
  int node;
  std::size_t triplet;
  int index;  // 0..2, position of the node inside the triplet
  EdgeIndex positive;  // positive terminal -> T(index+1)+
  EdgeIndex negative;  // negative terminal -> T(index+1)-
};

struct ReductionLayout {
  std::vector<NodeCycle> nodes;
  std::vector<TripletCycle> triplets;
  std::vector<Occurrence> occurrences;
  // Nodes in no triplet; they take either color.
  std::vector<int> dropped;
};

struct Reduction {
  Network network;
  ReductionLayout layout;
};

// Node-cycle and connector edges carry (1,2)u(3,4), triplet-cycle edges are
// simple.
Reduction build_GH(const Hypergraph3& h);
// Same layout with capacity (1,2)u(r-2,r-1) for 4 < r <= 5.
Reduction rational_variant(const Hypergraph3& h, const Rational& r);
// Replaces every (1,2)u(3,4)-edge by the concrete measure-2 g-edge (r = 5).
Network concrete_GH(const Reduction& reduction);

// Lines "node x: v0 v1 ...", "triplet i: T1+ T2+ T3+ T3- T2- T1-" and
// "connector x i j: e+ e-".
std::string write_layout(const ReductionLayout& layout);

std::optional<Coloring> two_coloring(const Hypergraph3& h);
bool is_2_colorable(const Hypergraph3& h);
bool is_proper_coloring(const Hypergraph3& h, const Coloring& coloring);

// Default epsilon (r-4)/12, i.e. 1/12 at r = 5. Requires 0 < eps < (r-4)/6.
Rational default_epsilon(const Rational& r);
FlowAssignment witness_flow(const Reduction& reduction, const Hypergraph3& h, const Coloring& coloring,
                            std::optional<Rational> epsilon = std::nullopt);

// Colors each node by the unit interval of the connector values at its
// positive terminals. nullopt if these are inconsistent.
std::optional<Coloring> extract_coloring(const Reduction& reduction, const FlowAssignment& f);

struct EquivalenceReport {
  bool colorable = false;
  Verdict verdict = Verdict::Unknown;
  // Both sides known and equal.
  bool holds = false;
  // Set when H is colorable: the witness flow re-verifies.
  std::optional<bool> witness_verified;
  // Set when the engine returns a certificate: the extracted coloring is proper.
  std::optional<bool> extraction_proper;
  std::uint64_t nodes = 0;
};

EquivalenceReport verify_equivalence(const Hypergraph3& h, const SearchOptions& opts = {},
                                     const Rational& r = Rational(5));

}  // namespace cflow
