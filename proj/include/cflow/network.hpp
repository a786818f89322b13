#pragma once

// Multigraphs whose edges are simple edges, capacity-labelled abstract
// g-edges, or named gadgets that are expanded on demand.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cflow/interval_set.hpp"
#include "cflow/rational.hpp"
#include "cflow/scaled_context.hpp"

namespace cflow {

using VertexId = std::int64_t;
using EdgeIndex = std::size_t;

struct SimpleEdge {
  friend bool operator==(const SimpleEdge&, const SimpleEdge&) = default;
};

// Capacity is stored scaled, i.e. as a member of SI_p for the network's r.
struct AbstractEdge {
  IntervalSet capacity;
  friend bool operator==(const AbstractEdge&, const AbstractEdge&) = default;
};

struct GadgetEdge {
  std::string name;
  friend bool operator==(const GadgetEdge&, const GadgetEdge&) = default;
};

using EdgeKind = std::variant<SimpleEdge, AbstractEdge, GadgetEdge>;

// The reference orientation of an edge is tail -> head.
struct Edge {
  VertexId tail;
  VertexId head;
  EdgeKind kind;

  bool is_simple() const { return std::holds_alternative<SimpleEdge>(kind); }
  bool is_abstract() const { return std::holds_alternative<AbstractEdge>(kind); }
  bool is_gadget() const { return std::holds_alternative<GadgetEdge>(kind); }
  VertexId other(VertexId end) const { return end == tail ? head : tail; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class Network {
 public:
  explicit Network(Rational r = Rational(5));

  const Rational& r() const { return context_.r; }
  const ScaledContext& context() const { return context_; }

  // Next free id is one past the largest id used so far.
  VertexId add_vertex();
  void add_vertex(VertexId id);
  // Adds n fresh vertices and returns their ids in order.
  std::vector<VertexId> add_vertices(std::size_t n);

  // Throws on self-loops and unknown endpoints. Abstract capacities must be
  // symmetric members of SI_p.
  EdgeIndex add_edge(VertexId tail, VertexId head, EdgeKind kind = SimpleEdge{});
  EdgeIndex add_abstract_edge(VertexId tail, VertexId head, std::string_view capacity);
  EdgeIndex add_gadget_edge(VertexId tail, VertexId head, std::string name);

  void remove_edge(EdgeIndex e);
  // Removes the vertex and every incident edge.
  void remove_vertex(VertexId v);
  // Replaces the edge kind in place.
  void set_kind(EdgeIndex e, EdgeKind kind);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(VertexId v) const;
  std::vector<EdgeIndex> incident_edges(VertexId v) const;
  int degree(VertexId v) const;
  // Position of v in vertices(), for dense per-vertex arrays.
  std::size_t index_of(VertexId v) const;
  VertexId next_vertex_id() const { return next_id_; }

  bool all_simple() const;
  bool has_gadgets() const;

  // Copy with vertices renamed 0..n-1 in increasing id order.
  Network relabeled() const;

  // Labelled equality: same ratio, vertex ids and edge list.
  friend bool operator==(const Network& a, const Network& b) {
    return a.context_ == b.context_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  ScaledContext context_;
  std::vector<VertexId> vertices_;  // sorted
  std::vector<Edge> edges_;
  VertexId next_id_ = 0;
};

// A two-terminal network: flow enters at `source` and leaves at `sink`.
struct GEdge {
  Network network;
  VertexId source;
  VertexId sink;

  // Throws unless source != sink and both are vertices of the network.
  void validate() const;
};

// Result of a splice: the new network and where each vertex of the inserted
// piece ended up.
struct Spliced {
  Network network;
  std::map<VertexId, VertexId> placed;
};

// Deletes x, inserts a copy of `expansion`, and reattaches every former edge
// at x to the vertex given by `attachment` (keyed by edge index in g). The
// expansion must share the ratio r of g. New vertices get fresh ids in the
// order of expansion.vertices().
Spliced expand_vertex(const Network& g, VertexId x, const Network& expansion,
                      const std::map<EdgeIndex, VertexId>& attachment);

// Removes a degree-2 vertex whose two edges are simple and joins its
// neighbours by one simple edge, placed at the lower of the two edge indices.
// The new edge is oriented from the neighbour on the lower-index edge.
Network smooth_vertex(const Network& g, VertexId x);

// Splices q in place of edge e: q.source is identified with the tail of e and
// q.sink with its head. q's edges take e's position in the edge list.
Spliced replace_edge(const Network& g, EdgeIndex e, const GEdge& q);
// Installs an abstract edge with the given capacity (text in units of r).
Network replace_edge(const Network& g, EdgeIndex e, std::string_view capacity);
Network replace_edge(const Network& g, EdgeIndex e, const IntervalSet& scaled_capacity);

// Named gadgets: a concrete two-terminal realisation and the capacity the
// gadget is known to have at a given ratio.
struct GadgetResolver {
  std::function<GEdge(std::string_view name)> build;
  std::function<IntervalSet(std::string_view name, const ScaledContext& ctx)> declared_capacity;
};

// Splices every gadget edge recursively until none is left.
Network concretize(const Network& g, const GadgetResolver& resolver);
// Replaces every gadget edge by an abstract edge with its declared capacity.
Network abstractify(const Network& g, const GadgetResolver& resolver);
GEdge concretize(const GEdge& q, const GadgetResolver& resolver);
GEdge abstractify(const GEdge& q, const GadgetResolver& resolver);

// A 3-uniform hypergraph. Triplets keep input order; nodes are sorted.
struct Hypergraph3 {
  std::vector<int> nodes;
  std::vector<std::array<int, 3>> triplets;

  // Nodes become exactly those that occur in some triplet.
  static Hypergraph3 from_triplets(std::vector<std::array<int, 3>> triplets);
  // Throws unless every triplet has three distinct declared nodes.
  void validate() const;
  // Number of triplets containing each node, in node order.
  std::vector<int> occurrences() const;
};

}  // namespace cflow
