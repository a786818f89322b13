#include "cflow/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cflow {

namespace {

// Copies the structure of `piece` into a network with the ratio of `target`.
// Abstract capacities only make sense for their own ratio.
void require_compatible(const Network& target, const Network& piece) {
  if (target.r() == piece.r()) return;
  for (const auto& e : piece.edges()) {
    if (e.is_abstract()) {
      throw std::invalid_argument("cannot splice abstract edges of ratio " + to_string(piece.r()) +
                                  " into a network of ratio " + to_string(target.r()));
    }
  }
}

}  // namespace

Network::Network(Rational r) : context_(ScaledContext::of(r)) {}

VertexId Network::add_vertex() {
  const VertexId id = next_id_;
  add_vertex(id);
  return id;
}

void Network::add_vertex(VertexId id) {
  if (id < 0) throw std::invalid_argument("vertex ids must be non-negative");
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
  if (it != vertices_.end() && *it == id) {
    throw std::invalid_argument("duplicate vertex id " + std::to_string(id));
  }
  vertices_.insert(it, id);
  next_id_ = std::max(next_id_, id + 1);
}

std::vector<VertexId> Network::add_vertices(std::size_t n) {
  std::vector<VertexId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(add_vertex());
  return ids;
}

EdgeIndex Network::add_edge(VertexId tail, VertexId head, EdgeKind kind) {
  if (tail == head) throw std::invalid_argument("self-loop at vertex " + std::to_string(tail));
  if (!has_vertex(tail) || !has_vertex(head)) {
    throw std::invalid_argument("edge endpoint is not a vertex: " + std::to_string(tail) + " " +
                                std::to_string(head));
  }
  if (const auto* a = std::get_if<AbstractEdge>(&kind)) {
    if (a->capacity.modulus() != context_.p) {
      throw std::invalid_argument("abstract capacity modulus " +
                                  std::to_string(a->capacity.modulus()) + " does not match p = " +
                                  std::to_string(context_.p));
    }
    if (!a->capacity.is_symmetric()) {
      throw std::invalid_argument("abstract capacity " + to_string(a->capacity) +
                                  " is not symmetric");
    }
  }
  edges_.push_back(Edge{tail, head, std::move(kind)});
  return edges_.size() - 1;
}

EdgeIndex Network::add_abstract_edge(VertexId tail, VertexId head, std::string_view capacity) {
  return add_edge(tail, head, AbstractEdge{parse_capacity(capacity, context_)});
}

EdgeIndex Network::add_gadget_edge(VertexId tail, VertexId head, std::string name) {
  return add_edge(tail, head, GadgetEdge{std::move(name)});
}

void Network::remove_edge(EdgeIndex e) {
  if (e >= edges_.size()) throw std::out_of_range("edge index " + std::to_string(e));
  edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(e));
}

void Network::remove_vertex(VertexId v) {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw std::invalid_argument("no vertex " + std::to_string(v));
  }
  vertices_.erase(it);
  std::erase_if(edges_, [v](const Edge& e) { return e.tail == v || e.head == v; });
}

void Network::set_kind(EdgeIndex e, EdgeKind kind) {
  const Edge& old = edges_.at(e);
  Edge replacement{old.tail, old.head, std::move(kind)};
  // Route through add_edge for validation, then move into place.
  const auto idx = add_edge(replacement.tail, replacement.head, std::move(replacement.kind));
  edges_[e] = std::move(edges_[idx]);
  edges_.pop_back();
}

bool Network::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::vector<EdgeIndex> Network::incident_edges(VertexId v) const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex i = 0; i < edges_.size(); ++i) {
    if (edges_[i].tail == v || edges_[i].head == v) out.push_back(i);
  }
  return out;
}

int Network::degree(VertexId v) const { return static_cast<int>(incident_edges(v).size()); }

std::size_t Network::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw std::invalid_argument("no vertex " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Network::all_simple() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_simple(); });
}

bool Network::has_gadgets() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_gadget(); });
}

Network Network::relabeled() const {
  Network out(context_.r);
  out.add_vertices(vertices_.size());
  for (const auto& e : edges_) {
    out.add_edge(static_cast<VertexId>(index_of(e.tail)), static_cast<VertexId>(index_of(e.head)),
                 e.kind);
  }
  return out;
}

void GEdge::validate() const {
  if (source == sink) throw std::invalid_argument("g-edge terminals must differ");
  if (!network.has_vertex(source) || !network.has_vertex(sink)) {
    throw std::invalid_argument("g-edge terminal is not a vertex of its network");
  }
}

Spliced expand_vertex(const Network& g, VertexId x, const Network& expansion,
                      const std::map<EdgeIndex, VertexId>& attachment) {
  if (!g.has_vertex(x)) throw std::invalid_argument("no vertex " + std::to_string(x));
  require_compatible(g, expansion);
  const auto incident = g.incident_edges(x);
  for (const EdgeIndex e : incident) {
    auto it = attachment.find(e);
    if (it == attachment.end()) {
      throw std::invalid_argument("edge " + std::to_string(e) + " at vertex " + std::to_string(x) +
                                  " has no attachment");
    }
    if (!expansion.has_vertex(it->second)) {
      throw std::invalid_argument("attachment target is not a vertex of the expansion graph");
    }
  }

  Spliced out{Network(g.r()), {}};
  Network& net = out.network;
  for (const VertexId v : g.vertices()) {
    if (v != x) net.add_vertex(v);
  }
  // Fresh ids never reuse x.
  VertexId fresh = std::max(net.next_vertex_id(), g.next_vertex_id());
  for (const VertexId v : expansion.vertices()) {
    out.placed[v] = fresh;
    net.add_vertex(fresh++);
  }
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    if (e.tail != x && e.head != x) {
      net.add_edge(e.tail, e.head, e.kind);
      continue;
    }
    const VertexId target = out.placed.at(attachment.at(i));
    net.add_edge(e.tail == x ? target : e.tail, e.head == x ? target : e.head, e.kind);
  }
  for (const Edge& e : expansion.edges()) {
    net.add_edge(out.placed.at(e.tail), out.placed.at(e.head), e.kind);
  }
  return out;
}

Network smooth_vertex(const Network& g, VertexId x) {
  const auto incident = g.incident_edges(x);
  if (incident.size() != 2) {
    throw std::invalid_argument("vertex " + std::to_string(x) + " has degree " +
                                std::to_string(incident.size()) + ", expected 2");
  }
  const Edge& first = g.edge(incident[0]);
  const Edge& second = g.edge(incident[1]);
  if (!first.is_simple() || !second.is_simple()) {
    throw std::invalid_argument("smoothing through a non-simple edge is not defined");
  }
  const VertexId u = first.other(x);
  const VertexId v = second.other(x);
  if (u == v) throw std::invalid_argument("smoothing would create a self-loop");

  Network out(g.r());
  for (const VertexId w : g.vertices()) {
    if (w != x) out.add_vertex(w);
  }
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (i == incident[0]) {
      out.add_edge(u, v, SimpleEdge{});
    } else if (i != incident[1]) {
      out.add_edge(g.edge(i).tail, g.edge(i).head, g.edge(i).kind);
    }
  }
  return out;
}

Spliced replace_edge(const Network& g, EdgeIndex e, const GEdge& q) {
  q.validate();
  require_compatible(g, q.network);
  const Edge target = g.edge(e);

  Spliced out{Network(g.r()), {}};
  Network& net = out.network;
  for (const VertexId v : g.vertices()) net.add_vertex(v);
  out.placed[q.source] = target.tail;
  out.placed[q.sink] = target.head;
  for (const VertexId v : q.network.vertices()) {
    if (v == q.source || v == q.sink) continue;
    out.placed[v] = net.add_vertex();
  }
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (i != e) {
      net.add_edge(g.edge(i).tail, g.edge(i).head, g.edge(i).kind);
      continue;
    }
    for (const Edge& inner : q.network.edges()) {
      net.add_edge(out.placed.at(inner.tail), out.placed.at(inner.head), inner.kind);
    }
  }
  return out;
}

Network replace_edge(const Network& g, EdgeIndex e, std::string_view capacity) {
  return replace_edge(g, e, parse_capacity(capacity, g.context()));
}

Network replace_edge(const Network& g, EdgeIndex e, const IntervalSet& scaled_capacity) {
  Network out = g;
  out.set_kind(e, AbstractEdge{scaled_capacity});
  return out;
}

Network concretize(const Network& g, const GadgetResolver& resolver) {
  Network current = g;
  // Expanded pieces may contain further gadgets; the depth guard catches
  // self-referential catalogs.
  for (int depth = 0; depth < 64; ++depth) {
    bool changed = false;
    for (EdgeIndex i = current.edge_count(); i-- > 0;) {
      const auto* gadget = std::get_if<GadgetEdge>(&current.edge(i).kind);
      if (gadget == nullptr) continue;
      current = replace_edge(current, i, resolver.build(gadget->name)).network;
      changed = true;
    }
    if (!changed) return current;
  }
  throw std::runtime_error("gadget expansion did not terminate");
}

Network abstractify(const Network& g, const GadgetResolver& resolver) {
  Network out = g;
  for (EdgeIndex i = 0; i < out.edge_count(); ++i) {
    const auto* gadget = std::get_if<GadgetEdge>(&out.edge(i).kind);
    if (gadget == nullptr) continue;
    out.set_kind(i, AbstractEdge{resolver.declared_capacity(gadget->name, out.context())});
  }
  return out;
}

GEdge concretize(const GEdge& q, const GadgetResolver& resolver) {
  return GEdge{concretize(q.network, resolver), q.source, q.sink};
}

GEdge abstractify(const GEdge& q, const GadgetResolver& resolver) {
  return GEdge{abstractify(q.network, resolver), q.source, q.sink};
}

Hypergraph3 Hypergraph3::from_triplets(std::vector<std::array<int, 3>> triplets) {
  std::set<int> seen;
  for (const auto& t : triplets) seen.insert(t.begin(), t.end());
  Hypergraph3 h{{seen.begin(), seen.end()}, std::move(triplets)};
  h.validate();
  return h;
}

void Hypergraph3::validate() const {
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto& t = triplets[i];
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
      throw std::invalid_argument("triplet " + std::to_string(i) + " repeats a node");
    }
    for (const int x : t) {
      if (!std::binary_search(nodes.begin(), nodes.end(), x)) {
        throw std::invalid_argument("triplet " + std::to_string(i) + " uses undeclared node " +
                                    std::to_string(x));
      }
    }
  }
}

std::vector<int> Hypergraph3::occurrences() const {
  std::vector<int> count(nodes.size(), 0);
  for (const auto& t : triplets) {
    for (const int x : t) {
      const auto pos = std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin();
      ++count[static_cast<std::size_t>(pos)];
    }
  }
  return count;
}

}  // namespace cflow
