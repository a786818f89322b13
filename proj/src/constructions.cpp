#include "cflow/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "cflow/interval_expr.hpp"

namespace cflow {

namespace {

IntervalSet five(std::string_view text) { return parse_interval_set(text, 5); }

void require_ratio_five(const Network& g, const char* what) {
  if (g.r() != Rational(5)) throw std::invalid_argument(std::string(what) + " is defined for r = 5");
}

void require_same_ratio(const Network& a, const Network& b) {
  if (a.r() == b.r()) return;
  const auto abstract = [](const Network& g) {
    return std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.is_abstract(); });
  };
  if (abstract(a) || abstract(b)) {
    throw std::invalid_argument("joined g-edges have different ratios and abstract edges");
  }
}

// Copies `piece` into `net`; vertices already in `fixed` are identified,
// the others get fresh ids.
std::map<VertexId, VertexId> place(Network& net, const Network& piece, std::map<VertexId, VertexId> fixed) {
  for (const VertexId v : piece.vertices()) {
    if (!fixed.count(v)) fixed[v] = net.add_vertex();
  }
  for (const Edge& e : piece.edges()) net.add_edge(fixed.at(e.tail), fixed.at(e.head), e.kind);
  return fixed;
}

// Petersen-minus-edge with the gadget left unresolved.
GEdge gadget_edge(const std::string& name) {
  Network g(5);
  g.add_vertices(2);
  g.add_gadget_edge(0, 1, name);
  return GEdge{g, 0, 1};
}

// Concrete: every gadget spliced in. Otherwise Petersen-minus-edge pieces
// become abstract (4,1)-edges and the remaining gadgets are spliced.
GEdge finish(const GEdge& q, bool concrete) {
  GadgetResolver resolver = standard_resolver();
  if (!concrete) {
    resolver.build = [inner = resolver.build](std::string_view name) -> GEdge {
      if (name != "petersen_minus_edge") return inner(name);
      Network g(5);
      g.add_vertices(2);
      g.add_edge(0, 1, AbstractEdge{five("(4,1)")});
      return GEdge{g, 0, 1};
    };
  }
  return concretize(q, resolver);
}

// K4 on u=0, v=1, w=2, x=3 without uv; uw and vw are `name` gadgets.
GEdge k4_frame(const std::string& name) {
  Network g(5);
  g.add_vertices(4);
  g.add_gadget_edge(0, 2, name);
  g.add_gadget_edge(1, 2, name);
  g.add_edge(0, 3);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  return GEdge{g, 0, 1};
}

GEdge measure2_frame() {
  Network g(5);
  g.add_vertices(3);
  g.add_gadget_edge(0, 1, "petersen_minus_edge");
  g.add_gadget_edge(0, 1, "petersen_minus_edge");
  g.add_edge(1, 2);
  return GEdge{g, 0, 2};
}

GEdge butterfly_frame() {
  GEdge q = k4_frame("petersen_minus_edge");
  // Edges 2 and 3 are ux and vx.
  q.network.set_kind(2, GadgetEdge{"thick14"});
  q.network.set_kind(3, GadgetEdge{"thick14"});
  return q;
}

// Splits x into two vertices; the second receives, for every piece, the edge
// from x to the piece's lowest-id neighbour of x, and is then smoothed.
Network split_vertex(const Network& g, VertexId x, const std::vector<std::set<VertexId>>& pieces) {
  Network two(g.r());
  two.add_vertices(2);
  std::map<EdgeIndex, VertexId> attachment;
  std::set<EdgeIndex> second;
  for (const auto& piece : pieces) {
    std::optional<EdgeIndex> pick;
    VertexId best = 0;
    for (const EdgeIndex e : g.incident_edges(x)) {
      const VertexId y = g.edge(e).other(x);
      if (!piece.count(y)) continue;
      if (!pick || y < best) {
        pick = e;
        best = y;
      }
    }
    if (!pick) throw std::logic_error("vertex is not attached to a spliced piece");
    second.insert(*pick);
  }
  for (const EdgeIndex e : g.incident_edges(x)) attachment[e] = second.count(e) ? 1 : 0;
  const Spliced s = expand_vertex(g, x, two, attachment);
  return smooth_vertex(s.network, s.placed.at(1));
}

// Splices Petersen-minus-edge into each edge of the cycle, then splits every
// cycle vertex as in split_vertex.
Network splice_cycle(const Network& g, const std::vector<VertexId>& cycle) {
  auto edges = cycle_edges(g, cycle);
  std::vector<std::set<VertexId>> internal(edges.size());
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] > edges[b]; });
  Network current = g;
  const GEdge pstar = petersen_minus_edge(g.r());
  for (const std::size_t i : order) {
    const Spliced s = replace_edge(current, edges[i], pstar);
    for (const auto& [from, to] : s.placed) {
      if (from != pstar.source && from != pstar.sink) internal[i].insert(to);
    }
    current = s.network;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    // Vertex cycle[i] ends edges i-1 and i.
    const std::size_t prev = (i + cycle.size() - 1) % cycle.size();
    current = split_vertex(current, cycle[i], {internal[prev], internal[i]});
  }
  return current.relabeled();
}

}  // namespace

Network petersen(const Rational& r) {
  Network g(r);
  g.add_vertices(10);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) g.add_edge(i, i + 5);
  for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
  return g;
}

GEdge petersen_minus_edge(const Rational& r) {
  Network g = petersen(r);
  g.remove_edge(0);
  return GEdge{g, 0, 1};
}

Network complete_graph(int n, const Rational& r) {
  Network g(r);
  g.add_vertices(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

GEdge simple_gedge(const Rational& r) {
  Network g(r);
  g.add_vertices(2);
  g.add_edge(0, 1);
  return GEdge{g, 0, 1};
}

GEdge serial(const GEdge& a, const GEdge& b) {
  a.validate();
  b.validate();
  require_same_ratio(a.network, b.network);
  Network net(a.network.r());
  const auto pa = place(net, a.network, {});
  const auto pb = place(net, b.network, {{b.source, pa.at(a.sink)}});
  return GEdge{net, pa.at(a.source), pb.at(b.sink)};
}

GEdge parallel(const GEdge& a, const GEdge& b) {
  a.validate();
  b.validate();
  require_same_ratio(a.network, b.network);
  Network net(a.network.r());
  const auto pa = place(net, a.network, {});
  place(net, b.network, {{b.source, pa.at(a.source)}, {b.sink, pa.at(a.sink)}});
  return GEdge{net, pa.at(a.source), pa.at(a.sink)};
}

GEdge thick_14_edge(bool concrete) { return finish(k4_frame("petersen_minus_edge"), concrete); }
GEdge measure2_edge(bool concrete) { return finish(measure2_frame(), concrete); }
GEdge k4_gadget(bool concrete) { return finish(k4_frame("measure2_edge"), concrete); }
GEdge butterfly(bool concrete) { return finish(butterfly_frame(), concrete); }

std::vector<std::string> gadget_names() {
  return {"petersen_minus_edge", "thick14", "measure2_edge", "k4_gadget", "butterfly", "q_r"};
}

GadgetResolver standard_resolver() {
  GadgetResolver resolver;
  resolver.build = [](std::string_view name) -> GEdge {
    if (name == "petersen_minus_edge") return petersen_minus_edge();
    if (name == "thick14") return k4_frame("petersen_minus_edge");
    if (name == "measure2_edge") return measure2_frame();
    if (name == "k4_gadget") return k4_frame("measure2_edge");
    if (name == "butterfly") return butterfly_frame();
    if (name == "q_r") throw std::invalid_argument("gadget q_r has no concrete realisation");
    throw std::invalid_argument("unknown gadget '" + std::string(name) + "'");
  };
  resolver.declared_capacity = [](std::string_view name, const ScaledContext& ctx) -> IntervalSet {
    const auto interval = [&](int a, int b) {
      const std::pair<int, int> iv{a, b};
      return IntervalSet::from_intervals(ctx.p, std::span(&iv, 1));
    };
    if (name == "petersen_minus_edge") {
      if (!(ctx.r > Rational(4) && ctx.r <= Rational(5))) {
        throw std::invalid_argument("petersen_minus_edge capacity is declared for 4 < r <= 5");
      }
      return interval(4 * ctx.q, ctx.p - 4 * ctx.q);
    }
    if (name == "q_r") return interval(ctx.p - ctx.q, ctx.q);
    const bool known = name == "thick14" || name == "measure2_edge" || name == "k4_gadget" ||
                       name == "butterfly";
    if (!known) throw std::invalid_argument("unknown gadget '" + std::string(name) + "'");
    if (!(ctx.r == Rational(5))) {
      throw std::invalid_argument("gadget '" + std::string(name) + "' capacity is declared for r = 5");
    }
    if (name == "measure2_edge") return five("(1,2)u(3,4)");
    if (name == "k4_gadget") return five("(4,1)u(2,3)");
    return five("(1,4)");
  };
  return resolver;
}

std::vector<GadgetCatalogEntry> gi5_catalog() {
  using Build = std::function<GEdge(bool)>;
  const Build S = [](bool) { return simple_gedge(); };
  const Build P = [](bool c) { return finish(gadget_edge("petersen_minus_edge"), c); };
  const Build M = [](bool c) { return measure2_edge(c); };
  const Build K = [](bool c) { return k4_gadget(c); };
  const auto par = [](Build a, Build b) -> Build {
    return [a, b](bool c) { return parallel(a(c), b(c)); };
  };
  const auto ser = [](Build a, Build b) -> Build { return [a, b](bool c) { return serial(a(c), b(c)); }; };

  const std::string m2 = "(((4,1)+(4,1))^(1,4))";
  const std::string mm = "(" + m2 + "+" + m2 + ")";
  const std::string k = "((4,1)u(2,3))";

  struct Row {
    std::string name;
    std::string recipe;
    std::string note;
    int amplitude;
    int measure;
    Build build;
  };
  const std::vector<Row> rows = {
      {"(1,4)", "(1,4)", "simple edge", 3, 3, S},
      {"full", "(1,4)+(1,4)", "two simple edges in parallel", 5, 5, par(S, S)},
      {"(4,1)", "(4,1)", "Petersen graph minus an edge", 2, 2, P},
      {"empty", "(1,4)^(4,1)", "simple edge in series with (4,1)", 0, 0, ser(S, P)},
      {"(3,2)", "(4,1)+(4,1)", "two (4,1)-edges in parallel", 4, 4, par(P, P)},
      {"(0,0)", "(4,1)+(1,4)", "(4,1)-edge parallel to a simple edge", 5, 5, par(P, S)},
      {"(4,0)u(0,1)", "(4,1)^((4,1)+(1,4))", "(4,1) in series with (0,0)", 2, 2, ser(P, par(P, S))},
      {"(3,0)u(0,2)", "((4,1)+(1,4))^((4,1)+(4,1))", "(0,0) in series with (3,2)", 4, 4,
       ser(par(P, S), par(P, P))},
      {"(1,2)u(3,4)", m2, "(3,2) in series with a simple edge", 3, 2, M},
      {"full-{1,4}", mm, "two (1,2)u(3,4)-edges in parallel", 5, 5, par(M, M)},
      {"full-{0,1,4}", "(" + mm + "^((4,1)+(1,4)))", "full-{1,4} in series with (0,0)", 5, 5,
       ser(par(M, M), par(P, S))},
      {"(3,2)-{1,4}", "((4,1)+(4,1))^" + mm, "(3,2) in series with full-{1,4}", 4, 4,
       ser(par(P, P), par(M, M))},
      {"(3,2)-{0,1,4}", "((4,1)+(4,1))^(" + mm + "^((4,1)+(1,4)))", "(3,2) in series with full-{0,1,4}",
       4, 4, ser(par(P, P), ser(par(M, M), par(P, S)))},
      {"(4,1)u(2,3)", k, "K4 with two (1,2)u(3,4)-edges on a triangle, third edge removed", 4, 3, K},
      {"(4,0)u(0,1)u(2,3)", k + "^((4,1)+(1,4))", "(4,1)u(2,3) in series with (0,0)", 4, 3,
       ser(K, par(P, S))},
      {"(2,3)", k + "^(1,4)", "(4,1)u(2,3) in series with a simple edge", 1, 1, ser(K, S)},
  };

  std::vector<GadgetCatalogEntry> out;
  for (const Row& row : rows) {
    std::string declared = row.name;
    if (row.name == "full-{1,4}") declared = "(1,4)u(4,1)";
    if (row.name == "full-{0,1,4}") declared = "(4,0)u(0,1)u(1,4)";
    if (row.name == "(3,2)-{1,4}") declared = "(3,4)u(4,1)u(1,2)";
    if (row.name == "(3,2)-{0,1,4}") declared = "(3,4)u(4,0)u(0,1)u(1,2)";
    out.push_back({row.name, five(declared), row.recipe, row.note, row.amplitude, row.measure, row.build});
  }
  return out;
}

std::vector<EdgeIndex> cycle_edges(const Network& g, const std::vector<VertexId>& cycle) {
  if (cycle.size() < 2) throw std::invalid_argument("a cycle needs at least two vertices");
  std::set<VertexId> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != cycle.size()) throw std::invalid_argument("cycle repeats a vertex");
  std::vector<EdgeIndex> out;
  std::set<EdgeIndex> used;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const VertexId u = cycle[i];
    const VertexId v = cycle[(i + 1) % cycle.size()];
    std::optional<EdgeIndex> pick;
    for (const EdgeIndex e : g.incident_edges(u)) {
      if (g.edge(e).other(u) == v && !used.count(e)) {
        pick = e;
        break;
      }
    }
    if (!pick) {
      throw std::invalid_argument("no edge between " + std::to_string(u) + " and " + std::to_string(v));
    }
    used.insert(*pick);
    out.push_back(*pick);
  }
  return out;
}

Network odd_cycle_construction(const Network& g, const std::vector<VertexId>& cycle, const IntervalSet& a) {
  require_ratio_five(g, "odd_cycle_construction");
  if (cycle.size() % 2 == 0) throw std::invalid_argument("cycle length must be odd");
  if (a.modulus() != 5 || measure(a) != 2) throw std::invalid_argument("capacity must have measure 2");
  if (!a.is_symmetric()) throw std::invalid_argument("capacity must be symmetric");
  const auto edges = cycle_edges(g, cycle);
  const IntervalSet window = g.context().window();
  for (const VertexId v : cycle) {
    if (g.degree(v) != 3) throw std::invalid_argument("cycle vertex " + std::to_string(v) + " is not of degree 3");
    for (const EdgeIndex e : g.incident_edges(v)) {
      if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
      const Edge& third = g.edge(e);
      if (third.is_gadget()) throw std::invalid_argument("third edge is an unresolved gadget");
      const IntervalSet cap = third.is_simple() ? window : std::get<AbstractEdge>(third.kind).capacity;
      if (!cap.is_subset_of(window)) {
        throw std::invalid_argument("third edge at " + std::to_string(v) + " is not inside (1,4)");
      }
    }
  }
  Network out = g;
  for (const EdgeIndex e : edges) out.set_kind(e, AbstractEdge{a});
  return out;
}

Network cycle_replacement(const Network& g, const std::vector<VertexId>& cycle,
                          const std::vector<IntervalSet>& assignment) {
  require_ratio_five(g, "cycle_replacement");
  if (assignment.size() != cycle.size()) throw std::invalid_argument("one capacity per cycle edge");
  const auto edges = cycle_edges(g, cycle);
  IntervalSet all = IntervalSet::empty(5);
  for (const auto& a : assignment) all = unite(all, a);
  if (amplitude(all) > 3) throw std::invalid_argument("union of capacities has amplitude above 3");
  Network out = g;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!g.edge(edges[i]).is_simple()) throw std::invalid_argument("cycle edge is not simple");
    out.set_kind(edges[i], AbstractEdge{assignment[i]});
  }
  return out;
}

Network force_ge5_pair(const Network& g, VertexId v, EdgeIndex e1, EdgeIndex e2) {
  require_ratio_five(g, "force_ge5_pair");
  if (g.degree(v) != 3) throw std::invalid_argument("vertex must have degree 3");
  if (e1 == e2) throw std::invalid_argument("two distinct edges are required");
  for (const EdgeIndex e : {e1, e2}) {
    const Edge& edge = g.edge(e);
    if (edge.tail != v && edge.head != v) throw std::invalid_argument("edge is not incident with the vertex");
    if (!edge.is_simple()) throw std::invalid_argument("edge is not simple");
  }
  Network out = g;
  out.set_kind(e1, AbstractEdge{five("(2,3)")});
  out.set_kind(e2, AbstractEdge{five("(2,3)")});
  return out;
}

Network insert_empty_edge(const Network& g, VertexId u, VertexId v) {
  Network out = g;
  out.add_edge(u, v, AbstractEdge{IntervalSet::empty(g.context().p)});
  return out;
}

Network k4_triangle_41() {
  Network g = complete_graph(4);
  // Edges: 01 02 03 12 13 23.
  for (const EdgeIndex e : {0, 1, 3}) g.set_kind(e, AbstractEdge{five("(4,1)")});
  return g;
}

Network s28() { return splice_cycle(complete_graph(4), {0, 1, 2}); }

Network mr_family(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  Network g = petersen();
  for (int level = 0; level < depth; ++level) {
    const auto cycle = find_cycle_of_length(g, 5);
    if (!cycle) throw std::logic_error("no 5-cycle to replace");
    g = splice_cycle(g, *cycle);
  }
  return g;
}

Network mr_family_abstract(int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  const Network g = mr_family(depth - 1);
  const auto cycle = find_cycle_of_length(g, 5);
  if (!cycle) throw std::logic_error("no 5-cycle to replace");
  return cycle_replacement(g, *cycle, std::vector<IntervalSet>(5, five("(4,1)")));
}

std::optional<std::vector<VertexId>> find_cycle_of_length(const Network& g, int length) {
  if (length < 3) throw std::invalid_argument("cycle length must be at least 3");
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const Edge& e : g.edges()) {
    if (!e.is_simple()) continue;
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  for (auto& [v, list] : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<VertexId> path;
  std::set<VertexId> on_path;
  const std::function<bool(VertexId)> extend = [&](VertexId v) -> bool {
    if (static_cast<int>(path.size()) == length) {
      const auto& around = adj[v];
      return std::binary_search(around.begin(), around.end(), path.front());
    }
    for (const VertexId w : adj[v]) {
      if (w <= path.front() || on_path.count(w)) continue;
      path.push_back(w);
      on_path.insert(w);
      if (extend(w)) return true;
      on_path.erase(w);
      path.pop_back();
    }
    return false;
  };
  for (const VertexId s : g.vertices()) {
    path = {s};
    on_path = {s};
    if (extend(s)) return path;
  }
  return std::nullopt;
}

std::optional<std::vector<VertexId>> find_odd_cycle(const Network& g) {
  std::optional<std::vector<VertexId>> best;
  for (const VertexId s : g.vertices()) {
    std::map<VertexId, int> dist;
    std::map<VertexId, VertexId> parent;
    std::queue<VertexId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      for (const EdgeIndex e : g.incident_edges(v)) {
        const VertexId w = g.edge(e).other(v);
        if (!dist.count(w)) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (dist[w] == dist[v] && v < w) {
          std::vector<VertexId> left{v}, right{w};
          while (left.back() != right.back()) {
            left.push_back(parent[left.back()]);
            right.push_back(parent[right.back()]);
          }
          right.pop_back();
          std::vector<VertexId> cycle(left.begin(), left.end());
          cycle.insert(cycle.end(), right.rbegin(), right.rend());
          if (!best || cycle.size() < best->size()) best = cycle;
        }
      }
    }
  }
  return best;
}

Network random_cubic_graph(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("cubic graphs need an even order of at least 4");
  std::mt19937_64 rng(seed);
  std::vector<int> points(3 * static_cast<std::size_t>(n));
  for (;;) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i / 3);
    std::shuffle(points.begin(), points.end(), rng);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      const int a = std::min(points[i], points[i + 1]);
      const int b = std::max(points[i], points[i + 1]);
      ok = a != b && seen.insert({a, b}).second;
    }
    if (!ok) continue;
    Network g;
    g.add_vertices(static_cast<std::size_t>(n));
    for (const auto& [a, b] : seen) g.add_edge(a, b);
    return g;
  }
}

}  // namespace cflow
