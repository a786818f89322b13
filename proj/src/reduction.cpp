#include "cflow/reduction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cflow/constructions.hpp"

namespace cflow {

namespace {

IntervalSet link_capacity(const ScaledContext& ctx) {
  const std::pair<int, int> iv[2] = {{ctx.q, 2 * ctx.q}, {ctx.p - 2 * ctx.q, ctx.p - ctx.q}};
  return IntervalSet::from_intervals(ctx.p, iv);
}

Rational mod_p(Rational v, const Rational& p) {
  while (v < Rational(0)) v += p;
  while (v >= p) v -= p;
  return v;
}

Reduction compile(const Hypergraph3& h, const Rational& r) {
  h.validate();
  Reduction out{Network(r), {}};
  Network& g = out.network;
  const IntervalSet link = link_capacity(g.context());
  const auto occ = h.occurrences();

  std::map<int, std::size_t> cycle_of;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    if (occ[i] == 0) {
      out.layout.dropped.push_back(h.nodes[i]);
      continue;
    }
    NodeCycle c{h.nodes[i], {}, {}};
    for (int k = 0; k < 2 * occ[i]; ++k) c.vertices.push_back(g.add_vertex());
    cycle_of[h.nodes[i]] = out.layout.nodes.size();
    out.layout.nodes.push_back(std::move(c));
  }
  for (const auto& t : h.triplets) {
    TripletCycle c{t, {}, {}};
    for (auto& v : c.vertices) v = g.add_vertex();
    out.layout.triplets.push_back(c);
  }

  for (auto& c : out.layout.nodes) {
    const std::size_t len = c.vertices.size();
    for (std::size_t i = 0; i < len; ++i) {
      c.edges.push_back(g.add_edge(c.vertices[i], c.vertices[(i + 1) % len], AbstractEdge{link}));
    }
  }
  for (auto& c : out.layout.triplets) {
    for (std::size_t i = 0; i < 6; ++i) c.edges[i] = g.add_edge(c.vertices[i], c.vertices[(i + 1) % 6]);
  }
  std::map<int, int> used;
  for (std::size_t ti = 0; ti < h.triplets.size(); ++ti) {
    const TripletCycle& tc = out.layout.triplets[ti];
    for (int i = 0; i < 3; ++i) {
      const int x = h.triplets[ti][static_cast<std::size_t>(i)];
      const NodeCycle& nc = out.layout.nodes[cycle_of.at(x)];
      const auto k = static_cast<std::size_t>(used[x]++);
      Occurrence o{x, ti, i, 0, 0};
      o.positive = g.add_edge(nc.vertices[2 * k], tc.vertices[static_cast<std::size_t>(i)], AbstractEdge{link});
      o.negative =
          g.add_edge(nc.vertices[2 * k + 1], tc.vertices[static_cast<std::size_t>(5 - i)], AbstractEdge{link});
      out.layout.occurrences.push_back(o);
    }
  }
  return out;
}

}  // namespace

Reduction build_GH(const Hypergraph3& h) { return compile(h, Rational(5)); }

Reduction rational_variant(const Hypergraph3& h, const Rational& r) {
  if (!(r > Rational(4) && r <= Rational(5))) throw std::invalid_argument("r must lie in (4,5]");
  if (r == Rational(5)) return build_GH(h);
  return compile(h, r);
}

Network concrete_GH(const Reduction& reduction) {
  const Network& g = reduction.network;
  if (g.r() != Rational(5)) throw std::invalid_argument("concrete expansion is defined for r = 5");
  const IntervalSet link = link_capacity(g.context());
  const GEdge m2 = measure2_edge(true);
  Network out = g;
  for (EdgeIndex e = g.edge_count(); e-- > 0;) {
    const Edge& edge = g.edge(e);
    if (edge.is_abstract() && std::get<AbstractEdge>(edge.kind).capacity == link) {
      out = replace_edge(out, e, m2).network;
    }
  }
  return out;
}

std::string write_layout(const ReductionLayout& layout) {
  std::ostringstream out;
  for (const auto& c : layout.nodes) {
    out << "node " << c.node << ':';
    for (const VertexId v : c.vertices) out << ' ' << v;
    out << '\n';
  }
  for (std::size_t i = 0; i < layout.triplets.size(); ++i) {
    out << "triplet " << i << ':';
    for (const VertexId v : layout.triplets[i].vertices) out << ' ' << v;
    out << '\n';
  }
  for (const auto& o : layout.occurrences) {
    out << "connector " << o.node << ' ' << o.triplet << ' ' << o.index + 1 << ": " << o.positive << ' '
        << o.negative << '\n';
  }
  for (const int x : layout.dropped) out << "dropped " << x << '\n';
  return out.str();
}

bool is_proper_coloring(const Hypergraph3& h, const Coloring& coloring) {
  for (const int x : h.nodes) {
    const auto it = coloring.find(x);
    if (it == coloring.end() || (it->second != 0 && it->second != 1)) return false;
  }
  return std::all_of(h.triplets.begin(), h.triplets.end(), [&](const auto& t) {
    const int c = coloring.at(t[0]);
    return coloring.at(t[1]) != c || coloring.at(t[2]) != c;
  });
}

std::optional<Coloring> two_coloring(const Hypergraph3& h) {
  h.validate();
  std::map<int, std::vector<std::size_t>> touching;
  for (std::size_t i = 0; i < h.triplets.size(); ++i) {
    for (const int x : h.triplets[i]) touching[x].push_back(i);
  }
  Coloring color;
  const std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == h.nodes.size()) return true;
    const int x = h.nodes[i];
    // The first node is fixed to color 0.
    for (int c = 0; c < (i == 0 ? 1 : 2); ++c) {
      color[x] = c;
      const bool ok = std::none_of(touching[x].begin(), touching[x].end(), [&](std::size_t ti) {
        const auto& t = h.triplets[ti];
        return std::all_of(t.begin(), t.end(), [&](int y) {
          const auto it = color.find(y);
          return it != color.end() && it->second == c;
        });
      });
      if (ok && go(i + 1)) return true;
    }
    color.erase(x);
    return false;
  };
  if (!go(0)) return std::nullopt;
  return color;
}

bool is_2_colorable(const Hypergraph3& h) { return two_coloring(h).has_value(); }

Rational default_epsilon(const Rational& r) { return (r - Rational(4)) / Rational(12); }

FlowAssignment witness_flow(const Reduction& reduction, const Hypergraph3& h, const Coloring& coloring,
                            std::optional<Rational> epsilon) {
  if (!is_proper_coloring(h, coloring)) throw std::invalid_argument("not a proper 2-coloring");
  const Network& g = reduction.network;
  const ScaledContext& ctx = g.context();
  const Rational r = ctx.r;
  const Rational eps = epsilon.value_or(default_epsilon(r));
  if (!(eps > Rational(0) && eps < (r - Rational(4)) / Rational(6))) {
    throw std::invalid_argument("epsilon must satisfy 0 < eps < (r-4)/6");
  }
  const Rational t = Rational(1) + Rational(2) * eps;
  // Node-cycle value a with -2a = t modulo r.
  const Rational a = (r - t) / Rational(2);
  std::vector<Rational> value(g.edge_count(), Rational(0));

  std::map<std::pair<VertexId, VertexId>, Rational> connector_in;
  for (const auto& c : reduction.layout.nodes) {
    const int color = coloring.at(c.node);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      // Color 0: positive terminals send t, so edges leaving them carry a.
      const bool plus = (i % 2 == 0) == (color == 0);
      value[c.edges[i]] = plus ? a : -a;
    }
  }
  for (const auto& o : reduction.layout.occurrences) {
    const Rational sign = coloring.at(o.node) == 0 ? Rational(1) : Rational(-1);
    value[o.positive] = sign * t;
    value[o.negative] = -sign * t;
  }
  for (std::size_t ti = 0; ti < reduction.layout.triplets.size(); ++ti) {
    const TripletCycle& tc = reduction.layout.triplets[ti];
    std::array<Rational, 6> d;
    for (const auto& o : reduction.layout.occurrences) {
      if (o.triplet != ti) continue;
      d[static_cast<std::size_t>(o.index)] = value[o.positive];
      d[static_cast<std::size_t>(5 - o.index)] = value[o.negative];
    }
    // b[j] = b[j-1] + d[j]; pick the closing value so every b lies in (1, r-1).
    bool placed = false;
    for (const Rational& start : {t, Rational(2) * t, Rational(3) * t, -t, Rational(-2) * t, Rational(-3) * t}) {
      std::array<Rational, 6> b;
      Rational run = start;
      bool ok = true;
      for (std::size_t j = 0; j < 6 && ok; ++j) {
        run += d[j];
        b[j] = mod_p(run, r);
        ok = b[j] > Rational(1) && b[j] < r - Rational(1);
      }
      if (!ok || mod_p(b[5] - start, r) != Rational(0)) continue;
      for (std::size_t j = 0; j < 6; ++j) value[tc.edges[j]] = b[j];
      placed = true;
      break;
    }
    if (!placed) throw std::logic_error("no triplet-cycle values for triplet " + std::to_string(ti));
  }

  FlowAssignment f{ctx, {}};
  for (const Rational& v : value) f.values.push_back(ctx.scale(mod_p(v, r)));
  if (const auto err = check_flow(g, f)) throw std::logic_error("witness flow fails: " + *err);
  return f;
}

std::optional<Coloring> extract_coloring(const Reduction& reduction, const FlowAssignment& f) {
  const ScaledContext& ctx = reduction.network.context();
  const Rational q(ctx.q);
  Coloring color;
  for (const auto& o : reduction.layout.occurrences) {
    const Rational& v = f.values.at(o.positive);
    int c = -1;
    if (v > q && v < Rational(2) * q) c = 0;
    if (v > Rational(ctx.p - 2 * ctx.q) && v < Rational(ctx.p - ctx.q)) c = 1;
    if (c < 0) return std::nullopt;
    const auto [it, fresh] = color.emplace(o.node, c);
    if (!fresh && it->second != c) return std::nullopt;
  }
  for (const int x : reduction.layout.dropped) color.emplace(x, 0);
  return color;
}

EquivalenceReport verify_equivalence(const Hypergraph3& h, const SearchOptions& opts, const Rational& r) {
  EquivalenceReport rep;
  const auto coloring = two_coloring(h);
  rep.colorable = coloring.has_value();
  const Reduction red = rational_variant(h, r);
  if (coloring) {
    const FlowAssignment w = witness_flow(red, h, *coloring);
    rep.witness_verified = !check_flow(red.network, w).has_value();
  }
  const Decision d = decide_sub_r_mcnzf(red.network, opts);
  rep.verdict = d.verdict;
  rep.nodes = d.nodes;
  if (d.certificate) {
    const auto extracted = extract_coloring(red, *d.certificate);
    rep.extraction_proper = extracted && is_proper_coloring(h, *extracted);
  }
  rep.holds = d.verdict != Verdict::Unknown && d.is_true() == rep.colorable;
  return rep;
}

}  // namespace cflow
