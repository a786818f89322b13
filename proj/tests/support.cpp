#include "support.hpp"

#include <functional>
#include <stdexcept>

#include "cflow/formats.hpp"

namespace cflow::testing {

const std::vector<NamedGraph>& graph_suite() {
  static const std::vector<NamedGraph> suite = {
      {"petersen", "IheA@GUAo"},
      {"k4", "C~"},
      {"k33", "EFz_"},
      {"prism", "E{Sw"},
      {"cube", "Gr`HOk"},
      {"heawood", "MhEGHC@AI?_PC@_G_"},
      {"mobius_kantor", "OhEGHC@AG?_PO@?Ga?K?P"},
      {"dodecahedron", "ShCHGD@?K?_@?@?C_GGG@??cG?G?GK_?C"},
      {"desargues", "ShEGGC@AG?c@?@?Ga?GC@O?C?AGA?K?OC"},
      {"truncated_tetrahedron", "KxCIGK@_G@b@"},
      {"franklin", "KhEGHD@AG_oP"},
      {"frucht", "KhCKM?_EGK?L"},
      {"k5", "D~{"},
      {"octahedron", "E}lw"},
      {"wheel6", "E|fG"},
      {"wagner", "GhdHKc"},
      {"pentagonal_prism", "IheAHCPBG"},
      {"k4_k4_bridge", "Izc?GKBBG"},
      {"k6", "E~~w"},
      {"k34", "FFzf?"},
  };
  return suite;
}

const std::vector<NamedGraph>& small_suite() {
  static const std::vector<NamedGraph> suite = {
      {"c3", "Bw"},         {"c5", "Dhc"},        {"k4", "C~"},          {"k23", "D]o"},
      {"k4_ear", "D~c"},    {"bowtie", "D{c"},    {"paw", "C{"},         {"diamond", "Cz"},
      {"c4", "Cl"},         {"w4", "D|s"},        {"k4_sub", "D{["},     {"house", "DrK"},
      {"p3", "Bg"},         {"k4_sub2", "Er`W"},  {"theta3", ":A_"},     {"theta4", ":A_N"},
      {"multi5", ":B_`N"},  {"k4par", ":C_``V"},
  };
  return suite;
}

Network load(const NamedGraph& g) { return graph6_decode(g.code); }

Network named(const std::string& name) {
  for (const auto* suite : {&graph_suite(), &small_suite()}) {
    for (const auto& g : *suite) {
      if (g.name == name) return load(g);
    }
  }
  throw std::invalid_argument("no test graph " + name);
}

Network flower_snark(int n) {
  Network g;
  g.add_vertices(static_cast<std::size_t>(4 * n));
  const auto a = [](int i) { return i; };
  const auto b = [n](int i) { return n + i; };
  const auto c = [n](int i) { return 2 * n + i; };
  const auto d = [n](int i) { return 3 * n + i; };
  for (int i = 0; i < n; ++i) {
    g.add_edge(a(i), b(i));
    g.add_edge(a(i), c(i));
    g.add_edge(a(i), d(i));
    g.add_edge(b(i), b((i + 1) % n));
  }
  // c_0 .. c_{n-1} d_0 .. d_{n-1} is one cycle of length 2n.
  for (int i = 0; i + 1 < n; ++i) {
    g.add_edge(c(i), c(i + 1));
    g.add_edge(d(i), d(i + 1));
  }
  g.add_edge(c(n - 1), d(0));
  g.add_edge(d(n - 1), c(0));
  return g;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> si_oracle(int k) {
  // Sample s in [0, 2k): even s is the point s/2, odd s the unit interval
  // ((s-1)/2, (s+1)/2). Symmetry maps s to 2k - s, so samples 0..k decide.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const int n = 2 * k;
  for (std::uint64_t half = 0; half < (std::uint64_t{1} << (k + 1)); ++half) {
    std::vector<bool> in(static_cast<std::size_t>(n));
    for (int s = 0; s <= k; ++s) {
      const bool bit = (half >> s) & 1;
      in[static_cast<std::size_t>(s)] = bit;
      in[static_cast<std::size_t>((n - s) % n)] = bit;
    }
    bool open = true;
    for (int s = 0; s < n && open; s += 2) {
      if (in[static_cast<std::size_t>(s)]) {
        open = in[static_cast<std::size_t>((s + 1) % n)] && in[static_cast<std::size_t>((s + n - 1) % n)];
      }
    }
    if (!open) continue;
    std::uint64_t units = 0, points = 0;
    for (int s = 0; s < n; ++s) {
      if (!in[static_cast<std::size_t>(s)]) continue;
      if (s % 2 == 0) {
        points |= std::uint64_t{1} << (s / 2);
      } else {
        units |= std::uint64_t{1} << (s / 2);
      }
    }
    out.emplace_back(units, points);
  }
  return out;
}

namespace {

// Membership of v/den in the set given by raw masks, 0 <= v < den*k.
bool member(const IntervalSet& s, std::int64_t v, std::int64_t den) {
  const std::int64_t k = s.modulus();
  v = ((v % (den * k)) + den * k) % (den * k);
  if (v % den == 0) return (s.points() >> (v / den)) & 1;
  return (s.units() >> (v / den)) & 1;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> sum_oracle(const IntervalSet& a, const IntervalSet& b) {
  const int k = a.modulus();
  std::uint64_t units = 0, points = 0;
  // Target g = t/2, split a = x/4, b = g - a.
  for (int t = 0; t < 2 * k; ++t) {
    bool hit = false;
    for (int x = 0; x < 4 * k && !hit; ++x) {
      hit = member(a, x, 4) && member(b, 2 * t - x, 4);
    }
    if (!hit) continue;
    if (t % 2 == 0) {
      points |= std::uint64_t{1} << (t / 2);
    } else {
      units |= std::uint64_t{1} << (t / 2);
    }
  }
  return {units, points};
}

bool grid_flow_oracle(const Network& g) {
  const int p = g.context().p;
  const std::int64_t den = 8;
  const std::int64_t mod = den * p;
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();

  std::vector<IntervalSet> cap;
  for (const Edge& e : g.edges()) {
    if (e.is_simple()) {
      const std::pair<int, int> w[1] = {{g.context().q, p - g.context().q}};
      cap.push_back(IntervalSet::from_intervals(p, w));
    } else if (e.is_abstract()) {
      cap.push_back(std::get<AbstractEdge>(e.kind).capacity);
    } else {
      throw std::invalid_argument("grid oracle: gadget edge");
    }
  }

  // Spanning forest by DFS; order lists vertices in discovery order.
  std::vector<int> parent_edge(n, -1);
  std::vector<bool> seen(n, false), tree(m, false);
  std::vector<std::size_t> order;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (const EdgeIndex e : g.incident_edges(g.vertices()[v])) {
        const std::size_t w = g.index_of(g.edge(e).other(g.vertices()[v]));
        if (seen[w]) continue;
        seen[w] = true;
        tree[e] = true;
        parent_edge[w] = static_cast<int>(e);
        stack.push_back(w);
      }
    }
  }
  std::vector<EdgeIndex> cotree;
  for (EdgeIndex e = 0; e < m; ++e) {
    if (!tree[e]) cotree.push_back(e);
  }
  std::vector<std::vector<std::int64_t>> choices;
  for (const EdgeIndex e : cotree) {
    std::vector<std::int64_t> vals;
    for (std::int64_t v = 0; v < mod; ++v) {
      if (member(cap[e], v, den)) vals.push_back(v);
    }
    if (vals.empty()) return false;
    choices.push_back(std::move(vals));
  }

  std::vector<std::int64_t> value(m, 0);
  const auto complete = [&]() {
    std::vector<std::int64_t> excess(n, 0);
    for (EdgeIndex e : cotree) {
      excess[g.index_of(g.edge(e).tail)] += value[e];
      excess[g.index_of(g.edge(e).head)] -= value[e];
    }
    // Leaves first: the parent edge absorbs the excess of its child.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int pe = parent_edge[*it];
      if (pe < 0) {
        if (excess[*it] % mod != 0) return false;
        continue;
      }
      const Edge& e = g.edge(static_cast<EdgeIndex>(pe));
      const bool out = g.index_of(e.tail) == *it;
      std::int64_t x = out ? -excess[*it] : excess[*it];
      x = ((x % mod) + mod) % mod;
      if (!member(cap[static_cast<EdgeIndex>(pe)], x, den)) return false;
      const std::size_t other = g.index_of(e.other(g.vertices()[*it]));
      if (out) {
        excess[other] -= x;
      } else {
        excess[other] += x;
      }
      excess[*it] = 0;
    }
    return true;
  };
  const std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == cotree.size()) return complete();
    for (const std::int64_t v : choices[i]) {
      value[cotree[i]] = v;
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

bool flow_is_valid(const Network& g, const std::vector<Rational>& values) {
  if (values.size() != g.edge_count()) return false;
  const int p = g.context().p;
  std::vector<Rational> excess(g.vertex_count(), Rational(0));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Rational& v = values[e];
    if (v < Rational(0) || v >= Rational(p)) return false;
    IntervalSet cap = IntervalSet::empty(p);
    if (g.edge(e).is_simple()) {
      const std::pair<int, int> w[1] = {{g.context().q, p - g.context().q}};
      cap = IntervalSet::from_intervals(p, w);
    } else {
      cap = std::get<AbstractEdge>(g.edge(e).kind).capacity;
    }
    const std::int64_t f = v.numerator() / v.denominator();
    const bool in = v.denominator() == 1 ? ((cap.points() >> f) & 1) : ((cap.units() >> f) & 1);
    if (!in) return false;
    excess[g.index_of(g.edge(e).tail)] += v;
    excess[g.index_of(g.edge(e).head)] -= v;
  }
  for (const Rational& x : excess) {
    const Rational q = x / Rational(p);
    if (q.denominator() != 1) return false;
  }
  return true;
}

bool colorable_oracle(const Hypergraph3& h) {
  const std::size_t n = h.nodes.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto color = [&](int x) {
      for (std::size_t i = 0; i < n; ++i) {
        if (h.nodes[i] == x) return static_cast<int>((mask >> i) & 1);
      }
      throw std::invalid_argument("unknown node");
    };
    bool ok = true;
    for (const auto& t : h.triplets) {
      if (color(t[0]) == color(t[1]) && color(t[1]) == color(t[2])) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Hypergraph3> small_hypergraphs() {
  const std::array<std::array<int, 3>, 4> all = {{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
  std::vector<Hypergraph3> out;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    std::vector<std::array<int, 3>> ts;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) ts.push_back(all[i]);
    }
    Hypergraph3 h = Hypergraph3::from_triplets(ts);
    // Nodes outside every triplet still belong to the 4-node ground set.
    h.nodes = {1, 2, 3, 4};
    out.push_back(h);
  }
  return out;
}

Hypergraph3 fano() {
  return Hypergraph3::from_triplets(
      {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}});
}

Hypergraph3 fano_minus_one() {
  Hypergraph3 h = fano();
  h.triplets.pop_back();
  return h;
}

}  // namespace cflow::testing
