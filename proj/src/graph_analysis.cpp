#include "cflow/graph_analysis.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cflow {

namespace {

std::vector<std::pair<int, int>> dense_edges(const Network& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges()) {
    out.emplace_back(static_cast<int>(g.index_of(e.tail)), static_cast<int>(g.index_of(e.head)));
  }
  return out;
}

void require_simple(const Network& g) {
  if (!g.all_simple()) throw std::invalid_argument("structural checks need concrete simple edges");
}

}  // namespace

std::vector<bool> find_bridges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<bool> bridge(edges.size(), false);
  std::vector<int> tin(n, -1), low(n, 0);
  int timer = 0;
  struct Frame {
    int v;
    int parent_edge;
    std::size_t pos;
  };
  for (int root = 0; root < n; ++root) {
    if (tin[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    tin[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.pos < adj[f.v].size()) {
        const auto [w, e] = adj[f.v][f.pos++];
        if (e == f.parent_edge) continue;
        if (tin[w] >= 0) {
          low[f.v] = std::min(low[f.v], tin[w]);
        } else {
          tin[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const int u = stack.back().v;
        low[u] = std::min(low[u], low[done.v]);
        if (low[done.v] > tin[u]) bridge[done.parent_edge] = true;
      }
    }
  }
  return bridge;
}

std::vector<EdgeIndex> bridges(const Network& g) {
  const auto flags = find_bridges(static_cast<int>(g.vertex_count()), dense_edges(g));
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < flags.size(); ++e) {
    if (flags[e]) out.push_back(e);
  }
  return out;
}

bool has_bridge(const Network& g) { return !bridges(g).empty(); }

bool is_cubic(const Network& g) {
  if (g.vertex_count() == 0) return false;
  return std::all_of(g.vertices().begin(), g.vertices().end(),
                     [&](VertexId v) { return g.degree(v) == 3; });
}

int girth(const Network& g) {
  require_simple(g);
  const int n = static_cast<int>(g.vertex_count());
  const auto edges = dense_edges(g);
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  int best = kInfiniteGirth;
  std::vector<int> dist(n), via(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    via[s] = -1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      if (2 * dist[v] + 1 >= best) break;
      for (const auto& [w, e] : adj[v]) {
        if (e == via[v]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          q.push(w);
        } else {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

bool cyclic_edge_connectivity_at_least(const Network& g, int t) {
  if (t < 1 || t > 4) throw std::invalid_argument("cyclic connectivity supported for 1 <= t <= 4");
  const int n = static_cast<int>(g.vertex_count());
  const auto edges = dense_edges(g);
  const int m = static_cast<int>(edges.size());

  std::vector<int> parent(n), vcount(n), ecount(n);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Two or more components with a cycle after deleting `removed`.
  const auto separated = [&](const std::vector<int>& removed) {
    for (int v = 0; v < n; ++v) {
      parent[v] = v;
      vcount[v] = 1;
      ecount[v] = 0;
    }
    for (int e = 0; e < m; ++e) {
      if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
      const int a = find(edges[e].first);
      const int b = find(edges[e].second);
      if (a == b) {
        ++ecount[a];
      } else {
        parent[b] = a;
        vcount[a] += vcount[b];
        ecount[a] += ecount[b] + 1;
      }
    }
    int cyclic = 0;
    for (int v = 0; v < n; ++v) {
      if (find(v) == v && ecount[v] >= vcount[v]) ++cyclic;
    }
    return cyclic >= 2;
  };

  std::vector<int> removed;
  if (separated(removed)) return false;
  for (int a = 0; a < m && t > 1; ++a) {
    removed = {a};
    if (separated(removed)) return false;
    for (int b = a + 1; b < m && t > 2; ++b) {
      removed = {a, b};
      if (separated(removed)) return false;
      for (int c = b + 1; c < m && t > 3; ++c) {
        removed = {a, b, c};
        if (separated(removed)) return false;
      }
    }
  }
  return true;
}

std::optional<std::vector<int>> three_edge_coloring(const Network& g) {
  require_simple(g);
  const int n = static_cast<int>(g.vertex_count());
  const auto edges = dense_edges(g);
  const int m = static_cast<int>(edges.size());
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < m; ++e) {
    inc[edges[e].first].push_back(e);
    inc[edges[e].second].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    if (inc[v].size() > 3) return std::nullopt;
  }
  std::vector<int> color(m, -1);
  std::vector<int> used(n, 0);  // bitmask of colors at a vertex

  const auto options = [&](int e) { return 7 & ~(used[edges[e].first] | used[edges[e].second]); };

  // Most constrained uncolored edge, preferring edges next to colored ones.
  const auto pick = [&]() {
    int best = -1;
    int best_opts = 4;
    int best_touch = -1;
    for (int e = 0; e < m; ++e) {
      if (color[e] >= 0) continue;
      const int k = std::popcount(static_cast<unsigned>(options(e)));
      const int touch = std::popcount(static_cast<unsigned>(used[edges[e].first])) +
                        std::popcount(static_cast<unsigned>(used[edges[e].second]));
      if (k < best_opts || (k == best_opts && touch > best_touch)) {
        best = e;
        best_opts = k;
        best_touch = touch;
      }
    }
    return best;
  };

  const auto solve = [&](auto&& self, int depth) -> bool {
    const int e = pick();
    if (e < 0) return true;
    int opts = options(e);
    // The very first edge may take color 0 without loss of generality, and the
    // second edge at the same vertex color 1.
    if (depth == 0) opts &= 1;
    if (depth == 1 && opts == 6) opts = 2;
    for (int c = 0; c < 3; ++c) {
      if (!((opts >> c) & 1)) continue;
      color[e] = c;
      used[edges[e].first] |= 1 << c;
      used[edges[e].second] |= 1 << c;
      if (self(self, depth + 1)) return true;
      used[edges[e].first] &= ~(1 << c);
      used[edges[e].second] &= ~(1 << c);
      color[e] = -1;
    }
    return false;
  };
  if (!solve(solve, 0)) return std::nullopt;
  return color;
}

bool is_3_edge_colorable(const Network& g) {
  if (!is_cubic(g)) throw std::invalid_argument("3-edge-coloring check needs a cubic graph");
  return three_edge_coloring(g).has_value();
}

SnarkReport snark_report(const Network& g) {
  SnarkReport r;
  r.cubic = is_cubic(g);
  r.girth = girth(g);
  r.cyclically_4_edge_connected = cyclic_edge_connectivity_at_least(g, 4);
  r.three_edge_colorable = three_edge_coloring(g).has_value();
  r.is_snark = r.cubic && r.girth >= 5 && r.cyclically_4_edge_connected && !r.three_edge_colorable;
  return r;
}

std::string to_string(const SnarkReport& report) {
  std::ostringstream out;
  out << "cubic: " << (report.cubic ? "true" : "false") << '\n';
  out << "girth: " << (report.girth == kInfiniteGirth ? std::string("inf") : std::to_string(report.girth))
      << '\n';
  out << "cyclically_4_edge_connected: " << (report.cyclically_4_edge_connected ? "true" : "false")
      << '\n';
  out << "three_edge_colorable: " << (report.three_edge_colorable ? "true" : "false") << '\n';
  out << "is_snark: " << (report.is_snark ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace cflow
