#include <algorithm>
#include <queue>

#include "cflow/flow_engine.hpp"
#include "cflow/graph_analysis.hpp"

namespace cflow {

namespace {

// Values 1..3 in Z/4 on the reference orientation; a vertex whose last open
// edge is forced gets it immediately.
class Z4Search {
 public:
  explicit Z4Search(const Network& g) : n_(static_cast<int>(g.vertex_count())) {
    inc_.resize(n_);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const int t = static_cast<int>(g.index_of(g.edge(e).tail));
      const int h = static_cast<int>(g.index_of(g.edge(e).head));
      ends_.emplace_back(t, h);
      inc_[t].push_back({static_cast<int>(e), -1});
      inc_[h].push_back({static_cast<int>(e), +1});
    }
    value_.assign(ends_.size(), 0);
    open_.resize(n_);
    sum_.assign(n_, 0);
    for (int v = 0; v < n_; ++v) open_[v] = static_cast<int>(inc_[v].size());
  }

  bool run() { return step(); }

 private:
  struct Inc {
    int edge;
    int sign;
  };

  void put(int e, int x) {
    value_[e] = x;
    const auto [t, h] = ends_[e];
    sum_[h] = (sum_[h] + x) & 3;
    sum_[t] = (sum_[t] - x + 4) & 3;
    --open_[t];
    --open_[h];
  }

  void take(int e) {
    const int x = value_[e];
    value_[e] = 0;
    const auto [t, h] = ends_[e];
    sum_[h] = (sum_[h] - x + 4) & 3;
    sum_[t] = (sum_[t] + x) & 3;
    ++open_[t];
    ++open_[h];
  }

  bool step() {
    // Forced moves first.
    std::vector<int> placed;
    bool ok = true;
    for (bool again = true; again && ok;) {
      again = false;
      for (int v = 0; v < n_ && ok; ++v) {
        if (open_[v] == 0) {
          if (sum_[v] != 0) ok = false;
          continue;
        }
        if (open_[v] != 1) continue;
        for (const auto& in : inc_[v]) {
          if (value_[in.edge] != 0) continue;
          // sign * x + sum == 0
          const int x = ((in.sign > 0 ? -sum_[v] : sum_[v]) % 4 + 4) & 3;
          if (x == 0) {
            ok = false;
          } else {
            put(in.edge, x);
            placed.push_back(in.edge);
            again = true;
          }
          break;
        }
      }
    }
    if (ok) {
      int best = -1;
      int best_open = 0;
      for (int v = 0; v < n_; ++v) {
        if (open_[v] > 1 && (best < 0 || open_[v] < best_open)) {
          best = v;
          best_open = open_[v];
        }
      }
      if (best < 0) return true;
      int e = -1;
      for (const auto& in : inc_[best]) {
        if (value_[in.edge] == 0) {
          e = in.edge;
          break;
        }
      }
      for (int x = 1; x <= 3; ++x) {
        put(e, x);
        if (step()) return true;
        take(e);
      }
    }
    for (auto it = placed.rbegin(); it != placed.rend(); ++it) take(*it);
    return false;
  }

  int n_;
  std::vector<std::pair<int, int>> ends_;
  std::vector<std::vector<Inc>> inc_;
  std::vector<int> value_;
  std::vector<int> open_;
  std::vector<int> sum_;
};

}  // namespace

bool decide_4flow(const Network& g) {
  if (!g.all_simple()) throw std::invalid_argument("decide_4flow needs simple edges");
  if (has_bridge(g)) return false;
  return Z4Search(g).run();
}

}  // namespace cflow
