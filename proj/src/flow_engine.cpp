#include "cflow/flow_engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>
#include <tuple>

#include "cflow/formats.hpp"
#include "cflow/graph_analysis.hpp"

namespace cflow {

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

struct Dom {
  Mask u = 0;
  Mask pt = 0;

  bool empty() const { return u == 0 && pt == 0; }
  int size() const { return std::popcount(u) + std::popcount(pt); }
  bool singleton() const { return size() == 1; }
  Dom operator&(const Dom& o) const { return {u & o.u, pt & o.pt}; }
  friend bool operator==(const Dom&, const Dom&) = default;
};

class Ring {
 public:
  explicit Ring(int p) : p_(p), all_(p == 64 ? ~Mask{0} : (Mask{1} << p) - 1) {}

  int p() const { return p_; }

  Mask rot(Mask m, int s) const {
    s %= p_;
    if (s < 0) s += p_;
    if (s == 0) return m;
    return ((m << s) | (m >> (p_ - s))) & all_;
  }

  Mask conv(Mask a, Mask b) const {
    Mask out = 0;
    if (b == 0) return 0;
    while (a != 0 && out != all_) {
      const int i = std::countr_zero(a);
      a &= a - 1;
      out |= rot(b, i);
    }
    return out;
  }

  // Minkowski sum of the sets described by two label masks.
  Dom sum(const Dom& a, const Dom& b) const {
    const Mask uu = conv(a.u, b.u);
    const Mask uu1 = rot(uu, 1);
    return {uu | uu1 | conv(a.u, b.pt) | conv(a.pt, b.u), uu1 | conv(a.pt, b.pt)};
  }

  Dom neg(const Dom& d) const {
    Dom out;
    for (Mask m = d.u; m != 0; m &= m - 1) out.u |= Mask{1} << (p_ - 1 - std::countr_zero(m));
    for (Mask m = d.pt; m != 0; m &= m - 1) {
      out.pt |= Mask{1} << ((p_ - std::countr_zero(m)) % p_);
    }
    return out;
  }

  static Dom zero() { return {0, 1}; }

 private:
  int p_;
  Mask all_;
};

// Max-flow on a handful of nodes, unit-ish capacities.
class Dinic {
 public:
  explicit Dinic(int n) : adj_(n), level_(n), it_(n) {}

  int add(int from, int to, int cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (const int pushed = dfs(s, t, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

  // Flow currently on the arc returned by add().
  int flow(int arc) const { return arcs_[arc ^ 1].cap; }

 private:
  struct Arc {
    int to;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const int a : adj_[v]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& i = it_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      Arc& arc = arcs_[adj_[v][i]];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      const int got = dfs(arc.to, t, std::min(limit, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        arcs_[adj_[v][i] ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> it_;
};

std::vector<int> strong_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0;
  int comps = 0;
  // Iterative Tarjan: (vertex, next neighbour position).
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adj[v].size()) {
        const int w = adj[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }
  return comp;
}

struct Incidence {
  int edge;
  int sign;  // +1 when the vertex is the head
};

struct Problem {
  ScaledContext ctx;
  Ring ring{5};
  int n = 0;
  std::vector<std::pair<int, int>> ends;  // dense (tail, head)
  std::vector<Dom> init;
  std::vector<std::vector<Incidence>> inc;
  std::vector<int> rank;
  bool symmetric = true;
  std::string empty_reason;
  // Exact (scaled) value carried by the last edge.
  std::optional<Rational> exact;
};

struct Shared {
  const SearchOptions* options = nullptr;
  Clock::time_point deadline;
  bool has_deadline = false;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<int> best{std::numeric_limits<int>::max()};
};

struct Stop {};

class Search {
 public:
  Search(const Problem& problem, Shared& shared, int task)
      : P_(problem), S_(shared), task_(task), dom_(problem.init), in_queue_(problem.n, false) {}

  bool propagate_all() {
    for (int v = 0; v < P_.n; ++v) push(v);
    return propagate();
  }

  bool consistent() { return propagate() && closure_feasible(nullptr); }

  void set_task(int task) { task_ = task; }

  bool assign(int e, const Dom& label) {
    set(e, label);
    return propagate() && closure_feasible(nullptr);
  }

  bool dfs() {
    tick();
    const int e = choose();
    if (e < 0) return closure_feasible(&solution_);
    const Dom d = dom_[e];
    for (const Dom& label : labels(d)) {
      const std::size_t mark = trail_.size();
      if (assign(e, label) && dfs()) return true;
      undo(mark);
    }
    return false;
  }

  int choose() const {
    int best = -1;
    std::tuple<int, int, int> key{};
    for (int e = 0; e < static_cast<int>(dom_.size()); ++e) {
      const int size = dom_[e].size();
      if (size <= 1) continue;
      const auto [t, h] = P_.ends[e];
      const std::tuple<int, int, int> k{size, open_at(t) + open_at(h), P_.rank[e]};
      if (best < 0 || k < key) {
        best = e;
        key = k;
      }
    }
    return best;
  }

  std::vector<Dom> labels(const Dom& d) const {
    std::vector<Dom> out;
    for (Mask m = d.u; m != 0; m &= m - 1) out.push_back({Mask{1} << std::countr_zero(m), 0});
    for (Mask m = d.pt; m != 0; m &= m - 1) out.push_back({0, Mask{1} << std::countr_zero(m)});
    return out;
  }

  void restrict_half(int e) {
    Dom half;
    const int p = P_.ring.p();
    for (Mask m = dom_[e].u; m != 0; m &= m - 1) {
      const int i = std::countr_zero(m);
      if (i <= p - 1 - i) half.u |= Mask{1} << i;
    }
    for (Mask m = dom_[e].pt; m != 0; m &= m - 1) {
      const int j = std::countr_zero(m);
      if (j == 0 || j <= p - j) half.pt |= Mask{1} << j;
    }
    set(e, half);
  }

  const Dom& domain(int e) const { return dom_[e]; }
  const std::vector<Rational>& solution() const { return solution_; }

 private:
  int open_at(int v) const {
    int c = 0;
    for (const auto& in : P_.inc[v]) c += dom_[in.edge].size() > 1 ? 1 : 0;
    return c;
  }

  void tick() {
    if (S_.best.load(std::memory_order_relaxed) < task_) throw Stop{};
    const auto n = S_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (S_.options->node_budget != 0 && n > S_.options->node_budget) throw Stop{};
    if (S_.has_deadline && (n & 255) == 0 && Clock::now() > S_.deadline) throw Stop{};
  }

  void set(int e, const Dom& d) {
    trail_.emplace_back(e, dom_[e]);
    dom_[e] = d;
    push(P_.ends[e].first);
    push(P_.ends[e].second);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  void push(int v) {
    if (!in_queue_[v]) {
      in_queue_[v] = true;
      queue_.push_back(v);
    }
  }

  bool propagate() {
    const Ring& R = P_.ring;
    while (!queue_.empty()) {
      const int v = queue_.front();
      queue_.pop_front();
      in_queue_[v] = false;
      const auto& inc = P_.inc[v];
      const std::size_t d = inc.size();
      if (d == 0) continue;
      signed_.resize(d);
      prefix_.resize(d + 1);
      suffix_.resize(d + 1);
      for (std::size_t k = 0; k < d; ++k) {
        const Dom& dk = dom_[inc[k].edge];
        signed_[k] = inc[k].sign > 0 ? dk : R.neg(dk);
      }
      prefix_[0] = Ring::zero();
      for (std::size_t k = 0; k < d; ++k) prefix_[k + 1] = R.sum(prefix_[k], signed_[k]);
      suffix_[d] = Ring::zero();
      for (std::size_t k = d; k-- > 0;) suffix_[k] = R.sum(suffix_[k + 1], signed_[k]);
      bool changed = false;
      for (std::size_t k = 0; k < d; ++k) {
        const Dom rest = R.sum(prefix_[k], suffix_[k + 1]);
        const Dom allowed = inc[k].sign > 0 ? R.neg(rest) : rest;
        const int e = inc[k].edge;
        const Dom next = dom_[e] & allowed;
        if (next.empty()) {
          for (const int w : queue_) in_queue_[w] = false;
          queue_.clear();
          return false;
        }
        if (!(next == dom_[e])) {
          trail_.emplace_back(e, dom_[e]);
          dom_[e] = next;
          push(P_.ends[e].first == v ? P_.ends[e].second : P_.ends[e].first);
          changed = true;
        }
      }
      if (changed) push(v);
    }
    return true;
  }

  // Exact open feasibility of the labels around closed vertices, with every
  // other vertex merged into one free node. When every vertex is closed this
  // is the full question, and `out` receives a witness. Values are counted in
  // steps of 1/D, D being the denominator of the exact edge value if any.
  bool closure_feasible(std::vector<Rational>* out) {
    const int n = P_.n;
    const std::int64_t D = P_.exact ? P_.exact->denominator() : 1;
    const std::int64_t pD = P_.ring.p() * D;
    std::vector<int> node(n, -1);
    int c = 0;
    for (int v = 0; v < n; ++v) {
      bool closed = true;
      for (const auto& in : P_.inc[v]) {
        if (!dom_[in.edge].singleton()) {
          closed = false;
          break;
        }
      }
      if (closed) node[v] = c++;
    }
    if (c == 0) return true;
    const bool has_rest = c < n;
    const int W = c;
    for (int v = 0; v < n; ++v) {
      if (node[v] < 0) node[v] = W;
    }
    const int N = c + (has_rest ? 1 : 0);
    const int exact_edge = P_.exact ? static_cast<int>(dom_.size()) - 1 : -1;

    std::vector<std::int64_t> s(c, 0);
    std::vector<std::int64_t> din(c, 0), dout(c, 0);
    std::vector<UnitArc> arcs;
    for (int e = 0; e < static_cast<int>(dom_.size()); ++e) {
      const auto [t, h] = P_.ends[e];
      const int a = node[t];
      const int b = node[h];
      if (a == W && b == W) continue;
      const Dom& d = dom_[e];
      const bool unit = d.u != 0 && e != exact_edge;
      std::int64_t label = std::countr_zero(unit ? d.u : d.pt) * D;
      if (e == exact_edge) label = (*P_.exact * Rational(D)).numerator();
      if (b != W) s[b] += label;
      if (a != W) s[a] -= label;
      if (unit) {
        if (b != W) ++din[b];
        if (a != W) ++dout[a];
        arcs.push_back({e, a, b});
      }
    }

    std::vector<std::vector<std::int64_t>> cand(c);
    for (int v = 0; v < c; ++v) {
      const std::int64_t residue = ((-s[v]) % pD + pD) % pD;
      if (din[v] + dout[v] == 0) {
        if (residue == 0) cand[v].push_back(0);
      } else {
        std::int64_t m = -dout[v] * D + 1;
        m += ((residue - m) % pD + pD) % pD;
        for (; m < din[v] * D; m += pD) cand[v].push_back(m);
      }
      if (cand[v].empty()) return false;
    }

    std::vector<std::size_t> pick(c, 0);
    for (;;) {
      std::vector<std::int64_t> m(N, 0);
      std::int64_t total = 0;
      for (int v = 0; v < c; ++v) {
        m[v] = cand[v][pick[v]];
        total += m[v];
      }
      bool ok = true;
      if (has_rest) {
        m[W] = -total;
      } else if (total != 0) {
        ok = false;
      }
      if (ok && solve(N, D, m, arcs, out)) return true;
      std::size_t v = 0;
      while (v < pick.size() && ++pick[v] == cand[v].size()) pick[v++] = 0;
      if (v == pick.size()) return false;
    }
  }

  struct UnitArc {
    int edge;
    int from;
    int to;
  };

  bool solve(int N, std::int64_t D, const std::vector<std::int64_t>& m, const std::vector<UnitArc>& arcs,
             std::vector<Rational>* out) {
    const int S = N;
    const int T = N + 1;
    Dinic flow(N + 2);
    std::int64_t supply = 0;
    std::int64_t demand = 0;
    for (int v = 0; v < N; ++v) {
      if (m[v] < 0) {
        flow.add(S, v, static_cast<int>(-m[v]));
        supply -= m[v];
      } else if (m[v] > 0) {
        flow.add(v, T, static_cast<int>(m[v]));
        demand += m[v];
      }
    }
    if (supply != demand) return false;
    std::vector<int> handle;
    handle.reserve(arcs.size());
    for (const auto& a : arcs) handle.push_back(flow.add(a.from, a.to, static_cast<int>(D)));
    if (flow.run(S, T) != supply) return false;

    std::vector<std::vector<int>> residual(N);
    std::vector<std::int64_t> x(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      x[i] = flow.flow(handle[i]);
      if (x[i] < D) residual[arcs[i].from].push_back(arcs[i].to);
      if (x[i] > 0) residual[arcs[i].to].push_back(arcs[i].from);
    }
    const auto comp = strong_components(residual);
    for (const auto& a : arcs) {
      if (comp[a.from] != comp[a.to]) return false;
    }
    if (out != nullptr) *out = witness(N, D, arcs, x);
    return true;
  }

  // Average of the integral point x and, for every unit edge, one integral
  // point obtained by pushing a unit around a residual cycle through it.
  std::vector<Rational> witness(int N, std::int64_t D, const std::vector<UnitArc>& arcs,
                                const std::vector<std::int64_t>& x) {
    const std::size_t A = arcs.size();
    struct Step {
      int to;
      std::size_t arc;
      int dir;
    };
    std::vector<std::vector<Step>> res(N);
    for (std::size_t i = 0; i < A; ++i) {
      if (x[i] < D) res[arcs[i].from].push_back({arcs[i].to, i, +1});
      if (x[i] > 0) res[arcs[i].to].push_back({arcs[i].from, i, -1});
    }
    std::vector<std::int64_t> count(x);
    for (std::size_t i = 0; i < A; ++i) {
      std::vector<std::int64_t> y(x);
      if (x[i] == 0 || x[i] == D) {
        const bool up = x[i] == 0;
        const int start = up ? arcs[i].to : arcs[i].from;
        const int goal = up ? arcs[i].from : arcs[i].to;
        std::vector<std::pair<int, Step>> via(N, {-1, Step{}});
        std::vector<bool> seen(N, false);
        std::queue<int> q;
        q.push(start);
        seen[start] = true;
        while (!q.empty() && !seen[goal]) {
          const int v = q.front();
          q.pop();
          for (const Step& st : res[v]) {
            if (seen[st.to] || st.arc == i) continue;
            seen[st.to] = true;
            via[st.to] = {v, st};
            q.push(st.to);
          }
        }
        y[i] += up ? 1 : -1;
        for (int v = goal; v != start; v = via[v].first) y[via[v].second.arc] += via[v].second.dir;
      }
      for (std::size_t j = 0; j < A; ++j) count[j] += y[j];
    }
    std::vector<Rational> values(dom_.size());
    const auto denom = static_cast<std::int64_t>(A + 1) * D;
    std::vector<std::int64_t> per_edge(dom_.size(), -1);
    for (std::size_t i = 0; i < A; ++i) per_edge[arcs[i].edge] = count[i];
    for (std::size_t e = 0; e < dom_.size(); ++e) {
      const Dom& d = dom_[e];
      if (static_cast<int>(e) == static_cast<int>(dom_.size()) - 1 && P_.exact) {
        values[e] = *P_.exact;
      } else if (d.u != 0) {
        values[e] = Rational(std::countr_zero(d.u)) + Rational(per_edge[e], denom);
      } else {
        values[e] = Rational(std::countr_zero(d.pt));
      }
    }
    return values;
  }

  const Problem& P_;
  Shared& S_;
  int task_;
  std::vector<Dom> dom_;
  std::vector<std::pair<int, Dom>> trail_;
  std::deque<int> queue_;
  std::vector<bool> in_queue_;
  std::vector<Dom> signed_, prefix_, suffix_;
  std::vector<Rational> solution_;
};

struct ExtraEdge {
  VertexId tail;
  VertexId head;
  Dom label;
  std::optional<Rational> exact;
};

std::vector<int> component_of(int n, const std::vector<std::pair<int, int>>& ends, int skip) {
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    if (e == skip) continue;
    adj[ends[e].first].push_back(ends[e].second);
    adj[ends[e].second].push_back(ends[e].first);
  }
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int r = 0; r < n; ++r) {
    if (comp[r] >= 0) continue;
    std::vector<int> stack{r};
    comp[r] = c;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const int w : adj[v]) {
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  return comp;
}

Problem build_problem(const Network& g, const std::optional<ExtraEdge>& extra, const SearchOptions& opt) {
  Problem P;
  P.ctx = g.context();
  P.ring = Ring(P.ctx.p);
  P.n = static_cast<int>(g.vertex_count());
  const int m = static_cast<int>(g.edge_count());
  std::vector<Dom> cap;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    P.ends.emplace_back(static_cast<int>(g.index_of(edge.tail)), static_cast<int>(g.index_of(edge.head)));
    const IntervalSet c = edge_capacity(g, e);
    cap.push_back({c.units(), c.points()});
  }
  const bool point_extra = extra && extra->label.pt != 0;
  if (extra) {
    P.ends.emplace_back(static_cast<int>(g.index_of(extra->tail)),
                        static_cast<int>(g.index_of(extra->head)));
  }
  const int total = static_cast<int>(P.ends.size());

  P.init.resize(total);
  if (opt.pure_search) {
    for (int e = 0; e < m; ++e) P.init[e] = cap[e];
  } else {
    std::vector<std::pair<int, int>> query(P.ends.begin(), P.ends.begin() + (point_extra ? m : total));
    const auto bridge = find_bridges(P.n, query);
    for (int e = 0; e < m; ++e) {
      if (!bridge[e]) {
        P.init[e] = {cap[e].u, 0};
        continue;
      }
      // The value on a bridge is fixed by the only other edge that may cross
      // its cut, namely the extra edge.
      int forced = 0;
      if (point_extra) {
        const int j = std::countr_zero(extra->label.pt);
        const auto side = component_of(P.n, query, e);
        const int s = side[P.ends[e].second];
        const bool extra_in = side[P.ends[m].second] == s;
        const bool extra_out = side[P.ends[m].first] == s;
        if (extra_in && !extra_out) forced = (P.ctx.p - j) % P.ctx.p;
        if (extra_out && !extra_in) forced = j;
      }
      P.init[e] = {0, cap[e].pt & (Mask{1} << forced)};
      if (P.init[e].empty()) P.empty_reason = "bridge";
    }
  }
  if (extra) P.init[m] = extra->label;

  P.inc.assign(P.n, {});
  for (int e = 0; e < total; ++e) {
    P.inc[P.ends[e].first].push_back({e, -1});
    P.inc[P.ends[e].second].push_back({e, +1});
  }

  // Breadth-first edge ranking.
  P.rank.assign(total, -1);
  int next = 0;
  std::vector<bool> seen(P.n, false);
  for (int r = 0; r < P.n; ++r) {
    if (seen[r]) continue;
    std::queue<int> q;
    q.push(r);
    seen[r] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      std::vector<Incidence> around = P.inc[v];
      std::sort(around.begin(), around.end(), [](auto a, auto b) { return a.edge < b.edge; });
      for (const auto& in : around) {
        if (P.rank[in.edge] < 0) P.rank[in.edge] = next++;
        const int w = P.ends[in.edge].first == v ? P.ends[in.edge].second : P.ends[in.edge].first;
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }

  if (extra) {
    const Dom l = extra->label;
    P.symmetric = P.ring.neg(l) == l && !extra->exact;
    P.exact = extra->exact;
  }
  return P;
}

std::string no_flow_reason(const ScaledContext& ctx) { return "no sub-" + to_string(ctx.r) + "-mcnzf"; }

struct Limits {
  SearchOptions options;
  std::optional<Clock::time_point> deadline;

  explicit Limits(const SearchOptions& opt) : options(opt) {
    if (opt.time_budget_seconds > 0) {
      deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(opt.time_budget_seconds));
    }
  }
};

Decision run(const Problem& P, const Limits& limits) {
  const SearchOptions& opt = limits.options;
  Decision out;
  Shared shared;
  shared.options = &opt;
  if (limits.deadline) {
    shared.has_deadline = true;
    shared.deadline = *limits.deadline;
  }
  const auto finish = [&](Verdict v, std::string reason) {
    out.verdict = v;
    out.reason = std::move(reason);
    out.nodes = shared.nodes.load();
    return out;
  };

  for (const Dom& d : P.init) {
    if (d.empty()) {
      return finish(Verdict::False, P.empty_reason.empty() ? no_flow_reason(P.ctx) : P.empty_reason);
    }
  }

  Search root(P, shared, 0);
  if (!root.propagate_all() || !root.consistent()) {
    return finish(Verdict::False, no_flow_reason(P.ctx));
  }
  const int e = root.choose();
  if (e < 0) {
    try {
      if (!root.dfs()) return finish(Verdict::False, no_flow_reason(P.ctx));
    } catch (const Stop&) {
      return finish(Verdict::Unknown, "budget exhausted");
    }
    out.certificate = FlowAssignment{P.ctx, root.solution()};
    return finish(Verdict::True, "");
  }
  if (opt.symmetry_breaking && P.symmetric) root.restrict_half(e);
  const auto labels = root.labels(root.domain(e));
  const int tasks = static_cast<int>(labels.size());

  enum class Outcome { False, True, Unknown, Cancelled };
  std::vector<Outcome> result(tasks, Outcome::Cancelled);
  std::vector<std::vector<Rational>> found(tasks);
  std::atomic<int> next_task{0};

  const auto worker = [&]() {
    for (;;) {
      const int t = next_task.fetch_add(1);
      if (t >= tasks) return;
      if (shared.best.load() < t) continue;
      Search local = root;
      local.set_task(t);
      try {
        if (local.assign(e, labels[t]) && local.dfs()) {
          result[t] = Outcome::True;
          found[t] = local.solution();
          int cur = shared.best.load();
          while (t < cur && !shared.best.compare_exchange_weak(cur, t)) {
          }
        } else {
          result[t] = Outcome::False;
        }
      } catch (const Stop&) {
        result[t] = shared.best.load() < t ? Outcome::Cancelled : Outcome::Unknown;
      }
    }
  };

  const int jobs = std::max(1, std::min(opt.jobs, tasks));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (int t = 0; t < tasks; ++t) {
    if (result[t] == Outcome::True) {
      out.certificate = FlowAssignment{P.ctx, found[t]};
      return finish(Verdict::True, "");
    }
    if (result[t] != Outcome::False) return finish(Verdict::Unknown, "budget exhausted");
  }
  return finish(Verdict::False, no_flow_reason(P.ctx));
}

Dom label_of(const Rational& value, int p) {
  const std::int64_t f = floor_of(value);
  const int i = static_cast<int>(((f % p) + p) % p);
  if (Rational(f) == value) return {0, Mask{1} << i};
  return {Mask{1} << i, 0};
}

// Where an edge of a reduced network comes from: an input edge, or a piece
// that was replaced by an abstract edge.
struct Origin {
  bool piece = false;
  std::size_t index = 0;
};

struct PieceRecord {
  GEdge q;
  std::vector<Origin> origin;
};

struct Reduced {
  Network net;
  std::vector<Origin> origin;
  std::vector<PieceRecord> pieces;
};

struct OutOfBudget {};

struct Context {
  Limits limits;
  std::map<std::string, IntervalSet> cache;
};

struct Candidate {
  VertexId a;
  VertexId b;
  std::vector<EdgeIndex> edges;
  std::vector<VertexId> inner;
};

using Ends = std::optional<std::pair<VertexId, VertexId>>;

// Articulation points of the graph restricted to vertices with alive[v].
std::vector<int> articulation_points(const std::vector<std::vector<std::pair<int, int>>>& adj,
                                     const std::vector<bool>& alive) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> cut(n, false);
  int counter = 0;
  struct Frame {
    int v;
    int parent_edge;
    std::size_t pos;
    int children;
  };
  for (int root = 0; root < n; ++root) {
    if (!alive[root] || index[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0, 0}};
    index[root] = low[root] = counter++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.pos < adj[f.v].size()) {
        const auto [w, e] = adj[f.v][f.pos++];
        if (!alive[w] || e == f.parent_edge) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          ++f.children;
          stack.push_back({w, e, 0, 0});
        } else {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) cut[done.v] = true;
      } else {
        Frame& up = stack.back();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (up.parent_edge >= 0 && low[done.v] >= index[up.v]) cut[up.v] = true;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (cut[v]) out.push_back(v);
  }
  return out;
}

// Edge sets meeting the rest of the network in exactly two vertices. The
// extra edge, if any, is never inside a piece.
std::vector<Candidate> find_pieces(const Network& g, const Ends& extra) {
  const int n = static_cast<int>(g.vertex_count());
  const int m = static_cast<int>(g.edge_count());
  std::vector<std::pair<int, int>> ends;
  for (const auto& e : g.edges()) {
    ends.emplace_back(static_cast<int>(g.index_of(e.tail)), static_cast<int>(g.index_of(e.head)));
  }
  if (extra) ends.emplace_back(static_cast<int>(g.index_of(extra->first)), static_cast<int>(g.index_of(extra->second)));
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    adj[ends[e].first].emplace_back(ends[e].second, e);
    adj[ends[e].second].emplace_back(ends[e].first, e);
  }
  std::vector<Candidate> out;
  const auto consider = [&](int a, int b, std::vector<EdgeIndex> edges, std::vector<VertexId> inner) {
    if (edges.size() < 2 || static_cast<int>(edges.size()) >= m) return;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() < 2 || static_cast<int>(edges.size()) >= m) return;
    if (edges.back() >= static_cast<EdgeIndex>(m)) return;
    out.push_back({g.vertices()[a], g.vertices()[b], std::move(edges), std::move(inner)});
  };

  std::map<std::pair<int, int>, std::vector<EdgeIndex>> bundles;
  for (int e = 0; e < static_cast<int>(ends.size()); ++e) {
    const auto [t, h] = ends[e];
    if (t != h) bundles[{std::min(t, h), std::max(t, h)}].push_back(static_cast<EdgeIndex>(e));
  }
  for (auto& [key, edges] : bundles) consider(key.first, key.second, edges, {});

  std::vector<bool> alive(n, true);
  std::vector<int> comp(n, -1);
  for (int a = 0; a < n; ++a) {
    alive[a] = false;
    for (const int b : articulation_points(adj, alive)) {
      if (b < a) continue;
      alive[b] = false;
      std::fill(comp.begin(), comp.end(), -1);
      int count = 0;
      for (int r = 0; r < n; ++r) {
        if (!alive[r] || comp[r] >= 0) continue;
        std::vector<int> stack{r};
        comp[r] = count;
        std::vector<VertexId> inner;
        std::vector<EdgeIndex> edges;
        bool to_a = false;
        bool to_b = false;
        while (!stack.empty()) {
          const int v = stack.back();
          stack.pop_back();
          inner.push_back(g.vertices()[v]);
          for (const auto& [w, e] : adj[v]) {
            if (w == a || w == b || v <= w) edges.push_back(static_cast<EdgeIndex>(e));
            if (w == a) to_a = true;
            if (w == b) to_b = true;
            if (alive[w] && comp[w] < 0) {
              comp[w] = count;
              stack.push_back(w);
            }
          }
        }
        ++count;
        if (to_a && to_b) consider(a, b, std::move(edges), std::move(inner));
      }
      alive[b] = true;
    }
    alive[a] = true;
  }
  return out;
}

IntervalSet capacity_in(const GEdge& q, Context& ctx);

// Capacity of a piece by the join calculus when it is a bundle or a path of
// length two, by the engine otherwise.
IntervalSet piece_capacity(const GEdge& q, Context& ctx) {
  const Network& g = q.network;
  if (g.vertex_count() == 2) {
    IntervalSet sum = edge_capacity(g, 0);
    for (EdgeIndex e = 1; e < g.edge_count(); ++e) sum = add(sum, edge_capacity(g, e));
    return sum;
  }
  if (g.vertex_count() == 3 && g.edge_count() == 2) return intersect(edge_capacity(g, 0), edge_capacity(g, 1));
  return capacity_in(q, ctx);
}

Reduced reduce(const Network& g, const Ends& extra, Context& ctx) {
  Reduced R{g, {}, {}};
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) R.origin.push_back({false, e});
  if (!ctx.limits.options.decompose) return R;
  for (;;) {
    auto cands = find_pieces(R.net, extra);
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
      return x.edges.size() < y.edges.size();
    });
    std::vector<bool> used(R.net.edge_count(), false);
    std::vector<const Candidate*> chosen;
    for (const Candidate& c : cands) {
      if (std::any_of(c.edges.begin(), c.edges.end(), [&](EdgeIndex e) { return used[e]; })) continue;
      for (const EdgeIndex e : c.edges) used[e] = true;
      chosen.push_back(&c);
    }
    if (chosen.empty()) return R;

    std::set<VertexId> gone;
    for (const Candidate* c : chosen) gone.insert(c->inner.begin(), c->inner.end());
    Network next(g.r());
    for (const VertexId v : R.net.vertices()) {
      if (!gone.count(v)) next.add_vertex(v);
    }
    std::vector<Origin> origin;
    for (EdgeIndex e = 0; e < R.net.edge_count(); ++e) {
      if (used[e]) continue;
      const Edge& edge = R.net.edge(e);
      next.add_edge(edge.tail, edge.head, edge.kind);
      origin.push_back(R.origin[e]);
    }
    for (const Candidate* c : chosen) {
      Network piece(g.r());
      piece.add_vertex(c->a);
      piece.add_vertex(c->b);
      for (const VertexId v : c->inner) piece.add_vertex(v);
      PieceRecord rec{GEdge{Network(g.r()), c->a, c->b}, {}};
      for (const EdgeIndex e : c->edges) {
        const Edge& edge = R.net.edge(e);
        piece.add_edge(edge.tail, edge.head, edge.kind);
        rec.origin.push_back(R.origin[e]);
      }
      rec.q.network = std::move(piece);
      const IntervalSet cap = piece_capacity(rec.q, ctx);
      next.add_edge(c->a, c->b, AbstractEdge{cap});
      origin.push_back({true, R.pieces.size()});
      R.pieces.push_back(std::move(rec));
    }
    R.net = std::move(next);
    R.origin = std::move(origin);
  }
}

Decision search(const Network& g, const std::optional<ExtraEdge>& extra, Context& ctx) {
  const Problem P = build_problem(g, extra, ctx.limits.options);
  return run(P, ctx.limits);
}

void expand(const Reduced& R, const Origin& o, const Rational& value, std::vector<Rational>& out,
            Context& ctx) {
  if (!o.piece) {
    out[o.index] = value;
    return;
  }
  const PieceRecord& rec = R.pieces[o.index];
  const Network& q = rec.q.network;
  const Decision d = search(q, ExtraEdge{rec.q.sink, rec.q.source, label_of(value, q.context().p), value}, ctx);
  if (d.verdict == Verdict::Unknown) throw OutOfBudget{};
  if (!d.certificate) throw std::logic_error("piece admits no flow for a value inside its capacity");
  for (EdgeIndex e = 0; e < q.edge_count(); ++e) expand(R, rec.origin[e], d.certificate->values[e], out, ctx);
}

// Decides g (plus the extra edge) after replacing pieces by their capacities;
// certificates are rebuilt on the input edges, the extra edge last.
Decision solve(const Network& g, const std::optional<ExtraEdge>& extra, Context& ctx) {
  const Ends ends = extra ? Ends{{extra->tail, extra->head}} : std::nullopt;
  try {
    const Reduced R = reduce(g, ends, ctx);
    Decision d = search(R.net, extra, ctx);
    if (!d.certificate) return d;
    std::vector<Rational> values(g.edge_count() + (extra ? 1 : 0));
    for (EdgeIndex e = 0; e < R.net.edge_count(); ++e) {
      expand(R, R.origin[e], d.certificate->values[e], values, ctx);
    }
    if (extra) values.back() = d.certificate->values.back();
    d.certificate->values = std::move(values);
    return d;
  } catch (const OutOfBudget&) {
    Decision d;
    d.reason = "budget exhausted";
    return d;
  }
}

IntervalSet capacity_in(const GEdge& q, Context& ctx) {
  const std::string key = write_network(q);
  if (const auto it = ctx.cache.find(key); it != ctx.cache.end()) return it->second;
  const Network& g = q.network;
  const ScaledContext& sc = g.context();
  const Reduced R = reduce(g, Ends{{q.sink, q.source}}, ctx);
  Mask units = 0;
  Mask points = 0;
  for (int kind = 0; kind < 2; ++kind) {
    for (int i = 0; i < sc.p; ++i) {
      const Dom label = kind == 0 ? Dom{Mask{1} << i, 0} : Dom{0, Mask{1} << i};
      const Decision d = search(R.net, ExtraEdge{q.sink, q.source, label, std::nullopt}, ctx);
      if (d.verdict == Verdict::Unknown) throw OutOfBudget{};
      if (d.verdict == Verdict::True) (kind == 0 ? units : points) |= Mask{1} << i;
    }
  }
  IntervalSet result(sc.p);
  try {
    result = IntervalSet::from_masks(sc.p, units, points);
  } catch (const std::invalid_argument&) {
    throw std::logic_error("capacity is not point-closed");
  }
  if (!result.is_symmetric()) throw std::logic_error("capacity is not symmetric");
  ctx.cache.emplace(key, result);
  return result;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

IntervalSet edge_capacity(const Network& g, EdgeIndex e) {
  const auto& edge = g.edge(e);
  if (edge.is_simple()) return g.context().window();
  if (const auto* a = std::get_if<AbstractEdge>(&edge.kind)) return a->capacity;
  throw std::invalid_argument("gadget edge '" + std::get<GadgetEdge>(edge.kind).name +
                              "' must be resolved before flow queries");
}

Network with_ratio(const Network& g, const Rational& r) {
  Network out(r);
  for (const VertexId v : g.vertices()) out.add_vertex(v);
  for (const auto& e : g.edges()) {
    if (!e.is_simple()) throw std::invalid_argument("with_ratio needs a network of simple edges");
    out.add_edge(e.tail, e.head);
  }
  return out;
}

Decision decide_sub_r_mcnzf(const Network& g, const SearchOptions& options) {
  if (g.edge_count() == 0) return Decision{Verdict::True, "", FlowAssignment{g.context(), {}}, 0};
  Context ctx{Limits(options), {}};
  Decision d = solve(g, std::nullopt, ctx);
  if (d.certificate) {
    if (const auto err = check_flow(g, *d.certificate)) {
      throw std::logic_error("engine produced an invalid certificate: " + *err);
    }
  }
  return d;
}

Decision decide_sub_r_mcnzf(const Network& g, const Rational& r, const SearchOptions& options) {
  return decide_sub_r_mcnzf(g.r() == r ? g : with_ratio(g, r), options);
}

IntervalSet capacity(const GEdge& q, const SearchOptions& options) {
  q.validate();
  const Network& g = q.network;
  {
    std::vector<std::pair<int, int>> ends;
    for (const auto& e : g.edges()) {
      ends.emplace_back(static_cast<int>(g.index_of(e.tail)), static_cast<int>(g.index_of(e.head)));
    }
    const auto comp = component_of(static_cast<int>(g.vertex_count()), ends, -1);
    if (comp[g.index_of(q.source)] != comp[g.index_of(q.sink)]) {
      throw std::invalid_argument("terminals lie in different components");
    }
  }
  Context context{Limits(options), {}};
  try {
    return capacity_in(q, context);
  } catch (const OutOfBudget&) {
    throw BudgetExhausted("capacity query ran out of budget");
  }
}

IntervalSet capacity(const GEdge& q, const Rational& r, const SearchOptions& options) {
  if (q.network.r() == r) return capacity(q, options);
  return capacity(GEdge{with_ratio(q.network, r), q.source, q.sink}, options);
}

IntervalSet parallel_join(const IntervalSet& a, const IntervalSet& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch");
  return add(a, b);
}

IntervalSet serial_join(const IntervalSet& a, const IntervalSet& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch");
  return intersect(a, b);
}

Decision decide_phi_lt(const Network& g, const SearchOptions& options,
                       std::optional<std::pair<VertexId, VertexId>> terminals) {
  if (g.edge_count() == 0) throw std::invalid_argument("network has no edges");
  const auto [u, v] = terminals.value_or(std::make_pair(g.edge(0).tail, g.edge(0).head));
  GEdge{g, u, v}.validate();
  Context ctx{Limits(options), {}};
  Decision d = solve(g, ExtraEdge{v, u, Dom{0, 1}, std::nullopt}, ctx);
  if (d.certificate) {
    d.certificate->values.pop_back();
    if (const auto err = check_flow(g, *d.certificate)) {
      throw std::logic_error("engine produced an invalid certificate: " + *err);
    }
  }
  return d;
}

}  // namespace cflow
