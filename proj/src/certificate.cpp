#include <algorithm>
#include <queue>
#include <sstream>

#include "cflow/flow_engine.hpp"
#include "cflow/formats.hpp"

namespace cflow {

std::optional<std::string> check_flow(const Network& g, const FlowAssignment& f) {
  const ScaledContext& ctx = g.context();
  if (!(f.context == ctx)) return "certificate ratio differs from the network";
  if (f.values.size() != g.edge_count()) return "certificate has the wrong number of edges";
  const Rational p(ctx.p);
  std::vector<Rational> balance(g.vertex_count(), Rational(0));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Rational& t = f.values[e];
    if (t < Rational(0) || t >= p) return "edge " + std::to_string(e) + ": value outside [0, p)";
    if (!edge_capacity(g, e).contains(t)) {
      return "edge " + std::to_string(e) + ": value " + to_string(t) + " outside capacity";
    }
    balance[g.index_of(g.edge(e).head)] += t;
    balance[g.index_of(g.edge(e).tail)] -= t;
  }
  for (std::size_t v = 0; v < balance.size(); ++v) {
    if (balance[v].denominator() != 1 || balance[v].numerator() % ctx.p != 0) {
      return "vertex " + std::to_string(g.vertices()[v]) + ": conservation fails";
    }
  }
  return std::nullopt;
}

RealFlow lift_modular_flow(const Network& g, const FlowAssignment& f) {
  if (const auto err = check_flow(g, f)) throw std::invalid_argument("unverified certificate: " + *err);
  const ScaledContext& ctx = g.context();
  const Rational p(ctx.p);
  const Rational lo(ctx.q);
  const Rational hi(ctx.p - ctx.q);
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();

  std::vector<int> tail(m), head(m);
  std::vector<Rational> value(m);
  std::vector<bool> reversed(m, false);
  for (EdgeIndex e = 0; e < m; ++e) {
    if (!(f.values[e] > lo && f.values[e] < hi)) {
      throw std::invalid_argument("edge " + std::to_string(e) + " is outside the window (1, r-1)");
    }
    tail[e] = static_cast<int>(g.index_of(g.edge(e).tail));
    head[e] = static_cast<int>(g.index_of(g.edge(e).head));
    value[e] = f.values[e];
  }
  // Excess in multiples of p.
  std::vector<std::int64_t> excess(n, 0);
  {
    std::vector<Rational> b(n, Rational(0));
    for (EdgeIndex e = 0; e < m; ++e) {
      b[head[e]] += value[e];
      b[tail[e]] -= value[e];
    }
    for (std::size_t v = 0; v < n; ++v) excess[v] = (b[v] / p).numerator();
  }
  std::vector<std::vector<EdgeIndex>> inc(n);
  for (EdgeIndex e = 0; e < m; ++e) {
    inc[tail[e]].push_back(e);
    inc[head[e]].push_back(e);
  }

  for (;;) {
    const auto start = std::find_if(excess.begin(), excess.end(), [](auto x) { return x > 0; });
    if (start == excess.end()) break;
    const int s = static_cast<int>(start - excess.begin());
    // Walk edges backwards from s until a vertex with negative excess.
    std::vector<long> via(n, -1);
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    int found = -1;
    while (!q.empty() && found < 0) {
      const int v = q.front();
      q.pop();
      for (const EdgeIndex e : inc[v]) {
        if (head[e] != v || seen[tail[e]]) continue;
        seen[tail[e]] = true;
        via[tail[e]] = static_cast<long>(e);
        if (excess[tail[e]] < 0) {
          found = tail[e];
          break;
        }
        q.push(tail[e]);
      }
    }
    if (found < 0) throw std::logic_error("no repair path; input is not a modular flow");
    for (int v = found; v != s;) {
      const auto e = static_cast<EdgeIndex>(via[v]);
      const int next = head[e];
      std::swap(tail[e], head[e]);
      value[e] = p - value[e];
      reversed[e] = !reversed[e];
      v = next;
    }
    --excess[s];
    ++excess[found];
  }

  RealFlow out;
  out.reversed = reversed;
  Rational lo_seen = value.empty() ? Rational(1) : value[0];
  Rational hi_seen = lo_seen;
  for (EdgeIndex e = 0; e < m; ++e) {
    out.values.push_back(ctx.unscale(value[e]));
    lo_seen = std::min(lo_seen, value[e]);
    hi_seen = std::max(hi_seen, value[e]);
  }
  out.bound = Rational(1) + hi_seen / lo_seen;
  if (const auto err = check_real_flow(g, out)) throw std::logic_error("lift failed: " + *err);
  return out;
}

std::optional<std::string> check_real_flow(const Network& g, const RealFlow& flow) {
  if (flow.values.size() != g.edge_count() || flow.reversed.size() != g.edge_count()) {
    return "flow has the wrong number of edges";
  }
  const Rational r = g.r();
  std::vector<Rational> balance(g.vertex_count(), Rational(0));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Rational& t = flow.values[e];
    if (!(t > Rational(1) && t < r - Rational(1))) return "edge " + std::to_string(e) + ": value outside (1, r-1)";
    auto from = g.index_of(g.edge(e).tail);
    auto to = g.index_of(g.edge(e).head);
    if (flow.reversed[e]) std::swap(from, to);
    balance[to] += t;
    balance[from] -= t;
  }
  for (std::size_t v = 0; v < balance.size(); ++v) {
    if (balance[v] != Rational(0)) return "vertex " + std::to_string(g.vertices()[v]) + ": conservation fails";
  }
  return std::nullopt;
}

std::string write_certificate(const Network& g, const FlowAssignment& f) {
  if (f.values.size() != g.edge_count()) throw std::invalid_argument("certificate size mismatch");
  std::ostringstream out;
  out << "cfcert " << to_string(g.r()) << ' ' << g.edge_count() << '\n';
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    out << "orient " << e << ' ' << g.edge(e).tail << ' ' << g.edge(e).head << '\n';
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Rational v = f.context.unscale(f.values[e]);
    out << e << ' ' << v.numerator() << '/' << v.denominator() << '\n';
  }
  return out.str();
}

FlowAssignment read_certificate(std::string_view text, const Network& g) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t m = 0;
  std::vector<bool> oriented;
  std::vector<std::optional<Rational>> values;
  const ScaledContext& ctx = g.context();
  const auto fail = [&](const std::string& what) {
    throw ParseError("certificate line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (!header) {
        if (tok.size() != 3 || tok[0] != "cfcert") fail("expected 'cfcert <r> <edges>'");
        if (parse_rational(tok[1]) != g.r()) fail("ratio differs from the network");
        m = std::stoull(tok[2]);
        if (m != g.edge_count()) fail("edge count differs from the network");
        oriented.assign(m, false);
        values.assign(m, std::nullopt);
        header = true;
      } else if (tok[0] == "orient") {
        if (tok.size() != 4) fail("expected 'orient <edge> <tail> <head>'");
        const auto e = std::stoull(tok[1]);
        if (e >= m) fail("edge index out of range");
        if (std::stoll(tok[2]) != g.edge(e).tail || std::stoll(tok[3]) != g.edge(e).head) {
          fail("orientation differs from the network");
        }
        oriented[e] = true;
      } else {
        if (tok.size() != 2) fail("expected '<edge> <value>'");
        const auto e = std::stoull(tok[0]);
        if (e >= m) fail("edge index out of range");
        if (values[e]) fail("duplicate value");
        values[e] = ctx.scale(parse_rational(tok[1]));
      }
    } catch (const std::invalid_argument& err) {
      fail(err.what());
    } catch (const std::out_of_range& err) {
      fail(err.what());
    }
  }
  if (!header) throw ParseError("missing certificate header");
  FlowAssignment f{ctx, {}};
  for (std::size_t e = 0; e < m; ++e) {
    if (!oriented[e]) throw ParseError("edge " + std::to_string(e) + " has no orientation line");
    if (!values[e]) throw ParseError("edge " + std::to_string(e) + " has no value");
    f.values.push_back(*values[e]);
  }
  return f;
}

}  // namespace cflow
