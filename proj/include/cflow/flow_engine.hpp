#pragma once

// Decision procedures for sub-r modular circular nowhere-zero flows and open
// r-capacities of two-terminal networks.
//
// All values are scaled: for r = p/q a flow value t in R/rZ is stored as q*t
// in R/pZ, so simple edges carry values in (q, p-q).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cflow/interval_set.hpp"
#include "cflow/network.hpp"
#include "cflow/rational.hpp"
#include "cflow/scaled_context.hpp"

namespace cflow {

enum class Verdict { False, True, Unknown };

std::string to_string(Verdict v);

struct SearchOptions {
  // 0 means unlimited.
  std::uint64_t node_budget = 0;
  double time_budget_seconds = 0.0;
  // Root subtrees are distributed over this many threads.
  int jobs = 1;
  // Disables the restriction of non-bridge edges to interval labels and of
  // bridges to point labels; every label inside the capacity is searched.
  bool pure_search = false;
  bool symmetry_breaking = true;
  // Replaces subnetworks attached at two vertices by abstract edges of their
  // capacity before searching; certificates are rebuilt piecewise.
  bool decompose = true;
};

// Scaled values in [0, p) on the reference orientation of each edge.
struct FlowAssignment {
  ScaledContext context;
  std::vector<Rational> values;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::optional<FlowAssignment> certificate;
  std::uint64_t nodes = 0;

  bool is_true() const { return verdict == Verdict::True; }
  bool is_false() const { return verdict == Verdict::False; }
};

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scaled capacity of an edge: the window for simple edges, the stored set for
// abstract ones. Throws for gadget edges.
IntervalSet edge_capacity(const Network& g, EdgeIndex e);

// Copy of a network of simple edges under another ratio. Throws when the
// network has abstract or gadget edges.
Network with_ratio(const Network& g, const Rational& r);

// Existence of a flow with every value inside its open capacity, under the
// ratio of g. Gadget edges must be resolved beforehand. Edgeless networks are
// true with an empty certificate.
Decision decide_sub_r_mcnzf(const Network& g, const SearchOptions& options = {});
// Convenience for networks of simple edges.
Decision decide_sub_r_mcnzf(const Network& g, const Rational& r, const SearchOptions& options = {});

// Open capacity of a g-edge: every value that can be pushed from source to
// sink. Throws BudgetExhausted if a query runs out of budget, and
// std::invalid_argument when the terminals lie in different components.
IntervalSet capacity(const GEdge& q, const SearchOptions& options = {});
IntervalSet capacity(const GEdge& q, const Rational& r, const SearchOptions& options = {});

IntervalSet parallel_join(const IntervalSet& a, const IntervalSet& b);
IntervalSet serial_join(const IntervalSet& a, const IntervalSet& b);

// Same question as decide_sub_r_mcnzf, answered as "0 lies in the capacity
// between two adjacent vertices". Defaults to the ends of edge 0.
Decision decide_phi_lt(const Network& g, const SearchOptions& options = {},
                       std::optional<std::pair<VertexId, VertexId>> terminals = std::nullopt);

// nullopt when the assignment is a valid flow; otherwise a description of the
// first violation.
std::optional<std::string> check_flow(const Network& g, const FlowAssignment& f);

// A positive real flow: reversed[e] flips the reference orientation of edge e,
// values are in units of r (not scaled) and lie in the open interval (1, r-1),
// and conservation holds exactly.
struct RealFlow {
  std::vector<bool> reversed;
  std::vector<Rational> values;
  // 1 + max/min: the flow rescaled by 1/min is a bound-CNZF.
  Rational bound;
};

// Requires every value of f to lie in the window (q, p-q).
RealFlow lift_modular_flow(const Network& g, const FlowAssignment& f);
std::optional<std::string> check_real_flow(const Network& g, const RealFlow& flow);

// Nowhere-zero Z_4-flow existence, by backtracking. Simple edges only.
bool decide_4flow(const Network& g);

// Certificate text: a header naming r and the reference orientation, then one
// "edge-index value" line per edge with values in units of r.
std::string write_certificate(const Network& g, const FlowAssignment& f);
// Parses a certificate and checks its orientation against g.
FlowAssignment read_certificate(std::string_view text, const Network& g);

}  // namespace cflow
