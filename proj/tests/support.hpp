#pragma once

// Independent oracles and fixed graph suites shared by the unit tests and the
// acceptance runner. Nothing here calls into the engine or the interval
// algebra beyond reading raw masks.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cflow/interval_set.hpp"
#include "cflow/network.hpp"

namespace cflow::testing {

struct NamedGraph {
  std::string name;
  std::string code;  // graph6 or sparse6
};

// 20 simple graphs frozen from networkx.
const std::vector<NamedGraph>& graph_suite();
// Graphs and multigraphs with at most 8 edges.
const std::vector<NamedGraph>& small_suite();
Network load(const NamedGraph& g);
Network named(const std::string& name);

// Flower snark J_n (n odd).
Network flower_snark(int n);

// Symmetric open sets of R/kZ with integer boundaries, found by brute force
// over the half-integer sample points 0, 1/2, 1, ... ; (units, points) masks.
std::vector<std::pair<std::uint64_t, std::uint64_t>> si_oracle(int k);

// A+B by searching quarter-grid splittings of every half-grid point.
std::pair<std::uint64_t, std::uint64_t> sum_oracle(const IntervalSet& a, const IntervalSet& b);

// Exhaustive search for a flow with every value on the grid (1/8)Z of the
// scaled circle R/pZ and inside its capacity. Edges must be simple or
// abstract.
bool grid_flow_oracle(const Network& g);

// Re-checks a scaled flow: conservation modulo p at every vertex and strict
// membership of every value in its capacity.
bool flow_is_valid(const Network& g, const std::vector<Rational>& values);

// Brute force over all 2^n colorings.
bool colorable_oracle(const Hypergraph3& h);

// All hypergraphs on nodes {1,2,3,4} with at most 3 triplets.
std::vector<Hypergraph3> small_hypergraphs();
Hypergraph3 fano();
Hypergraph3 fano_minus_one();

}  // namespace cflow::testing
