#pragma once

// Structural predicates on concrete graphs: bridges, girth, cyclic edge
// connectivity, 3-edge-colorability and the snark test.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cflow/network.hpp"

namespace cflow {

// Bridge flags for a multigraph on vertices 0..n-1 given as an edge list.
std::vector<bool> find_bridges(int n, const std::vector<std::pair<int, int>>& edges);

std::vector<EdgeIndex> bridges(const Network& g);
bool has_bridge(const Network& g);

bool is_cubic(const Network& g);

constexpr int kInfiniteGirth = std::numeric_limits<int>::max();
// Parallel edges count as a 2-cycle; forests give kInfiniteGirth.
int girth(const Network& g);

// True when no set of fewer than t edges separates two parts that both
// contain a cycle. Supports 1 <= t <= 4.
bool cyclic_edge_connectivity_at_least(const Network& g, int t);

// Throws std::invalid_argument unless g is cubic.
bool is_3_edge_colorable(const Network& g);
// Proper 3-edge-coloring as colors 0..2 per edge, if one exists; any graph
// of maximum degree at most 3.
std::optional<std::vector<int>> three_edge_coloring(const Network& g);

struct SnarkReport {
  bool cubic = false;
  int girth = 0;
  bool cyclically_4_edge_connected = false;
  bool three_edge_colorable = false;
  bool is_snark = false;
};

SnarkReport snark_report(const Network& g);
// Fixed-order "key: value" lines.
std::string to_string(const SnarkReport& report);

}  // namespace cflow
