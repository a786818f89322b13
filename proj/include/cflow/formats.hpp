#pragma once

// Text codecs: graph6 / sparse6 (McKay's formats), the native network
// format, and the hypergraph format.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "cflow/network.hpp"

namespace cflow {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple graphs only: no parallel edges, no abstract or gadget edges.
std::string graph6_encode(const Network& g);
// Multigraphs allowed; edges must be simple.
std::string sparse6_encode(const Network& g);
// Accepts graph6 and sparse6, with or without the ">>graph6<<" / ">>sparse6<<"
// header and a trailing newline. Vertices are 0..n-1 and every edge is oriented
// from its smaller endpoint.
Network graph6_decode(std::string_view text);

// Native format, one record per line, '#' starts a comment:
//   cfnet <r> <n-vertices>
//   terminals <u> <v>                      (g-edge files only)
//   <u> <v> simple | <capacity> | gadget:<name>
// Capacities use the interval grammar with endpoints in units of r.
struct NetworkFile {
  Network network;
  std::optional<std::pair<VertexId, VertexId>> terminals;
};

NetworkFile read_network(std::string_view text);
std::string write_network(const Network& g);
// Vertices are renumbered 0..n-1 in id order; terminals follow the renaming.
std::string write_network(const GEdge& q);
GEdge to_gedge(const NetworkFile& file);

// One triplet "a b c" per line, '#' comments.
Hypergraph3 read_hypergraph(std::string_view text);
std::string write_hypergraph(const Hypergraph3& h);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace cflow
