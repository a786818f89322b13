#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cflow/constructions.hpp"
#include "cflow/flow_engine.hpp"
#include "cflow/formats.hpp"
#include "cflow/graph_analysis.hpp"
#include "cflow/interval_expr.hpp"
#include "cflow/reduction.hpp"

using namespace cflow;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kError = 2, kUnknown = 3 };

struct Common {
  std::string r;
  double budget = 600;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string out;

  SearchOptions search() const {
    SearchOptions o;
    o.time_budget_seconds = budget;
    o.jobs = jobs;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_r = true) {
  if (with_r) cmd->add_option("--r", c.r, "ratio r as p/q or an integer, 4 < r <= 5");
  cmd->add_option("--budget", c.budget, "time budget in seconds (0 = none)")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "search threads")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for randomized output")->capture_default_str();
  cmd->add_option("--out", c.out, "output path");
}

bool is_native(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string first;
    if (words >> first) return first == "cfnet";
  }
  return false;
}

NetworkFile load(const std::string& path) {
  const std::string text = read_file(path);
  if (is_native(text)) return read_network(text);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  return NetworkFile{graph6_decode(line), std::nullopt};
}

Network at_ratio(const Network& g, const std::string& r) {
  return r.empty() ? g : with_ratio(g, parse_rational(r));
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

int report(const Decision& d) {
  if (d.verdict == Verdict::Unknown) {
    std::cout << "unknown: " << d.reason << '\n';
    return kUnknown;
  }
  std::cout << to_string(d.verdict);
  if (!d.reason.empty()) std::cout << ": " << d.reason;
  std::cout << '\n';
  return d.is_true() ? kTrue : kFalse;
}

std::optional<GEdge> named_gedge(const std::string& name, bool concrete) {
  if (name == "petersen_minus_edge") return petersen_minus_edge();
  if (name == "simple") return simple_gedge();
  if (name == "thick14") return thick_14_edge(concrete);
  if (name == "measure2_edge") return measure2_edge(concrete);
  if (name == "k4_gadget") return k4_gadget(concrete);
  if (name == "butterfly") return butterfly(concrete);
  for (const auto& entry : gi5_catalog()) {
    if (entry.name == name) return entry.build(concrete);
  }
  return std::nullopt;
}

std::optional<Network> named_network(const std::string& name, int depth, int n, std::uint64_t seed) {
  if (name == "petersen") return petersen();
  if (name == "k4") return complete_graph(4);
  if (name == "k4_triangle_41") return k4_triangle_41();
  if (name == "s28") return s28();
  if (name == "mr") return mr_family(depth);
  if (name == "mr_abstract") return mr_family_abstract(depth);
  if (name == "random_cubic") return random_cubic_graph(n, seed);
  return std::nullopt;
}

std::string manifest(const std::string& name, const Network& g, const std::string& file) {
  const SnarkReport rep = snark_report(g);
  std::ostringstream out;
  out << "name: " << name << '\n'
      << "file: " << file << '\n'
      << "vertices: " << g.vertex_count() << '\n'
      << "edges: " << g.edge_count() << '\n'
      << "girth: " << (rep.girth == kInfiniteGirth ? std::string("inf") : std::to_string(rep.girth)) << '\n'
      << "is_snark: " << (rep.is_snark ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circular nowhere-zero flow laboratory"};
  app.require_subcommand(1);

  Common common;

  auto* algebra = app.add_subcommand("algebra", "evaluate capacity expressions over SI_k");
  int k = 5;
  std::vector<std::string> exprs;
  algebra->add_option("-k", k, "modulus")->capture_default_str();
  algebra->add_option("expr", exprs, "expressions")->required();

  auto* cap = app.add_subcommand("capacity", "open capacity of a g-edge");
  std::string input;
  std::vector<VertexId> terminals;
  cap->add_option("input", input, "network file (native or graph6)")->required();
  cap->add_option("--terminals", terminals, "terminals u v (required for graph6)")->expected(2);
  add_common(cap, common);

  auto* decide = app.add_subcommand("decide", "decide whether a sub-r-mcnzf exists");
  decide->add_option("input", input, "network file (native or graph6)")->required();
  add_common(decide, common);

  auto* construct = app.add_subcommand("construct", "write a named network or g-edge");
  std::string name;
  int depth = 1;
  int order = 10;
  bool concrete = false;
  construct->add_option("name", name, "construction name")->required();
  construct->add_option("--depth", depth, "family depth")->capture_default_str();
  construct->add_option("--n", order, "order for random_cubic")->capture_default_str();
  construct->add_flag("--concrete", concrete, "splice gadgets instead of abstract edges");
  add_common(construct, common, false);

  auto* reduce = app.add_subcommand("reduce", "compile a 3-hypergraph into G(H)");
  reduce->add_option("input", input, "hypergraph file")->required();
  add_common(reduce, common);

  auto* snark = app.add_subcommand("verify-snark", "snark report for graph6 graphs");
  snark->add_option("input", input, "graph6 file, one graph per line, or a native network")->required();

  auto* corpus = app.add_subcommand("corpus", "write a family of graphs as graph6 plus manifests");
  std::string family;
  int count = 10;
  corpus->add_option("family", family, "petersen | s28 | mr | random_cubic")->required();
  corpus->add_option("--depth", depth, "maximum mr depth")->capture_default_str();
  corpus->add_option("--n", order, "order for random_cubic")->capture_default_str();
  corpus->add_option("--count", count, "number of random graphs")->capture_default_str();
  add_common(corpus, common, false);

  auto* verify = app.add_subcommand("verify", "re-check a certificate against a network");
  std::string cert;
  verify->add_option("input", input, "network file")->required();
  verify->add_option("certificate", cert, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (algebra->parsed()) {
      for (const auto& e : exprs) {
        const IntervalSet s = evaluate_expression(e, k);
        std::cout << to_string(s) << " amp=" << amplitude(s) << " me=" << measure(s) << '\n';
      }
      return 0;
    }

    if (cap->parsed()) {
      const NetworkFile file = load(input);
      GEdge q{at_ratio(file.network, common.r), 0, 0};
      if (!terminals.empty()) {
        q.source = terminals[0];
        q.sink = terminals[1];
      } else if (file.terminals) {
        std::tie(q.source, q.sink) = *file.terminals;
      } else {
        throw std::invalid_argument("no terminals given");
      }
      try {
        const IntervalSet c = capacity(q, common.search());
        std::cout << format_capacity(c, q.network.context()) << '\n';
        return kTrue;
      } catch (const BudgetExhausted& e) {
        std::cout << "unknown: " << e.what() << '\n';
        return kUnknown;
      }
    }

    if (decide->parsed()) {
      const Network g = at_ratio(load(input).network, common.r);
      const Decision d = decide_sub_r_mcnzf(g, common.search());
      if (d.certificate && !common.out.empty()) write_file(common.out, write_certificate(g, *d.certificate));
      return report(d);
    }

    if (construct->parsed()) {
      if (const auto q = named_gedge(name, concrete)) {
        emit(common.out, write_network(*q));
      } else if (const auto g = named_network(name, depth, order, common.seed)) {
        emit(common.out, write_network(*g));
      } else {
        throw std::invalid_argument("unknown construction '" + name + "'");
      }
      return 0;
    }

    if (reduce->parsed()) {
      const Hypergraph3 h = read_hypergraph(read_file(input));
      const Rational r = common.r.empty() ? Rational(5) : parse_rational(common.r);
      const Reduction red = rational_variant(h, r);
      for (const int x : red.layout.dropped) std::cerr << "warning: node " << x << " is in no triplet\n";
      emit(common.out, write_network(red.network));
      if (!common.out.empty()) write_file(common.out + ".layout", write_layout(red.layout));
      return 0;
    }

    if (snark->parsed()) {
      const std::string text = read_file(input);
      std::vector<Network> graphs;
      if (is_native(text)) {
        graphs.push_back(read_network(text).network);
      } else {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
          if (line.find_first_not_of(" \t\r") != std::string::npos) graphs.push_back(graph6_decode(line));
        }
      }
      bool all = !graphs.empty();
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (graphs.size() > 1) std::cout << "graph " << i << '\n';
        const SnarkReport rep = snark_report(graphs[i]);
        std::cout << to_string(rep);
        all = all && rep.is_snark;
      }
      return all ? kTrue : kFalse;
    }

    if (corpus->parsed()) {
      const std::filesystem::path dir = common.out.empty() ? "." : common.out;
      std::filesystem::create_directories(dir);
      std::vector<std::pair<std::string, Network>> items;
      if (family == "petersen") items.emplace_back("petersen", petersen());
      if (family == "s28") items.emplace_back("s28", s28());
      if (family == "mr") {
        for (int d = 0; d <= depth; ++d) items.emplace_back("mr_" + std::to_string(d), mr_family(d));
      }
      if (family == "random_cubic") {
        for (int i = 0; i < count; ++i) {
          const auto seed = common.seed + static_cast<std::uint64_t>(i);
          items.emplace_back("random_cubic_" + std::to_string(order) + "_" + std::to_string(seed),
                             random_cubic_graph(order, seed));
        }
      }
      if (items.empty()) throw std::invalid_argument("unknown family '" + family + "'");
      for (const auto& [label, g] : items) {
        const std::string file = label + ".g6";
        write_file((dir / file).string(), graph6_encode(g) + "\n");
        write_file((dir / (label + ".manifest")).string(), manifest(label, g, file));
        std::cout << (dir / file).string() << '\n';
      }
      return 0;
    }

    if (verify->parsed()) {
      const Network g = load(input).network;
      const FlowAssignment f = read_certificate(read_file(cert), g);
      if (const auto err = check_flow(g, f)) {
        std::cout << "invalid: " << *err << '\n';
        return kFalse;
      }
      std::cout << "valid\n";
      return kTrue;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
