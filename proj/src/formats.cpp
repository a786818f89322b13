#include "cflow/formats.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace cflow {

namespace {

constexpr std::int64_t kMaxGraph6Vertices = 68719476735;  // 2^36 - 1
// Dense graph6 bodies beyond this would not fit in memory anyway.
constexpr std::int64_t kMaxDecodedVertices = 1 << 20;

void append_size(std::string& out, std::int64_t n) {
  if (n < 0 || n > kMaxGraph6Vertices) throw std::invalid_argument("vertex count overflow");
  if (n <= 62) {
    out += static_cast<char>(n + 63);
  } else if (n <= 258047) {
    out += '~';
    for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(((n >> shift) & 63) + 63);
  }
}

void append_bits(std::string& out, const std::vector<bool>& bits) {
  for (std::size_t i = 0; i < bits.size(); i += 6) {
    int group = 0;
    for (std::size_t b = 0; b < 6; ++b) {
      group <<= 1;
      if (i + b < bits.size() && bits[i + b]) group |= 1;
    }
    out += static_cast<char>(group + 63);
  }
}

std::int64_t read_size(std::string_view body, std::size_t& pos) {
  const auto byte = [&](std::size_t at) -> std::int64_t {
    if (at >= body.size()) throw ParseError("truncated graph6 size field");
    const int c = static_cast<unsigned char>(body[at]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character");
    return c - 63;
  };
  if (pos >= body.size()) throw ParseError("missing graph6 size field");
  if (body[pos] != '~') return byte(pos++);
  if (pos + 1 < body.size() && body[pos + 1] == '~') {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | byte(pos + 2 + i);
    pos += 8;
    return n;
  }
  std::int64_t n = 0;
  for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | byte(pos + 1 + i);
  pos += 4;
  return n;
}

std::vector<bool> read_bits(std::string_view body, std::size_t pos) {
  std::vector<bool> bits;
  for (; pos < body.size(); ++pos) {
    const int c = static_cast<unsigned char>(body[pos]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character");
    for (int b = 5; b >= 0; --b) bits.push_back(((c - 63) >> b) & 1);
  }
  return bits;
}

struct Pair {
  std::int64_t lo;
  std::int64_t hi;
  auto operator<=>(const Pair&) const = default;
};

std::vector<Pair> simple_pairs(const Network& g) {
  std::vector<Pair> pairs;
  for (const auto& e : g.edges()) {
    if (!e.is_simple()) throw std::invalid_argument("graph6/sparse6 encode only simple edges");
    auto a = static_cast<std::int64_t>(g.index_of(e.tail));
    auto b = static_cast<std::int64_t>(g.index_of(e.head));
    if (a > b) std::swap(a, b);
    pairs.push_back({a, b});
  }
  return pairs;
}

std::string strip_line(std::string_view text) {
  std::string s(text);
  const auto hash = s.find('#');
  if (hash != std::string::npos) s.resize(hash);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  return s.substr(start);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (const char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::int64_t to_int(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + token + "'");
  }
}

}  // namespace

std::string graph6_encode(const Network& g) {
  auto pairs = simple_pairs(g);
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw std::invalid_argument("graph6 cannot encode parallel edges; use sparse6");
  }
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  std::string out;
  append_size(out, n);
  std::set<Pair> present(pairs.begin(), pairs.end());
  std::vector<bool> bits;
  for (std::int64_t j = 1; j < n; ++j) {
    for (std::int64_t i = 0; i < j; ++i) bits.push_back(present.count({i, j}) != 0);
  }
  append_bits(out, bits);
  return out;
}

std::string sparse6_encode(const Network& g) {
  auto pairs = simple_pairs(g);
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return std::tie(a.hi, a.lo) < std::tie(b.hi, b.lo); });
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  int k = 1;
  while ((std::int64_t{1} << k) < n) ++k;

  std::vector<bool> bits;
  const auto push = [&](bool b, std::int64_t x) {
    bits.push_back(b);
    for (int s = k - 1; s >= 0; --s) bits.push_back((x >> s) & 1);
  };
  std::int64_t current = 0;
  for (const auto& [u, v] : pairs) {
    if (v == current) {
      push(false, u);
    } else if (v == current + 1) {
      current = v;
      push(true, u);
    } else {
      current = v;
      push(true, v);
      push(false, u);
    }
  }
  const auto pad = static_cast<int>((6 - bits.size() % 6) % 6);
  // With n = 2^k and k < 6, padding ones could be read as an edge to n-1.
  if (k < 6 && n == (std::int64_t{1} << k) && pad >= k && current < n - 1) {
    bits.push_back(false);
  }
  while (bits.size() % 6 != 0) bits.push_back(true);

  std::string out = ":";
  append_size(out, n);
  append_bits(out, bits);
  return out;
}

Network graph6_decode(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
  bool sparse = false;
  if (body.starts_with(">>graph6<<")) body.remove_prefix(10);
  if (body.starts_with(">>sparse6<<")) {
    body.remove_prefix(11);
    sparse = true;
  }
  if (!body.empty() && body.front() == ':') {
    sparse = true;
    body.remove_prefix(1);
  } else if (sparse) {
    throw ParseError("sparse6 header without ':' prefix");
  }

  std::size_t pos = 0;
  const auto n = read_size(body, pos);
  if (n > kMaxDecodedVertices) throw ParseError("vertex count overflow");
  const auto bits = read_bits(body, pos);

  Network g;
  g.add_vertices(static_cast<std::size_t>(n));
  if (!sparse) {
    const auto needed = static_cast<std::size_t>(n * (n - 1) / 2);
    if (bits.size() < needed || bits.size() >= needed + 6) {
      throw ParseError("graph6 body length does not match vertex count");
    }
    std::vector<Pair> pairs;
    std::size_t b = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      for (std::int64_t i = 0; i < j; ++i) {
        if (bits[b++]) pairs.push_back({i, j});
      }
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [i, j] : pairs) g.add_edge(i, j);
    return g;
  }

  int k = 1;
  while ((std::int64_t{1} << k) < n) ++k;
  std::int64_t v = 0;
  std::size_t b = 0;
  while (b + static_cast<std::size_t>(k) + 1 <= bits.size()) {
    const bool flag = bits[b++];
    std::int64_t x = 0;
    for (int s = 0; s < k; ++s) x = (x << 1) | (bits[b++] ? 1 : 0);
    if (flag) ++v;
    if (x >= n || v >= n) break;
    if (x > v) {
      v = x;
    } else {
      if (x == v) throw ParseError("sparse6 self-loop at vertex " + std::to_string(x));
      g.add_edge(x, v);
    }
  }
  return g;
}

NetworkFile read_network(std::string_view text) {
  const auto lines = split_lines(text);
  std::optional<NetworkFile> file;
  for (std::size_t no = 0; no < lines.size(); ++no) {
    const std::string line = strip_line(lines[no]);
    if (line.empty()) continue;
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    const std::size_t line_no = no + 1;

    if (!file) {
      if (tokens.size() != 3 || tokens[0] != "cfnet") {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'cfnet <r> <n>'");
      }
      Rational r;
      try {
        r = parse_rational(tokens[1]);
        file.emplace(NetworkFile{Network(r), std::nullopt});
      } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
      const auto n = to_int(tokens[2], line_no);
      if (n < 0 || n > kMaxDecodedVertices) throw ParseError("vertex count overflow");
      file->network.add_vertices(static_cast<std::size_t>(n));
      continue;
    }
    if (tokens[0] == "terminals") {
      if (tokens.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": terminals u v");
      file->terminals = std::make_pair(to_int(tokens[1], line_no), to_int(tokens[2], line_no));
      continue;
    }
    if (tokens.size() < 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '<u> <v> <kind>'");
    }
    const auto u = to_int(tokens[0], line_no);
    const auto v = to_int(tokens[1], line_no);
    std::string kind;
    for (std::size_t i = 2; i < tokens.size(); ++i) kind += tokens[i];
    try {
      if (kind == "simple") {
        file->network.add_edge(u, v);
      } else if (kind.starts_with("gadget:")) {
        file->network.add_gadget_edge(u, v, kind.substr(7));
      } else {
        file->network.add_abstract_edge(u, v, kind);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!file) throw ParseError("missing 'cfnet' header");
  if (file->terminals) {
    GEdge probe{file->network, file->terminals->first, file->terminals->second};
    try {
      probe.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return std::move(*file);
}

namespace {

std::string write_network_impl(const Network& g,
                               std::optional<std::pair<VertexId, VertexId>> terminals) {
  const Network net = g.relabeled();
  std::ostringstream out;
  out << "cfnet " << to_string(net.r()) << ' ' << net.vertex_count() << '\n';
  if (terminals) {
    out << "terminals " << g.index_of(terminals->first) << ' ' << g.index_of(terminals->second)
        << '\n';
  }
  for (const auto& e : net.edges()) {
    out << e.tail << ' ' << e.head << ' ';
    if (e.is_simple()) {
      out << "simple";
    } else if (const auto* a = std::get_if<AbstractEdge>(&e.kind)) {
      out << format_capacity(a->capacity, net.context());
    } else {
      out << "gadget:" << std::get<GadgetEdge>(e.kind).name;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string write_network(const Network& g) { return write_network_impl(g, std::nullopt); }

std::string write_network(const GEdge& q) {
  q.validate();
  return write_network_impl(q.network, std::make_pair(q.source, q.sink));
}

GEdge to_gedge(const NetworkFile& file) {
  if (!file.terminals) throw std::invalid_argument("network file declares no terminals");
  GEdge q{file.network, file.terminals->first, file.terminals->second};
  q.validate();
  return q;
}

Hypergraph3 read_hypergraph(std::string_view text) {
  std::vector<std::array<int, 3>> triplets;
  const auto lines = split_lines(text);
  for (std::size_t no = 0; no < lines.size(); ++no) {
    const std::string line = strip_line(lines[no]);
    if (line.empty()) continue;
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.size() != 3) {
      throw ParseError("line " + std::to_string(no + 1) + ": expected three node ids");
    }
    std::array<int, 3> t{};
    for (std::size_t i = 0; i < 3; ++i) t[i] = static_cast<int>(to_int(tokens[i], no + 1));
    triplets.push_back(t);
  }
  try {
    return Hypergraph3::from_triplets(std::move(triplets));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string write_hypergraph(const Hypergraph3& h) {
  std::ostringstream out;
  for (const auto& t : h.triplets) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace cflow
