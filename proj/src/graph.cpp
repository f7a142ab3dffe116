#include "kssp/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "kssp/random.hpp"

namespace kssp {

Graph::Graph(std::size_t node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  if (arcs_.size() >= kInvalidArc || node_count >= kInvalidNode) {
    throw std::length_error("graph too large for 32-bit ids");
  }
  std::vector<std::size_t> out_deg(node_count + 1, 0);
  std::vector<std::size_t> in_deg(node_count + 1, 0);
  for (const Arc& a : arcs_) {
    if (a.tail >= node_count || a.head >= node_count) {
      throw std::out_of_range("arc endpoint out of range");
    }
    if (!(a.cost >= 0) || !std::isfinite(a.cost)) {
      throw std::invalid_argument("arc cost must be finite and nonnegative");
    }
    ++out_deg[a.tail + 1];
    ++in_deg[a.head + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    out_deg[v + 1] += out_deg[v];
    in_deg[v + 1] += in_deg[v];
  }
  out_begin_ = out_deg;
  in_begin_ = in_deg;
  out_arcs_.resize(arcs_.size());
  in_arcs_.resize(arcs_.size());
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    out_arcs_[out_deg[arcs_[a].tail]++] = a;
    in_arcs_[in_deg[arcs_[a].head]++] = a;
  }
}

Path::Path(const Graph& g, std::vector<ArcId> arcs) : arcs_(std::move(arcs)) {
  cost_ = path_cost(g, arcs_);
}

std::vector<NodeId> Path::nodes(const Graph& g) const {
  std::vector<NodeId> out;
  if (arcs_.empty()) return out;
  out.reserve(arcs_.size() + 1);
  out.push_back(g.tail(arcs_.front()));
  for (ArcId a : arcs_) out.push_back(g.head(a));
  return out;
}

Cost path_cost(const Graph& g, std::span<const ArcId> arcs) {
  Cost sum = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i] >= g.arc_count()) throw PathError("arc id out of range");
    if (i > 0 && g.head(arcs[i - 1]) != g.tail(arcs[i])) {
      throw PathError("non-incident consecutive arcs at position " + std::to_string(i));
    }
    sum += g.cost(arcs[i]);
  }
  return sum;
}

bool is_simple(const Graph& g, const Path& p) {
  auto nodes = p.nodes(g);
  std::sort(nodes.begin(), nodes.end());
  return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

Path concat(const Graph& g, const Path& prefix, const Path& suffix) {
  std::vector<ArcId> arcs(prefix.arcs().begin(), prefix.arcs().end());
  arcs.insert(arcs.end(), suffix.arcs().begin(), suffix.arcs().end());
  return Path(g, std::move(arcs));
}

// -- DIMACS ---------------------------------------------------------------------

namespace {

std::string kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::missing_problem_line: return "missing problem line";
    case ParseErrorKind::malformed_header: return "malformed problem line";
    case ParseErrorKind::duplicate_header: return "duplicate problem line";
    case ParseErrorKind::malformed_arc: return "malformed arc line";
    case ParseErrorKind::arc_count_mismatch: return "arc count mismatch";
    case ParseErrorKind::node_out_of_range: return "node id out of range";
    case ParseErrorKind::negative_weight: return "negative weight";
  }
  return "parse error";
}

template <typename Int>
bool parse_int(std::string_view token, Int& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

// Integer weights are the DIMACS norm; decimal weights written by
// write_dimacs for generated grids are accepted as well.
bool parse_weight(std::string_view token, double& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out,
                                   std::chars_format::general);
  return ec == std::errc{} && ptr == token.data() + token.size() && std::isfinite(out);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + kind_name(kind) +
                         (what.empty() ? "" : " (" + what + ")")),
      kind_(kind),
      line_(line) {}

Graph load_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(ParseErrorKind::duplicate_header, line_no, "");
      if (tok.size() != 4 || tok[1] != "sp" || !parse_int(tok[2], n) || !parse_int(tok[3], m)) {
        throw ParseError(ParseErrorKind::malformed_header, line_no, line);
      }
      if (n >= kInvalidNode || m >= kInvalidArc) {
        throw ParseError(ParseErrorKind::malformed_header, line_no, "sizes exceed 32-bit ids");
      }
      have_header = true;
      arcs.reserve(m);
    } else if (tok[0] == "a") {
      if (!have_header) throw ParseError(ParseErrorKind::missing_problem_line, line_no, "");
      std::int64_t u = 0, v = 0;
      double w = 0;
      if (tok.size() != 4 || !parse_int(tok[1], u) || !parse_int(tok[2], v) ||
          !parse_weight(tok[3], w)) {
        throw ParseError(ParseErrorKind::malformed_arc, line_no, line);
      }
      if (u < 1 || v < 1 || static_cast<std::uint64_t>(u) > n ||
          static_cast<std::uint64_t>(v) > n) {
        throw ParseError(ParseErrorKind::node_out_of_range, line_no, line);
      }
      if (std::signbit(w) && w != 0) throw ParseError(ParseErrorKind::negative_weight, line_no, line);
      if (arcs.size() == m) {
        throw ParseError(ParseErrorKind::arc_count_mismatch, line_no,
                         "more than " + std::to_string(m) + " arcs");
      }
      arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), w == 0 ? 0.0 : w});
    } else {
      throw ParseError(ParseErrorKind::malformed_arc, line_no, "unknown line type");
    }
  }
  if (!have_header) throw ParseError(ParseErrorKind::missing_problem_line, line_no, "");
  if (arcs.size() != m) {
    throw ParseError(ParseErrorKind::arc_count_mismatch, line_no,
                     "expected " + std::to_string(m) + ", found " + std::to_string(arcs.size()));
  }
  return Graph(n, std::move(arcs));
}

Graph load_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_dimacs(in);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment) {
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p sp " << g.node_count() << ' ' << g.arc_count() << '\n';
  std::array<char, 32> buf{};
  for (const Arc& a : g.arcs()) {
    // Shortest round-trip form: integral costs print as plain integers.
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), a.cost);
    out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' '
        << std::string_view(buf.data(), ptr - buf.data()) << '\n';
  }
}

// -- Grids ------------------------------------------------------------------------

Graph gen_grid(std::size_t rows, std::size_t cols, Cost cost_low, Cost cost_high,
               std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(cost_low >= 0) || !(cost_low <= cost_high) || !std::isfinite(cost_high)) {
    throw std::invalid_argument("grid cost range must satisfy 0 <= low <= high");
  }
  Xoshiro256 rng(seed);
  std::vector<Arc> arcs;
  arcs.reserve(2 * (rows * (cols - 1) + cols * (rows - 1)));
  auto add_edge = [&](NodeId u, NodeId v) {
    arcs.push_back({u, v, rng.uniform(cost_low, cost_high)});
    arcs.push_back({v, u, rng.uniform(cost_low, cost_high)});
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto u = static_cast<NodeId>(r * cols + c);
      if (c + 1 < cols) add_edge(u, u + 1);
      if (r + 1 < rows) add_edge(u, static_cast<NodeId>(u + cols));
    }
  }
  return Graph(rows * cols, std::move(arcs));
}

// -- Path dump --------------------------------------------------------------------

void write_path_line(std::ostream& out, const Graph& g, const Path& p) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), p.cost());
  out << "cost " << std::string_view(buf.data(), ptr - buf.data()) << " nodes";
  for (NodeId v : p.nodes(g)) out << ' ' << v + 1;
  out << '\n';
}

DumpedPath parse_path_line(const std::string& line) {
  auto tok = split_ws(line);
  DumpedPath out;
  if (tok.size() < 3 || tok[0] != "cost" || tok[2] != "nodes") {
    throw std::invalid_argument("malformed path line: " + line);
  }
  auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), out.cost);
  if (ec != std::errc{}) throw std::invalid_argument("malformed path cost: " + line);
  for (std::size_t i = 3; i < tok.size(); ++i) {
    std::uint64_t v = 0;
    if (!parse_int(tok[i], v) || v == 0) throw std::invalid_argument("malformed node id: " + line);
    out.nodes.push_back(static_cast<NodeId>(v - 1));
  }
  return out;
}

}  // namespace kssp
