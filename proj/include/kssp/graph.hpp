// Directed graph with nonnegative arc costs, path primitives and masking.
#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kssp {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

/// Arc and path costs. Compared exactly; sums are always taken left to right.
using Cost = double;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();
inline constexpr ArcId kInvalidArc = std::numeric_limits<ArcId>::max();
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::infinity();

struct Arc {
  NodeId tail;
  NodeId head;
  Cost cost;
};

/// Immutable directed graph in CSR form. Arc ids follow insertion order;
/// both adjacency indices store arc ids so solvers can mask arcs by id.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t node_count, std::vector<Arc> arcs);

  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return arcs_.size(); }

  const Arc& arc(ArcId a) const { return arcs_[a]; }
  NodeId tail(ArcId a) const { return arcs_[a].tail; }
  NodeId head(ArcId a) const { return arcs_[a].head; }
  Cost cost(ArcId a) const { return arcs_[a].cost; }
  std::span<const Arc> arcs() const { return arcs_; }

  /// Outgoing arc ids of v, in arc id order.
  std::span<const ArcId> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_begin_[v], out_arcs_.data() + out_begin_[v + 1]};
  }
  /// Incoming arc ids of v, in arc id order.
  std::span<const ArcId> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_begin_[v], in_arcs_.data() + in_begin_[v + 1]};
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_begin_{0};
  std::vector<ArcId> out_arcs_;
  std::vector<std::size_t> in_begin_{0};
  std::vector<ArcId> in_arcs_;
};

/// Thrown when a path's consecutive arcs are not incident.
class PathError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A walk stored as arc ids together with its cached cost.
class Path {
 public:
  Path() = default;
  /// Validates incidence and computes the cost left to right.
  Path(const Graph& g, std::vector<ArcId> arcs);

  std::span<const ArcId> arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  Cost cost() const { return cost_; }

  /// Node sequence tail(first), head(a_0), ..., head(a_last). Empty for the
  /// empty path.
  std::vector<NodeId> nodes(const Graph& g) const;

  friend bool operator==(const Path& a, const Path& b) { return a.arcs_ == b.arcs_; }

 private:
  std::vector<ArcId> arcs_;
  Cost cost_ = 0;
};

Cost path_cost(const Graph& g, std::span<const ArcId> arcs);
inline Cost path_cost(const Graph& g, const Path& p) { return path_cost(g, p.arcs()); }

/// True iff no node repeats along the path.
bool is_simple(const Graph& g, const Path& p);

/// Concatenation of two incident paths; the cost is recomputed left to right.
Path concat(const Graph& g, const Path& prefix, const Path& suffix);

/// Epoch-stamped deletion marks over nodes and arcs. Bumping the epoch
/// clears every mark in O(1).
class Mask {
 public:
  Mask() = default;
  explicit Mask(const Graph& g) { reset(g.node_count(), g.arc_count()); }

  void reset(std::size_t nodes, std::size_t arcs) {
    node_stamp_.assign(nodes, 0);
    arc_stamp_.assign(arcs, 0);
    epoch_ = 1;
  }
  void clear() {
    if (++epoch_ == 0) {
      std::fill(node_stamp_.begin(), node_stamp_.end(), 0);
      std::fill(arc_stamp_.begin(), arc_stamp_.end(), 0);
      epoch_ = 1;
    }
  }

  void delete_node(NodeId v) { node_stamp_[v] = epoch_; }
  void delete_arc(ArcId a) { arc_stamp_[a] = epoch_; }
  bool node_deleted(NodeId v) const { return node_stamp_[v] == epoch_; }
  bool arc_deleted(ArcId a) const { return arc_stamp_[a] == epoch_; }

  /// An arc is usable iff neither it nor its endpoints are deleted.
  bool usable(const Graph& g, ArcId a) const {
    return !arc_deleted(a) && !node_deleted(g.tail(a)) && !node_deleted(g.head(a));
  }

 private:
  std::vector<std::uint32_t> node_stamp_;
  std::vector<std::uint32_t> arc_stamp_;
  std::uint32_t epoch_ = 1;
};

// -- DIMACS .gr ingestion ----------------------------------------------------

enum class ParseErrorKind {
  missing_problem_line,
  malformed_header,
  duplicate_header,
  malformed_arc,
  arc_count_mismatch,
  node_out_of_range,
  negative_weight,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

Graph load_dimacs(std::istream& in);
Graph load_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {});

// -- Grid instances ----------------------------------------------------------

/// rows x cols 4-neighbour grid. Nodes are numbered row * cols + col. Arcs are
/// emitted node by node in id order; for each node, its right edge then its
/// down edge, each as the forward arc followed by the antiparallel arc. Every
/// arc draws its own cost uniformly from [cost_low, cost_high].
Graph gen_grid(std::size_t rows, std::size_t cols, Cost cost_low, Cost cost_high,
               std::uint64_t seed);

// -- Path dump format ----------------------------------------------------------

/// Writes `cost <c> nodes <v0> ... <vk>` with 1-based node ids and the cost
/// printed with round-trip precision.
void write_path_line(std::ostream& out, const Graph& g, const Path& p);

struct DumpedPath {
  Cost cost = 0;
  std::vector<NodeId> nodes;  // 0-based
};
DumpedPath parse_path_line(const std::string& line);

}  // namespace kssp
