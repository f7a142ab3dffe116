// Second shortest simple path by one-to-one biobjective label setting.
//
// Given a shortest source -> target path (the reference), every arc gets the
// cost pair (c(a), [a on reference]). Labels are made permanent in lex order
// of that pair and the search stops at the first target label whose second
// component is below the reference's arc count. That label is a second
// shortest simple path. Paths that close a cycle are weakly dominated by
// their own prefix label, so simplicity needs no node bookkeeping.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kssp/graph.hpp"
#include "kssp/indexed_heap.hpp"

namespace kssp {

/// (scalar cost, number of reference arcs used).
struct BiCost {
  Cost g1 = 0;
  std::uint32_t g2 = 0;

  friend bool operator==(const BiCost&, const BiCost&) = default;
  /// Lexicographic order.
  friend bool operator<(const BiCost& a, const BiCost& b) {
    return a.g1 < b.g1 || (a.g1 == b.g1 && a.g2 < b.g2);
  }
  friend BiCost operator+(const BiCost& a, const BiCost& b) { return {a.g1 + b.g1, a.g2 + b.g2}; }
};

inline constexpr std::uint32_t kNoPredecessor = std::numeric_limits<std::uint32_t>::max();

struct Label {
  NodeId node = kInvalidNode;
  BiCost cost;
  ArcId pred_arc = kInvalidArc;               // arc into node, or none at the source
  std::uint32_t pred_index = kNoPredecessor;  // index into tail(pred_arc)'s permanent list
};

/// Permanent labels of one node in extraction order. Because extraction is
/// lex ordered and equal-or-worse second components are rejected, the list
/// is strictly increasing in g1 and strictly decreasing in g2 after the first
/// entry, so its last entry carries the minimum g2.
class NodeFrontier {
 public:
  bool empty() const { return labels_.empty(); }
  std::size_t size() const { return labels_.size(); }
  const Label& operator[](std::size_t i) const { return labels_[i]; }
  std::span<const Label> labels() const { return labels_; }
  std::uint32_t min_g2() const { return labels_.back().cost.g2; }

  void push(const Label& l) { labels_.push_back(l); }
  void clear() { labels_.clear(); }

 private:
  std::vector<Label> labels_;
};

/// Weak dominance in O(1). Valid while labels are extracted in lex order, so
/// that every permanent g1 at this node is <= cand.g1. Equal vectors count as
/// dominated.
inline bool dominated(const NodeFrontier& frontier, const BiCost& cand) {
  return !frontier.empty() && cand.g2 >= frontier.min_g2();
}

/// One second-shortest-path query. `reference` is the known shortest
/// source -> target path of the masked graph; its arc count is the bound the
/// target label's g2 must beat.
struct BospInstance {
  const Graph* graph = nullptr;
  const Mask* mask = nullptr;  // optional deletions
  NodeId source = kInvalidNode;
  NodeId target = kInvalidNode;
  std::span<const ArcId> reference;
  Cost prefix_cost = 0;  // cost of the retained prefix in front of source
  /// Optional lower bounds on the remaining cost to target, indexed by node
  /// (e.g. exact distances in the unmasked graph). Labels are then extracted
  /// in lex order of (g1 + bound, g2); nodes with an infinite bound are never
  /// entered. Empty = plain lex order.
  std::span<const Cost> potential;

  std::size_t ell() const { return reference.size(); }
};

/// gamma by linear scan of the reference; the solver uses an O(1) flag array.
BiCost gamma(const BospInstance& inst, ArcId arc);

/// Extraction key of a label: its cost plus the node's potential, if any.
inline BiCost search_key(const BospInstance& inst, const Label& l) {
  if (inst.potential.empty()) return l.cost;
  return {l.cost.g1 + inst.potential[l.node], l.cost.g2};
}

/// Early-abort conditions for a query.
struct PruneContext {
  /// Abort once prefix_cost + extracted g1 >= abort_at.
  std::optional<Cost> abort_at;
  /// Abort once more permanent labels than this exist in the query.
  std::size_t label_budget = 0;  // 0 = unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// First place a found path leaves the reference. Both paths start at the
/// same node; `index` counts the shared arcs.
struct Deviation {
  NodeId node = kInvalidNode;
  std::size_t index = 0;
  ArcId arc = kInvalidArc;
};

/// Throws std::invalid_argument when the two arc sequences are identical.
Deviation first_deviation(const Graph& g, NodeId source, std::span<const ArcId> reference,
                          std::span<const ArcId> found);

struct SuffixResult {
  Deviation deviation;
  Path suffix;  // deviation.node -> target
  Path path;    // source -> target, the full second path of the instance
  BiCost cost;  // of `path`
};

enum class QueryStatus { found, exhausted, pruned, label_budget, timeout };

struct QueryResult {
  QueryStatus status = QueryStatus::exhausted;
  std::optional<SuffixResult> result;
  std::size_t iterations = 0;     // labels extracted
  std::size_t t_extractions = 0;  // target labels extracted
  std::size_t max_frontier = 0;   // largest permanent list at any node
  std::size_t permanent = 0;      // total permanent labels

  bool found() const { return status == QueryStatus::found; }
};

/// Hooks for tests and tracing. Default implementations do nothing.
class BdaObserver {
 public:
  enum class Propagation { dominated, inserted, replaced, not_better };

  virtual ~BdaObserver() = default;
  virtual void on_extract(const Label& /*label*/, std::size_t /*queued_after_pop*/) {}
  virtual void on_propagate(NodeId /*to*/, const BiCost& /*cand*/, Propagation /*what*/) {}
  virtual void on_candidate_rebuilt(const Label& /*label*/) {}
};

/// Reusable query workspace for one graph. Queries are single threaded; use
/// one workspace per thread.
class Bda2ssp {
 public:
  explicit Bda2ssp(const Graph& g);

  QueryResult run(const BospInstance& inst, const PruneContext& prune = {},
                  BdaObserver* observer = nullptr);

  /// Permanent labels of v from the last run (empty if v was not reached).
  std::span<const Label> permanent(NodeId v) const;

  /// Nodes currently holding a queued candidate after the last run.
  std::vector<NodeId> queued_nodes() const;

  /// Walks predecessor links of a permanent label from the last run back to
  /// the query source. Throws std::logic_error on a broken chain.
  Path reconstruct(const Label& label) const;

 private:
  // Ordered by (g1 + potential, g1, g2); raw g1 breaks ties so that rounding
  // in the sum never reorders two labels of the same node.
  struct QueueKey {
    Cost key;
    Cost g1;
    std::uint32_t g2;
    NodeId node;
    std::uint64_t counter;
    bool operator<(const QueueKey& o) const {
      if (key != o.key) return key < o.key;
      if (g1 != o.g1) return g1 < o.g1;
      if (g2 != o.g2) return g2 < o.g2;
      if (node != o.node) return node < o.node;
      return counter < o.counter;
    }
  };

  void begin_epoch();
  bool touched(NodeId v) const { return node_stamp_[v] == epoch_; }
  void touch(NodeId v);
  std::uint32_t& cursor(ArcId a);
  BiCost arc_cost(ArcId a) const {
    return {g_->cost(a), ref_stamp_[a] == epoch_ ? 1u : 0u};
  }
  bool arc_usable(const Mask* mask, ArcId a) const;
  void enqueue(const Label& l);
  QueueKey key_of(const Label& l);
  void rebuild_candidate(NodeId v, NodeId target, const Mask* mask, BdaObserver* observer);

  const Graph* g_;
  std::vector<NodeFrontier> frontier_;
  std::vector<Label> candidate_;
  std::vector<std::uint32_t> node_stamp_;
  std::vector<std::uint32_t> arc_stamp_;
  std::vector<std::uint32_t> arc_cursor_;
  std::vector<std::uint32_t> ref_stamp_;
  IndexedHeap<QueueKey> heap_;
  std::span<const Cost> potential_;
  std::uint32_t epoch_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace kssp
