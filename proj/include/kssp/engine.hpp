// k shortest simple paths: deviation-tree driver over second-shortest-path
// queries.
#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kssp/bda.hpp"
#include "kssp/graph.hpp"

namespace kssp {

/// A solution or candidate path with its position in the deviation tree.
/// The root path has no parent and no deviation arc; its deviation and
/// source node are both s.
struct DeviationRecord {
  Path path;
  std::optional<std::size_t> parent;  // index into the solution sequence
  NodeId dev_node = kInvalidNode;
  std::size_t dev_position = 0;  // index of dev_node along path
  NodeId source_node = kInvalidNode;
  ArcId dev_arc = kInvalidArc;
  std::vector<ArcId> blocked;  // deviation arcs of already generated children

  /// Position of source_node along the path (0 for the root).
  std::size_t source_position() const { return parent ? dev_position + 1 : 0; }
};

/// Min-priority queue of candidate paths ordered by (cost, insertion
/// counter), with O(log n) access to its maximum cost and to the size of its
/// minimum-cost tier.
class CandidateQueue {
 public:
  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }

  void push(DeviationRecord record);
  DeviationRecord pop();

  Cost min_cost() const { return order_.begin()->cost; }
  Cost max_cost() const { return order_.rbegin()->cost; }
  /// Number of queued paths whose cost equals min_cost().
  std::size_t min_tier_size() const { return tiers_.begin()->second; }

 private:
  struct Key {
    Cost cost;
    std::uint64_t counter;
    std::size_t slot;
    bool operator<(const Key& o) const {
      return cost < o.cost || (cost == o.cost && counter < o.counter);
    }
  };
  std::set<Key> order_;
  std::map<Cost, std::size_t> tiers_;
  std::vector<DeviationRecord> slots_;
  std::vector<std::size_t> free_slots_;
  std::uint64_t counter_ = 0;
};

/// Rule 1: once solutions plus candidates reach k, no query needs to look at
/// labels costing at least the most expensive candidate. Returns that bound,
/// or none while the rule is inactive.
std::optional<Cost> prune_rule_queue_max(std::size_t solved, const CandidateQueue& queue,
                                         std::size_t k);

/// Rule 2: if the cheapest tier of the queue alone completes the sequence,
/// the remaining paths can be taken from it without further queries.
bool prune_rule_queue_min(std::size_t solved, const CandidateQueue& queue, std::size_t k);

/// Builds the record of a path found by a query rooted at `origin` (the
/// solution at index origin_index). The new path is origin's prefix up to its
/// source node followed by the query's path; the parent is origin.
/// Throws std::logic_error if the deviation arc is already blocked at origin.
DeviationRecord assign_parent_and_deviation(const Graph& g, const SuffixResult& found,
                                            const DeviationRecord& origin,
                                            std::size_t origin_index);

struct SolveOptions {
  bool prune_queue_max = true;
  bool prune_queue_min = true;
  /// Order each query by cost plus exact distance to t (one reverse Dijkstra
  /// per solve). Only the search order changes, not the result costs.
  bool potentials = true;
  std::size_t label_budget = 0;  // per query, 0 = unlimited
  std::optional<std::chrono::duration<double>> timeout;
};

enum class SolveStatus { complete, exhausted_early, aborted };

const char* to_string(SolveStatus s);

struct SolveStats {
  std::size_t queries = 0;         // second-shortest-path queries run, initialization included
  std::size_t init_queries = 0;    // of which issued during initialization
  std::size_t failed_queries = 0;  // returned no path (exhausted or pruned)
  std::size_t pruned_queries = 0;  // of the failed ones, aborted by rule 1
  std::size_t iterations_success = 0;  // summed over successful queries
  std::size_t iterations_fail = 0;     // summed over failed queries
  std::size_t max_t_extractions = 0;
  std::size_t max_frontier = 0;
  bool min_rule_triggered = false;
  double wall_seconds = 0;

  std::size_t successful_queries() const { return queries - failed_queries; }
  std::optional<double> mean_iterations_success() const;
  std::optional<double> mean_iterations_fail() const;
};

struct SolveReport {
  std::vector<DeviationRecord> paths;
  SolveStatus status = SolveStatus::complete;
  SolveStats stats;

  std::vector<Cost> costs() const;
};

/// Reusable solver bound to one graph; holds the query workspace.
class KsspSolver {
 public:
  explicit KsspSolver(const Graph& g);

  /// Requires s != t and k >= 1. Returns at most k paths in nondecreasing
  /// cost order; fewer (with status exhausted_early) if the graph has fewer
  /// simple s-t paths.
  SolveReport solve(NodeId s, NodeId t, std::size_t k, const SolveOptions& options = {});

 private:
  const Graph* g_;
  Bda2ssp bda_;
  Mask mask_;
};

SolveReport solve_kssp(const Graph& g, NodeId s, NodeId t, std::size_t k,
                       const SolveOptions& options = {});

}  // namespace kssp
