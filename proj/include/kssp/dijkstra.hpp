// Scalar one-to-one shortest paths on a masked graph.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kssp/graph.hpp"
#include "kssp/indexed_heap.hpp"

namespace kssp {

/// Reusable Dijkstra workspace bound to one graph. Per-node state is reset
/// lazily through an epoch counter, so a query touching few nodes costs
/// nothing for the rest of the graph.
class ShortestPathSearch {
 public:
  explicit ShortestPathSearch(const Graph& g);

  /// Shortest source -> target path avoiding everything `mask` deletes.
  ///
  /// When `lower_bound` is non-empty it must hold, for every node, a lower
  /// bound on the node's distance to target that is consistent on the
  /// unmasked graph (exact reverse distances are). The search then orders
  /// its queue by distance plus bound.
  std::optional<Path> run(NodeId source, NodeId target, const Mask* mask = nullptr,
                          std::span<const Cost> lower_bound = {});

  /// Nodes settled by the last run.
  std::size_t settled() const { return settled_; }

 private:
  struct Key {
    Cost priority;
    NodeId node;
    bool operator<(const Key& o) const {
      return priority < o.priority || (priority == o.priority && node < o.node);
    }
  };

  bool fresh(NodeId v) const { return stamp_[v] != epoch_; }

  const Graph* g_;
  IndexedHeap<Key> heap_;
  std::vector<Cost> dist_;
  std::vector<ArcId> parent_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::size_t settled_ = 0;
};

/// Exact distance from every node to target (infinity when unreachable),
/// computed on the reversed, unmasked graph.
std::vector<Cost> distances_to(const Graph& g, NodeId target);

/// Convenience wrapper: unmasked shortest path.
std::optional<Path> shortest_path(const Graph& g, NodeId source, NodeId target);

}  // namespace kssp
