#include "kssp/dijkstra.hpp"

#include <algorithm>

namespace kssp {

ShortestPathSearch::ShortestPathSearch(const Graph& g)
    : g_(&g),
      heap_(g.node_count()),
      dist_(g.node_count(), kInfinity),
      parent_(g.node_count(), kInvalidArc),
      stamp_(g.node_count(), 0) {}

std::optional<Path> ShortestPathSearch::run(NodeId source, NodeId target, const Mask* mask,
                                            std::span<const Cost> lower_bound) {
  const Graph& g = *g_;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  heap_.clear();
  settled_ = 0;
  if (mask && (mask->node_deleted(source) || mask->node_deleted(target))) return std::nullopt;

  auto bound = [&](NodeId v) { return lower_bound.empty() ? Cost{0} : lower_bound[v]; };
  if (bound(source) == kInfinity) return std::nullopt;

  stamp_[source] = epoch_;
  dist_[source] = 0;
  parent_[source] = kInvalidArc;
  heap_.push(source, {bound(source), source});
  bool reached = false;
  while (!heap_.empty()) {
    const NodeId u = heap_.pop();
    ++settled_;
    if (u == target) {
      reached = true;
      break;
    }
    for (ArcId a : g.out_arcs(u)) {
      if (mask && (mask->arc_deleted(a) || mask->node_deleted(g.head(a)))) continue;
      const NodeId v = g.head(a);
      const Cost h = bound(v);
      if (h == kInfinity) continue;
      const Cost d = dist_[u] + g.cost(a);
      if (fresh(v)) {
        stamp_[v] = epoch_;
        dist_[v] = d;
        parent_[v] = a;
        heap_.push(v, {d + h, v});
      } else if (d < dist_[v] && heap_.contains(v)) {
        dist_[v] = d;
        parent_[v] = a;
        heap_.decrease(v, {d + h, v});
      }
    }
  }
  if (!reached) return std::nullopt;

  std::vector<ArcId> arcs;
  for (NodeId v = target; v != source; v = g.tail(parent_[v])) arcs.push_back(parent_[v]);
  std::reverse(arcs.begin(), arcs.end());
  return Path(g, std::move(arcs));
}

std::vector<Cost> distances_to(const Graph& g, NodeId target) {
  std::vector<Cost> dist(g.node_count(), kInfinity);
  struct Key {
    Cost d;
    NodeId node;
    bool operator<(const Key& o) const { return d < o.d || (d == o.d && node < o.node); }
  };
  IndexedHeap<Key> heap(g.node_count());
  std::vector<bool> done(g.node_count(), false);
  dist[target] = 0;
  heap.push(target, {0, target});
  while (!heap.empty()) {
    const NodeId v = heap.pop();
    done[v] = true;
    for (ArcId a : g.in_arcs(v)) {
      const NodeId u = g.tail(a);
      if (done[u]) continue;
      const Cost d = g.cost(a) + dist[v];
      if (d < dist[u]) {
        const bool queued = heap.contains(u);
        dist[u] = d;
        if (queued) {
          heap.decrease(u, {d, u});
        } else {
          heap.push(u, {d, u});
        }
      }
    }
  }
  return dist;
}

std::optional<Path> shortest_path(const Graph& g, NodeId source, NodeId target) {
  ShortestPathSearch search(g);
  return search.run(source, target);
}

}  // namespace kssp
