#include "kssp/bda.hpp"

#include <algorithm>
#include <stdexcept>

namespace kssp {

BiCost gamma(const BospInstance& inst, ArcId arc) {
  const bool on_ref =
      std::find(inst.reference.begin(), inst.reference.end(), arc) != inst.reference.end();
  return {inst.graph->cost(arc), on_ref ? 1u : 0u};
}

Deviation first_deviation(const Graph& g, NodeId source, std::span<const ArcId> reference,
                          std::span<const ArcId> found) {
  std::size_t i = 0;
  while (i < reference.size() && i < found.size() && reference[i] == found[i]) ++i;
  if (i == found.size()) {
    throw std::invalid_argument(i == reference.size()
                                    ? "first_deviation: paths are identical"
                                    : "first_deviation: found path is a prefix of the reference");
  }
  return {i == 0 ? source : g.head(found[i - 1]), i, found[i]};
}

Bda2ssp::Bda2ssp(const Graph& g)
    : g_(&g),
      frontier_(g.node_count()),
      candidate_(g.node_count()),
      node_stamp_(g.node_count(), 0),
      arc_stamp_(g.arc_count(), 0),
      arc_cursor_(g.arc_count(), 0),
      ref_stamp_(g.arc_count(), 0),
      heap_(g.node_count()) {}

void Bda2ssp::begin_epoch() {
  heap_.clear();
  if (++epoch_ == 0) {
    std::fill(node_stamp_.begin(), node_stamp_.end(), 0);
    std::fill(arc_stamp_.begin(), arc_stamp_.end(), 0);
    std::fill(ref_stamp_.begin(), ref_stamp_.end(), 0);
    epoch_ = 1;
  }
  counter_ = 0;
}

void Bda2ssp::touch(NodeId v) {
  if (node_stamp_[v] != epoch_) {
    node_stamp_[v] = epoch_;
    frontier_[v].clear();
  }
}

std::uint32_t& Bda2ssp::cursor(ArcId a) {
  if (arc_stamp_[a] != epoch_) {
    arc_stamp_[a] = epoch_;
    arc_cursor_[a] = 0;
  }
  return arc_cursor_[a];
}

bool Bda2ssp::arc_usable(const Mask* mask, ArcId a) const {
  return mask == nullptr || mask->usable(*g_, a);
}

Bda2ssp::QueueKey Bda2ssp::key_of(const Label& l) {
  const Cost key = potential_.empty() ? l.cost.g1 : l.cost.g1 + potential_[l.node];
  return {key, l.cost.g1, l.cost.g2, l.node, counter_++};
}

void Bda2ssp::enqueue(const Label& l) {
  candidate_[l.node] = l;
  heap_.push(l.node, key_of(l));
}

std::span<const Label> Bda2ssp::permanent(NodeId v) const {
  if (!touched(v)) return {};
  return frontier_[v].labels();
}

std::vector<NodeId> Bda2ssp::queued_nodes() const { return heap_.ids(); }

Path Bda2ssp::reconstruct(const Label& label) const {
  std::vector<ArcId> arcs;
  Label cur = label;
  while (cur.pred_arc != kInvalidArc) {
    const NodeId u = g_->tail(cur.pred_arc);
    if (g_->head(cur.pred_arc) != cur.node || !touched(u) ||
        cur.pred_index >= frontier_[u].size() || arcs.size() > g_->node_count()) {
      throw std::logic_error("broken predecessor chain");
    }
    arcs.push_back(cur.pred_arc);
    cur = frontier_[u][cur.pred_index];
  }
  std::reverse(arcs.begin(), arcs.end());
  return Path(*g_, std::move(arcs));
}

// Lex-min nondominated extension of v over its incoming arcs. Each arc keeps
// a cursor into its tail's permanent list; labels whose extension is
// dominated now stay dominated (the frontier at v only improves), so cursors
// never move back.
void Bda2ssp::rebuild_candidate(NodeId v, NodeId target, const Mask* mask,
                                BdaObserver* observer) {
  const NodeFrontier& here = frontier_[v];
  std::optional<Label> best;
  for (ArcId a : g_->in_arcs(v)) {
    const NodeId u = g_->tail(a);
    if (u == target || !touched(u) || !arc_usable(mask, a)) continue;
    const NodeFrontier& there = frontier_[u];
    std::uint32_t& pos = cursor(a);
    const BiCost step = arc_cost(a);
    while (pos < there.size() && dominated(here, there[pos].cost + step)) ++pos;
    if (pos == there.size()) continue;
    const BiCost c = there[pos].cost + step;
    if (!best || c < best->cost) best = Label{v, c, a, pos};
  }
  if (best) {
    enqueue(*best);
    if (observer) observer->on_candidate_rebuilt(*best);
  }
}

QueryResult Bda2ssp::run(const BospInstance& inst, const PruneContext& prune,
                         BdaObserver* observer) {
  const Graph& g = *g_;
  if (inst.graph != g_) throw std::invalid_argument("instance graph differs from workspace graph");
  if (inst.source >= g.node_count() || inst.target >= g.node_count()) {
    throw std::invalid_argument("instance endpoints out of range");
  }
  const Mask* mask = inst.mask;
  if (!inst.potential.empty() && inst.potential.size() != g.node_count()) {
    throw std::invalid_argument("potential must have one entry per node");
  }
  potential_ = inst.potential;
  begin_epoch();

  // The reference must be a usable source -> target path.
  NodeId at = inst.source;
  for (ArcId a : inst.reference) {
    if (a >= g.arc_count() || g.tail(a) != at || !arc_usable(mask, a)) {
      throw std::invalid_argument("reference is not a usable path from the instance source");
    }
    ref_stamp_[a] = epoch_;
    at = g.head(a);
  }
  if (at != inst.target) throw std::invalid_argument("reference does not end at the target");
  if (mask && mask->node_deleted(inst.source)) {
    throw std::invalid_argument("instance source is deleted");
  }

  QueryResult out;
  const auto ell = static_cast<std::uint32_t>(inst.ell());
  if (ell == 0) return out;  // source == target: no second path

  touch(inst.source);
  enqueue(Label{inst.source, {0, 0}, kInvalidArc, kNoPredecessor});

  while (!heap_.empty()) {
    const NodeId v = heap_.pop();
    const Label label = candidate_[v];
    ++out.iterations;

    if (prune.abort_at && inst.prefix_cost + label.cost.g1 >= *prune.abort_at) {
      out.status = QueryStatus::pruned;
      return out;
    }
    if (prune.label_budget != 0 && out.permanent >= prune.label_budget) {
      out.status = QueryStatus::label_budget;
      return out;
    }
    if (prune.deadline && (out.iterations & 0xff) == 0 &&
        std::chrono::steady_clock::now() >= *prune.deadline) {
      out.status = QueryStatus::timeout;
      return out;
    }

    NodeFrontier& here = frontier_[v];
    here.push(label);
    ++out.permanent;
    out.max_frontier = std::max(out.max_frontier, here.size());
    if (observer) observer->on_extract(label, heap_.size());

    if (v == inst.target) {
      ++out.t_extractions;
      if (label.cost.g2 < ell) {
        Path full = reconstruct(label);
        const Deviation dev = first_deviation(g, inst.source, inst.reference, full.arcs());
        std::vector<ArcId> tail(full.arcs().begin() + static_cast<std::ptrdiff_t>(dev.index),
                                full.arcs().end());
        out.status = QueryStatus::found;
        out.result = SuffixResult{dev, Path(g, std::move(tail)), std::move(full), label.cost};
        return out;
      }
      // The reference itself: recorded, never propagated.
    } else {
      const auto index = static_cast<std::uint32_t>(here.size() - 1);
      for (ArcId a : g.out_arcs(v)) {
        if (!arc_usable(mask, a)) continue;
        const NodeId w = g.head(a);
        if (!potential_.empty() && potential_[w] == kInfinity) continue;
        touch(w);
        const BiCost c = label.cost + arc_cost(a);
        if (dominated(frontier_[w], c)) {
          if (observer) observer->on_propagate(w, c, BdaObserver::Propagation::dominated);
          continue;
        }
        if (!heap_.contains(w)) {
          enqueue(Label{w, c, a, index});
          if (observer) observer->on_propagate(w, c, BdaObserver::Propagation::inserted);
        } else if (c < candidate_[w].cost) {
          candidate_[w] = Label{w, c, a, index};
          heap_.decrease(w, key_of(candidate_[w]));
          if (observer) observer->on_propagate(w, c, BdaObserver::Propagation::replaced);
        } else if (observer) {
          observer->on_propagate(w, c, BdaObserver::Propagation::not_better);
        }
      }
    }
    rebuild_candidate(v, inst.target, mask, observer);
  }
  return out;
}

}  // namespace kssp
