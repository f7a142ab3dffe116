#include "kssp/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "kssp/dijkstra.hpp"

namespace kssp {

void CandidateQueue::push(DeviationRecord record) {
  std::size_t slot;
  if (free_slots_.empty()) {
    slot = slots_.size();
    slots_.push_back(std::move(record));
  } else {
    slot = free_slots_.back();
    free_slots_.pop_back();
    slots_[slot] = std::move(record);
  }
  const Cost c = slots_[slot].path.cost();
  order_.insert({c, counter_++, slot});
  ++tiers_[c];
}

DeviationRecord CandidateQueue::pop() {
  const Key key = *order_.begin();
  order_.erase(order_.begin());
  auto tier = tiers_.find(key.cost);
  if (--tier->second == 0) tiers_.erase(tier);
  free_slots_.push_back(key.slot);
  return std::move(slots_[key.slot]);
}

std::optional<Cost> prune_rule_queue_max(std::size_t solved, const CandidateQueue& queue,
                                         std::size_t k) {
  if (queue.empty() || solved + queue.size() < k) return std::nullopt;
  return queue.max_cost();
}

bool prune_rule_queue_min(std::size_t solved, const CandidateQueue& queue, std::size_t k) {
  return !queue.empty() && solved + queue.min_tier_size() >= k;
}

DeviationRecord assign_parent_and_deviation(const Graph& g, const SuffixResult& found,
                                            const DeviationRecord& origin,
                                            std::size_t origin_index) {
  if (std::find(origin.blocked.begin(), origin.blocked.end(), found.deviation.arc) !=
      origin.blocked.end()) {
    throw std::logic_error("deviation arc already blocked at its parent");
  }
  const std::size_t source_pos = origin.source_position();
  std::vector<ArcId> arcs(origin.path.arcs().begin(),
                          origin.path.arcs().begin() + static_cast<std::ptrdiff_t>(source_pos));
  arcs.insert(arcs.end(), found.path.arcs().begin(), found.path.arcs().end());

  DeviationRecord out;
  out.path = Path(g, std::move(arcs));
  out.parent = origin_index;
  out.dev_node = found.deviation.node;
  out.dev_position = source_pos + found.deviation.index;
  out.dev_arc = found.deviation.arc;
  out.source_node = g.head(found.deviation.arc);
  return out;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::complete: return "complete";
    case SolveStatus::exhausted_early: return "exhausted-early";
    case SolveStatus::aborted: return "aborted";
  }
  return "?";
}

std::optional<double> SolveStats::mean_iterations_success() const {
  if (successful_queries() == 0) return std::nullopt;
  return static_cast<double>(iterations_success) / static_cast<double>(successful_queries());
}

std::optional<double> SolveStats::mean_iterations_fail() const {
  if (failed_queries == 0) return std::nullopt;
  return static_cast<double>(iterations_fail) / static_cast<double>(failed_queries);
}

std::vector<Cost> SolveReport::costs() const {
  std::vector<Cost> out;
  out.reserve(paths.size());
  for (const auto& r : paths) out.push_back(r.path.cost());
  return out;
}

KsspSolver::KsspSolver(const Graph& g) : g_(&g), bda_(g), mask_(g) {}

SolveReport KsspSolver::solve(NodeId s, NodeId t, std::size_t k, const SolveOptions& options) {
  const Graph& g = *g_;
  if (s >= g.node_count() || t >= g.node_count()) throw std::invalid_argument("node out of range");
  if (s == t) throw std::invalid_argument("source and target must differ");
  if (k == 0) throw std::invalid_argument("k must be at least 1");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  PruneContext limits;
  limits.label_budget = options.label_budget;
  if (options.timeout) {
    limits.deadline = start + std::chrono::duration_cast<clock::duration>(*options.timeout);
  }

  SolveReport report;
  auto& solved = report.paths;
  auto& stats = report.stats;
  CandidateQueue queue;
  bool aborted = false;
  std::vector<Cost> to_target;
  if (options.potentials) to_target = distances_to(g, t);

  // Runs one query deviating from solution `index` and queues its result.
  auto query = [&](std::size_t index) {
    const DeviationRecord& origin = solved[index];
    const std::size_t source_pos = origin.source_position();
    const auto nodes = origin.path.nodes(g);
    const auto arcs = origin.path.arcs();

    mask_.clear();
    for (std::size_t j = 0; j < source_pos; ++j) mask_.delete_node(nodes[j]);
    for (ArcId a : origin.blocked) mask_.delete_arc(a);

    BospInstance inst;
    inst.graph = &g;
    inst.mask = &mask_;
    inst.source = nodes[source_pos];
    inst.target = t;
    inst.reference = arcs.subspan(source_pos);
    inst.prefix_cost = path_cost(g, arcs.first(source_pos));
    inst.potential = to_target;

    PruneContext prune = limits;
    if (options.prune_queue_max) prune.abort_at = prune_rule_queue_max(solved.size(), queue, k);

    const QueryResult r = bda_.run(inst, prune);
    ++stats.queries;
    stats.max_t_extractions = std::max(stats.max_t_extractions, r.t_extractions);
    stats.max_frontier = std::max(stats.max_frontier, r.max_frontier);
    switch (r.status) {
      case QueryStatus::found: {
        stats.iterations_success += r.iterations;
        DeviationRecord child = assign_parent_and_deviation(g, *r.result, origin, index);
        solved[index].blocked.push_back(child.dev_arc);
        queue.push(std::move(child));
        break;
      }
      case QueryStatus::pruned:
        ++stats.pruned_queries;
        [[fallthrough]];
      case QueryStatus::exhausted:
        ++stats.failed_queries;
        stats.iterations_fail += r.iterations;
        break;
      case QueryStatus::label_budget:
      case QueryStatus::timeout:
        ++stats.failed_queries;
        stats.iterations_fail += r.iterations;
        aborted = true;
        break;
    }
  };
  auto out_of_time = [&] { return limits.deadline && clock::now() >= *limits.deadline; };

  ShortestPathSearch dijkstra(g);
  auto first = dijkstra.run(s, t, nullptr, to_target);
  if (!first) {
    report.status = SolveStatus::exhausted_early;
  } else {
    DeviationRecord root;
    root.path = std::move(*first);
    root.dev_node = s;
    root.source_node = s;
    solved.push_back(std::move(root));
    report.status = SolveStatus::complete;

    if (k > 1) {
      query(0);
      stats.init_queries = 1;
    }
    while (solved.size() < k && !aborted) {
      if (out_of_time()) {
        aborted = true;
        break;
      }
      if (queue.empty()) {
        report.status = SolveStatus::exhausted_early;
        break;
      }
      if (options.prune_queue_min && prune_rule_queue_min(solved.size(), queue, k)) {
        stats.min_rule_triggered = true;
        while (solved.size() < k) solved.push_back(queue.pop());
        break;
      }
      solved.push_back(queue.pop());
      const std::size_t index = solved.size() - 1;
      if (solved.size() == k) break;
      query(index);
      if (aborted) break;
      query(*solved[index].parent);
    }
    if (aborted) report.status = SolveStatus::aborted;
  }
  stats.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

SolveReport solve_kssp(const Graph& g, NodeId s, NodeId t, std::size_t k,
                       const SolveOptions& options) {
  KsspSolver solver(g);
  return solver.solve(s, t, k, options);
}

}  // namespace kssp
