#include "kssp/oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include "kssp/dijkstra.hpp"

namespace kssp {

SolveReport yen(const Graph& g, NodeId s, NodeId t, std::size_t k, const SolveOptions& options) {
  if (s >= g.node_count() || t >= g.node_count()) throw std::invalid_argument("node out of range");
  if (s == t) throw std::invalid_argument("source and target must differ");
  if (k == 0) throw std::invalid_argument("k must be at least 1");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  std::optional<clock::time_point> deadline;
  if (options.timeout) {
    deadline = start + std::chrono::duration_cast<clock::duration>(*options.timeout);
  }

  SolveReport report;
  auto& solved = report.paths;
  auto& stats = report.stats;
  std::vector<std::vector<std::size_t>> children;  // solved children per solved path
  CandidateQueue queue;
  Mask mask(g);
  ShortestPathSearch search(g);
  const std::vector<Cost> to_target = distances_to(g, t);

  auto first = search.run(s, t, nullptr, to_target);
  if (!first) {
    report.status = SolveStatus::exhausted_early;
    stats.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    return report;
  }
  DeviationRecord root;
  root.path = std::move(*first);
  root.dev_node = s;
  root.source_node = s;
  solved.push_back(std::move(root));
  children.emplace_back();

  // Spur searches from every node of the latest solution at or after its
  // deviation node.
  auto spur_from = [&](std::size_t index) {
    const DeviationRecord& current = solved[index];
    const auto nodes = current.path.nodes(g);
    const auto arcs = current.path.arcs();
    for (std::size_t j = current.dev_position; j < arcs.size(); ++j) {
      mask.clear();
      for (std::size_t r = 0; r < j; ++r) mask.delete_node(nodes[r]);

      // Paths sharing the root arcs[0, j): at the deviation node that is the
      // parent and its children deviating there; further along only the
      // current path itself.
      std::size_t owner = index;
      if (current.parent && j == current.dev_position) owner = *current.parent;
      mask.delete_arc(solved[owner].path.arcs()[j]);
      for (std::size_t c : children[owner]) {
        if (solved[c].dev_position == j) mask.delete_arc(solved[c].path.arcs()[j]);
      }

      auto spur = search.run(nodes[j], t, &mask, to_target);
      ++stats.queries;
      if (!spur) {
        ++stats.failed_queries;
        stats.iterations_fail += search.settled();
        continue;
      }
      stats.iterations_success += search.settled();
      std::vector<ArcId> full(arcs.begin(), arcs.begin() + static_cast<std::ptrdiff_t>(j));
      full.insert(full.end(), spur->arcs().begin(), spur->arcs().end());
      DeviationRecord cand;
      cand.path = Path(g, std::move(full));
      cand.parent = owner;
      cand.dev_node = nodes[j];
      cand.dev_position = j;
      cand.dev_arc = spur->arcs().front();
      cand.source_node = g.head(cand.dev_arc);
      queue.push(std::move(cand));
    }
  };

  report.status = SolveStatus::complete;
  while (solved.size() < k) {
    if (deadline && clock::now() >= *deadline) {
      report.status = SolveStatus::aborted;
      break;
    }
    spur_from(solved.size() - 1);
    if (queue.empty()) {
      report.status = SolveStatus::exhausted_early;
      break;
    }
    DeviationRecord next = queue.pop();
    children[*next.parent].push_back(solved.size());
    solved.push_back(std::move(next));
    children.emplace_back();
  }
  stats.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

std::vector<Path> enumerate_paths(const Graph& g, NodeId s, NodeId t, std::size_t max_paths) {
  std::vector<Path> out;
  if (s == t) return out;
  std::vector<bool> on_path(g.node_count(), false);
  std::vector<ArcId> stack;

  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == t) {
      if (out.size() == max_paths) {
        throw std::length_error("more than " + std::to_string(max_paths) + " simple paths");
      }
      out.emplace_back(g, stack);
      return;
    }
    on_path[v] = true;
    for (ArcId a : g.out_arcs(v)) {
      const NodeId w = g.head(a);
      if (on_path[w]) continue;
      stack.push_back(a);
      self(self, w);
      stack.pop_back();
    }
    on_path[v] = false;
  };
  dfs(dfs, s);

  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.cost() != b.cost()) return a.cost() < b.cost();
    return std::lexicographical_compare(a.arcs().begin(), a.arcs().end(), b.arcs().begin(),
                                        b.arcs().end());
  });
  return out;
}

}  // namespace kssp
