// Independent baselines: Yen's algorithm and exhaustive enumeration.
#pragma once

#include <vector>

#include "kssp/engine.hpp"
#include "kssp/graph.hpp"

namespace kssp {

/// Yen's algorithm with Lawler's deviation-tree discipline: for each
/// extracted path, spur searches start at its deviation node, the root
/// prefix's nodes are deleted, and at the spur node the arcs taken by every
/// solved path sharing the root are blocked. Spur searches are scalar
/// Dijkstra runs ordered by exact distances to t (computed once per solve).
///
/// Same contract and report type as KsspSolver::solve. Stats count spur
/// searches as queries; pruning options are ignored.
SolveReport yen(const Graph& g, NodeId s, NodeId t, std::size_t k,
                const SolveOptions& options = {});

/// All simple s-t paths by depth-first search, sorted by cost and then by
/// arc sequence. Throws std::length_error once more than max_paths exist.
std::vector<Path> enumerate_paths(const Graph& g, NodeId s, NodeId t, std::size_t max_paths);

}  // namespace kssp
