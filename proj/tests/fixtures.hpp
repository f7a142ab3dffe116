// Shared test graphs and generators.
#pragma once

#include <cstdint>

#include "kssp/graph.hpp"
#include "kssp/random.hpp"

namespace kssp::testing {

/// Five-node ranking example: s->v->t (2), s->u->t (3), s->w->t (4),
/// s->u->v->t (5).
struct Fig2 {
  Graph g;
  static constexpr NodeId s = 0, u = 1, v = 2, w = 3, t = 4;
  static constexpr ArcId su = 0, sv = 1, sw = 2, uv = 3, ut = 4, vt = 5, wt = 6;
};
Fig2 make_fig2();

/// Six-node instance where the cheapest s-v4 path cannot be extended to a
/// simple s-v2 path. Reference path s->v1->v2->v3->t has cost 0.
struct Fig3 {
  Graph g;
  static constexpr NodeId s = 0, v1 = 1, v2 = 2, v3 = 3, t = 4, v4 = 5;
  static constexpr ArcId s_v1 = 0, v1_v2 = 1, v2_v3 = 2, v3_t = 3, v1_v4 = 4, v3_v4 = 5,
                         v4_v2 = 6, v2_t = 7;
};
Fig3 make_fig3();

/// Each ordered pair (u, v), u != v, becomes an arc with probability
/// `density`; costs are uniform integers in [0, max_cost].
Graph random_digraph(std::size_t n, double density, int max_cost, Xoshiro256& rng);

}  // namespace kssp::testing
