#include "fixtures.hpp"

namespace kssp::testing {

Fig2 make_fig2() {
  using F = Fig2;
  return {Graph(5, {{F::s, F::u, 2},
                    {F::s, F::v, 1},
                    {F::s, F::w, 3},
                    {F::u, F::v, 2},
                    {F::u, F::t, 1},
                    {F::v, F::t, 1},
                    {F::w, F::t, 1}})};
}

Fig3 make_fig3() {
  using F = Fig3;
  return {Graph(6, {{F::s, F::v1, 0},
                    {F::v1, F::v2, 0},
                    {F::v2, F::v3, 0},
                    {F::v3, F::t, 0},
                    {F::v1, F::v4, 2},
                    {F::v3, F::v4, 1},
                    {F::v4, F::v2, 2},
                    {F::v2, F::t, 2}})};
}

Graph random_digraph(std::size_t n, double density, int max_cost, Xoshiro256& rng) {
  std::vector<Arc> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v || rng.uniform01() >= density) continue;
      arcs.push_back({u, v, static_cast<Cost>(rng.below(static_cast<std::uint64_t>(max_cost) + 1))});
    }
  }
  return Graph(n, std::move(arcs));
}

}  // namespace kssp::testing
