#include <doctest.h>

#include "fixtures.hpp"
#include "kssp/engine.hpp"
#include "kssp/oracles.hpp"

using namespace kssp;
using kssp::testing::Fig2;
using kssp::testing::Fig3;

TEST_CASE("enumeration of the ranking example") {
  const auto f = testing::make_fig2();
  const auto all = enumerate_paths(f.g, Fig2::s, Fig2::t, 100);
  REQUIRE(all.size() == 4);
  CHECK(all[0].cost() == 2);
  CHECK(all[1].cost() == 3);
  CHECK(all[2].cost() == 4);
  CHECK(all[3].cost() == 5);
  CHECK_THROWS_AS(enumerate_paths(f.g, Fig2::s, Fig2::t, 3), std::length_error);
  CHECK(enumerate_paths(f.g, Fig2::t, Fig2::s, 100).empty());
}

TEST_CASE("enumeration skips non-simple walks") {
  const auto f = testing::make_fig3();
  const auto all = enumerate_paths(f.g, Fig3::s, Fig3::t, 100);
  REQUIRE(all.size() >= 2);
  CHECK(all[0].cost() == 0);
  CHECK(all[1].cost() == 2);
  for (const Path& p : all) CHECK(is_simple(f.g, p));
  // s-v1-v2-t, s-v1-v2-v3-t, s-v1-v4-v2-t, s-v1-v4-v2-v3-t, s-v1-v2-v3-v4 cannot reach t again
  CHECK(all.size() == 4);
}

TEST_CASE("yen on the ranking example") {
  const auto f = testing::make_fig2();
  const auto r = yen(f.g, Fig2::s, Fig2::t, 4);
  CHECK(r.status == SolveStatus::complete);
  CHECK(r.costs() == std::vector<Cost>{2, 3, 4, 5});
  const auto more = yen(f.g, Fig2::s, Fig2::t, 9);
  CHECK(more.status == SolveStatus::exhausted_early);
  CHECK(more.paths.size() == 4);
  const auto none = yen(f.g, Fig2::t, Fig2::s, 2);
  CHECK(none.paths.empty());
  CHECK(none.status == SolveStatus::exhausted_early);
}

TEST_CASE("yen agrees with enumeration and with the label-setting solver") {
  Xoshiro256 rng(31);
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 2 + rng.below(9);
    const Graph g = testing::random_digraph(n, 0.35, 9, rng);
    const auto s = static_cast<NodeId>(rng.below(n));
    const auto t = static_cast<NodeId>(rng.below(n));
    if (s == t) continue;
    const auto all = enumerate_paths(g, s, t, 1'000'000);
    const std::size_t k = 1 + rng.below(all.size() + 2);
    std::vector<Cost> expected;
    for (std::size_t i = 0; i < all.size() && i < k; ++i) expected.push_back(all[i].cost());

    const auto y = yen(g, s, t, k);
    CHECK(y.costs() == expected);
    for (const auto& rec : y.paths) CHECK(is_simple(g, rec.path));
    CHECK(solve_kssp(g, s, t, k).costs() == expected);
  }
}

TEST_CASE("yen on grids matches the label-setting solver") {
  Xoshiro256 rng(12);
  for (int round = 0; round < 30; ++round) {
    const Graph g = gen_grid(12, 12, 0, 10, rng());
    const auto s = static_cast<NodeId>(rng.below(g.node_count()));
    const auto t = static_cast<NodeId>(rng.below(g.node_count()));
    if (s == t) continue;
    CHECK(yen(g, s, t, 100).costs() == solve_kssp(g, s, t, 100).costs());
  }
}
