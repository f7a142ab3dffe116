#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "fixtures.hpp"
#include "kssp/dijkstra.hpp"
#include "kssp/graph.hpp"

using namespace kssp;
using kssp::testing::Fig2;
using kssp::testing::Fig3;

namespace {

ParseErrorKind parse_kind(const std::string& text, std::size_t* line = nullptr) {
  std::istringstream in(text);
  try {
    load_dimacs(in);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseErrorKind::malformed_arc;
}

std::vector<std::tuple<NodeId, NodeId, Cost>> arc_multiset(const Graph& g) {
  std::vector<std::tuple<NodeId, NodeId, Cost>> out;
  for (const Arc& a : g.arcs()) out.emplace_back(a.tail, a.head, a.cost);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("load_dimacs reads a minimal file") {
  std::istringstream in("p sp 2 1\na 1 2 7\n");
  const Graph g = load_dimacs(in);
  CHECK(g.node_count() == 2);
  REQUIRE(g.arc_count() == 1);
  CHECK(g.tail(0) == 0);
  CHECK(g.head(0) == 1);
  CHECK(g.cost(0) == 7);
}

TEST_CASE("load_dimacs skips comments and keeps file order") {
  std::istringstream in("c hello\np sp 3 2\nc mid\na 3 1 5\n\na 1 2 0\n");
  const Graph g = load_dimacs(in);
  REQUIRE(g.arc_count() == 2);
  CHECK(g.tail(0) == 2);
  CHECK(g.head(1) == 1);
  CHECK(g.cost(1) == 0);
}

TEST_CASE("load_dimacs reports each error kind with its line") {
  std::size_t line = 0;
  CHECK(parse_kind("a 1 2 7\n", &line) == ParseErrorKind::missing_problem_line);
  CHECK(line == 1);
  CHECK(parse_kind("c only comments\n") == ParseErrorKind::missing_problem_line);
  CHECK(parse_kind("p sp two 1\n", &line) == ParseErrorKind::malformed_header);
  CHECK(parse_kind("p max 2 1\na 1 2 1\n") == ParseErrorKind::malformed_header);
  CHECK(parse_kind("p sp 2 1\np sp 2 1\n", &line) == ParseErrorKind::duplicate_header);
  CHECK(line == 2);
  CHECK(parse_kind("p sp 2 2\na 1 2 1\n", &line) == ParseErrorKind::arc_count_mismatch);
  CHECK(parse_kind("p sp 2 1\na 1 2 1\na 2 1 1\n", &line) == ParseErrorKind::arc_count_mismatch);
  CHECK(line == 3);
  CHECK(parse_kind("p sp 2 1\na 1 3 1\n", &line) == ParseErrorKind::node_out_of_range);
  CHECK(line == 2);
  CHECK(parse_kind("p sp 2 1\na 0 1 1\n") == ParseErrorKind::node_out_of_range);
  CHECK(parse_kind("p sp 2 1\nc x\na 1 2 -4\n", &line) == ParseErrorKind::negative_weight);
  CHECK(line == 3);
  CHECK(parse_kind("p sp 2 1\na 1 2\n") == ParseErrorKind::malformed_arc);
}

TEST_CASE("load_dimacs error message names the line") {
  std::istringstream in("p sp 2 1\na 1 9 1\n");
  CHECK_THROWS_WITH_AS(load_dimacs(in), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("write_dimacs then load_dimacs keeps nodes, arc count and arc multiset") {
  Xoshiro256 rng(11);
  for (int round = 0; round < 50; ++round) {
    const Graph g = testing::random_digraph(1 + rng.below(12), 0.3, 9, rng);
    std::stringstream buf;
    write_dimacs(buf, g, "round trip");
    const Graph h = load_dimacs(buf);
    CHECK(h.node_count() == g.node_count());
    CHECK(h.arc_count() == g.arc_count());
    CHECK(arc_multiset(h) == arc_multiset(g));
  }
}

TEST_CASE("real-valued grid costs survive a DIMACS round trip bit-exactly") {
  const Graph g = gen_grid(4, 5, 0, 10, 3);
  std::stringstream buf;
  write_dimacs(buf, g);
  const Graph h = load_dimacs(buf);
  REQUIRE(h.arc_count() == g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a) CHECK(h.cost(a) == g.cost(a));
}

TEST_CASE("bundled 10-node fixture loads") {
  const Graph g = load_dimacs_file(std::string(KSSP_TEST_DATA) + "/small10.gr");
  CHECK(g.node_count() == 10);
  CHECK(g.arc_count() == 22);
}

TEST_CASE("adjacency indices match the arc list") {
  Xoshiro256 rng(5);
  for (int round = 0; round < 30; ++round) {
    const Graph g = testing::random_digraph(2 + rng.below(10), 0.4, 5, rng);
    std::size_t out_total = 0, in_total = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (ArcId a : g.out_arcs(v)) CHECK(g.tail(a) == v);
      for (ArcId a : g.in_arcs(v)) CHECK(g.head(a) == v);
      out_total += g.out_arcs(v).size();
      in_total += g.in_arcs(v).size();
    }
    CHECK(out_total == g.arc_count());
    CHECK(in_total == g.arc_count());
  }
}

TEST_CASE("graph rejects negative or non-finite costs") {
  CHECK_THROWS_AS(Graph(2, {{0, 1, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 1, kInfinity}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1}}), std::out_of_range);
}

TEST_CASE("gen_grid sizes") {
  const Graph big = gen_grid(100, 100, 0, 10, 42);
  CHECK(big.node_count() == 10000);
  CHECK(big.arc_count() == 39600);

  const Graph small = gen_grid(2, 2, 0, 10, 9);
  CHECK(small.node_count() == 4);
  CHECK(small.arc_count() == 8);

  const Graph one = gen_grid(1, 1, 0, 10, 9);
  CHECK(one.node_count() == 1);
  CHECK(one.arc_count() == 0);

  CHECK_THROWS_AS(gen_grid(0, 5, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_grid(5, 0, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_grid(2, 2, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("gen_grid arc count formula and neighbourhood") {
  Xoshiro256 rng(8);
  for (int round = 0; round < 40; ++round) {
    const std::size_t rows = 1 + rng.below(9), cols = 1 + rng.below(9);
    const Graph g = gen_grid(rows, cols, 0, 10, rng());
    CHECK(g.arc_count() == 2 * (rows * (cols - 1) + cols * (rows - 1)));
    for (const Arc& a : g.arcs()) {
      const auto dr = std::abs(static_cast<long>(a.tail / cols) - static_cast<long>(a.head / cols));
      const auto dc = std::abs(static_cast<long>(a.tail % cols) - static_cast<long>(a.head % cols));
      CHECK(dr + dc == 1);
      CHECK(a.cost >= 0);
      CHECK(a.cost <= 10);
    }
  }
}

TEST_CASE("gen_grid is deterministic per seed and draws per arc") {
  const Graph a = gen_grid(10, 10, 0, 10, 123);
  const Graph b = gen_grid(10, 10, 0, 10, 123);
  const Graph c = gen_grid(10, 10, 0, 10, 124);
  bool same = true, differs = false, antiparallel_differ = false;
  for (ArcId i = 0; i < a.arc_count(); ++i) {
    same = same && a.cost(i) == b.cost(i) && a.tail(i) == b.tail(i) && a.head(i) == b.head(i);
    differs = differs || a.cost(i) != c.cost(i);
  }
  for (ArcId i = 0; i + 1 < a.arc_count(); i += 2) {
    antiparallel_differ = antiparallel_differ || a.cost(i) != a.cost(i + 1);
  }
  CHECK(same);
  CHECK(differs);
  CHECK(antiparallel_differ);
}

TEST_CASE("generator stream is pinned") {
  // Reference values for xoshiro256** seeded through splitmix64(0).
  Xoshiro256 rng(0);
  std::uint64_t sm = 0;
  CHECK(splitmix64(sm) == 0xe220a8397b1dcdafULL);
  const auto first = rng();
  Xoshiro256 again(0);
  CHECK(again() == first);
}

TEST_CASE("path_cost on the ranking example") {
  const auto f = testing::make_fig2();
  CHECK(path_cost(f.g, std::vector<ArcId>{Fig2::sv, Fig2::vt}) == 2);
  CHECK(path_cost(f.g, std::vector<ArcId>{Fig2::su, Fig2::uv, Fig2::vt}) == 5);
  CHECK(path_cost(f.g, std::vector<ArcId>{}) == 0);
  CHECK_THROWS_AS(path_cost(f.g, std::vector<ArcId>{Fig2::sv, Fig2::ut}), PathError);
  CHECK_THROWS_AS(Path(f.g, {Fig2::wt, Fig2::sv}), PathError);
}

TEST_CASE("is_simple") {
  const auto f2 = testing::make_fig2();
  CHECK(is_simple(f2.g, Path(f2.g, {Fig2::su, Fig2::uv, Fig2::vt})));
  CHECK(is_simple(f2.g, Path(f2.g, {Fig2::wt})));

  const auto f3 = testing::make_fig3();
  const Path walk(f3.g, {Fig3::s_v1, Fig3::v1_v2, Fig3::v2_v3, Fig3::v3_v4, Fig3::v4_v2});
  CHECK_FALSE(is_simple(f3.g, walk));
}

TEST_CASE("concatenation cost equals the sum of the parts on integer costs") {
  Xoshiro256 rng(21);
  const Graph g = gen_grid(6, 6, 0, 10, 77);
  const Graph gi = [&] {
    std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
    for (auto& a : arcs) a.cost = std::floor(a.cost);
    return Graph(g.node_count(), std::move(arcs));
  }();
  for (int round = 0; round < 100; ++round) {
    // random walk of length 2..12 split at a random point
    std::vector<ArcId> arcs;
    NodeId at = static_cast<NodeId>(rng.below(gi.node_count()));
    const std::size_t len = 2 + rng.below(11);
    for (std::size_t i = 0; i < len; ++i) {
      const auto out = gi.out_arcs(at);
      const ArcId a = out[rng.below(out.size())];
      arcs.push_back(a);
      at = gi.head(a);
    }
    const std::size_t cut = rng.below(len + 1);
    const Path left(gi, {arcs.begin(), arcs.begin() + static_cast<long>(cut)});
    const Path right(gi, {arcs.begin() + static_cast<long>(cut), arcs.end()});
    const Path whole = concat(gi, left, right);
    CHECK(whole.cost() == left.cost() + right.cost());
    CHECK(whole.cost() == path_cost(gi, arcs));
  }
}

TEST_CASE("mask epochs") {
  const auto f = testing::make_fig2();
  Mask mask(f.g);
  mask.delete_node(Fig2::v);
  mask.delete_arc(Fig2::su);
  CHECK(mask.node_deleted(Fig2::v));
  CHECK_FALSE(mask.usable(f.g, Fig2::sv));
  CHECK_FALSE(mask.usable(f.g, Fig2::su));
  CHECK(mask.usable(f.g, Fig2::sw));
  mask.clear();
  CHECK_FALSE(mask.node_deleted(Fig2::v));
  CHECK(mask.usable(f.g, Fig2::su));
}

TEST_CASE("path dump lines use 1-based ids and round-trip costs") {
  const auto f = testing::make_fig2();
  std::ostringstream out;
  write_path_line(out, f.g, Path(f.g, {Fig2::su, Fig2::uv, Fig2::vt}));
  CHECK(out.str() == "cost 5 nodes 1 2 3 5\n");

  const Graph g = gen_grid(3, 3, 0, 10, 5);
  const Path p(g, {0, 4});  // 0 -> 1 -> 2 along the first row
  std::ostringstream real;
  write_path_line(real, g, p);
  const DumpedPath back = parse_path_line(real.str());
  CHECK(back.cost == p.cost());
  CHECK(back.nodes == p.nodes(g));
  CHECK_THROWS_AS(parse_path_line("nodes 1 2"), std::invalid_argument);
}

TEST_CASE("dijkstra with and without lower bounds agree") {
  Xoshiro256 rng(3);
  for (int round = 0; round < 200; ++round) {
    const Graph g = testing::random_digraph(2 + rng.below(12), 0.3, 9, rng);
    const auto s = static_cast<NodeId>(rng.below(g.node_count()));
    const auto t = static_cast<NodeId>(rng.below(g.node_count()));
    if (s == t) continue;
    ShortestPathSearch search(g);
    const auto plain = search.run(s, t);
    const auto bounds = distances_to(g, t);
    const auto guided = search.run(s, t, nullptr, bounds);
    REQUIRE(plain.has_value() == guided.has_value());
    CHECK(plain.has_value() == (bounds[s] != kInfinity));
    if (plain) {
      CHECK(plain->cost() == guided->cost());
      CHECK(plain->cost() == bounds[s]);
    }
  }
}
