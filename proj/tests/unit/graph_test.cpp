#include <algorithm>
#include <set>

#include "doctest.h"
#include "feedloop/error.hpp"
#include "feedloop/graph.hpp"
#include "unit/helpers.hpp"

using namespace feedloop;
using feedloop::test::make_graph;
using feedloop::test::random_graph;

namespace {

constexpr Group m = Group::kMinority;
constexpr Group M = Group::kMajority;

std::vector<NodeId> brute_distance2(const LabeledDigraph& g, NodeId u, const std::set<NodeId>& excluded) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (v == u || g.has_edge(u, v) || excluded.count(v)) continue;
    bool reach = false;
    for (NodeId z = 0; z < g.num_nodes() && !reach; ++z) reach = g.has_edge(u, z) && g.has_edge(z, v);
    if (reach) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("add_edge keeps sorted adjacency and degree sums") {
  auto g = make_graph({M, M, m, M}, {{0, 3}, {0, 1}, {2, 0}, {3, 0}});
  CHECK(g.num_edges() == 4);
  CHECK(std::vector<NodeId>(g.out(0).begin(), g.out(0).end()) == std::vector<NodeId>{1, 3});
  CHECK(std::vector<NodeId>(g.in(0).begin(), g.in(0).end()) == std::vector<NodeId>{2, 3});
  std::size_t outs = 0, ins = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    outs += g.out_degree(u);
    ins += g.in_degree(u);
  }
  CHECK(outs == g.num_edges());
  CHECK(ins == g.num_edges());
  CHECK(check_invariants(g));
}

TEST_CASE("add_edge rejects self-loops, duplicates and unknown nodes") {
  LabeledDigraph g(3);
  g.add_edge(0, 1);
  CHECK_THROWS_AS(g.add_edge(1, 1), GraphError);
  CHECK_THROWS_AS(g.add_edge(0, 1), GraphError);
  CHECK_THROWS_AS(g.add_edge(0, 7), GraphError);
  CHECK(g.num_edges() == 1);
}

TEST_CASE("mixing counts and homophily on a 10-node graph") {
  // Minority {0,1,2}: mm = 3, mM = 2, Mm = 2, MM = 5.
  auto g = make_graph({m, m, m, M, M, M, M, M, M, M}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 4}, {3, 0},
                                                        {5, 2}, {3, 4}, {4, 5}, {6, 7}, {8, 9}, {9, 3}});
  CHECK(g.mixing() == MixingCounts{3, 2, 2, 5});
  CHECK(group_share(g, m) == doctest::Approx(0.3));
  CHECK(homophily(g, m) == 3.0 / 5.0 - 0.3);
  CHECK(homophily(g, M) == 5.0 / 7.0 - 0.7);
  CHECK(edge_fraction_within(g, m) == 3.0 / 5.0);
}

TEST_CASE("homophily is undefined for a group without out-edges") {
  auto g = make_graph({m, M, M}, {{1, 2}});
  CHECK_THROWS_AS(homophily(g, m), GraphError);
  CHECK(homophily(g, M) == doctest::Approx(1.0 - 2.0 / 3.0));
}

TEST_CASE("all-majority graph has zero majority homophily") {
  auto g = make_graph({M, M, M, M}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(homophily(g, M) == 0.0);
}

TEST_CASE("set_label and rewire keep incremental mixing exact") {
  auto g = random_graph(60, 0.08, 0.3, 11);
  Rng rng(5);
  for (int step = 0; step < 2000; ++step) {
    const auto u = static_cast<NodeId>(uniform_below(rng, g.num_nodes()));
    if (uniform01(rng) < 0.3) {
      g.set_label(u, other(g.label(u)));
    } else if (g.out_degree(u) > 0) {
      const NodeId old = g.out(u)[uniform_below(rng, g.out_degree(u))];
      const auto w = static_cast<NodeId>(uniform_below(rng, g.num_nodes()));
      if (w == u || g.has_edge(u, w)) continue;
      const auto before = g.out_degree(u);
      const auto edges = g.num_edges();
      g.rewire(u, old, w);
      REQUIRE(g.out_degree(u) == before);
      REQUIRE(g.num_edges() == edges);
    }
    REQUIRE(g.mixing() == g.recount_mixing());
  }
  CHECK(check_invariants(g));
  CHECK(g.group_size(m) + g.group_size(M) == g.num_nodes());
}

TEST_CASE("rewire validates its arguments") {
  auto g = make_graph({M, M, M}, {{0, 1}, {0, 2}});
  CHECK_THROWS_AS(g.rewire(0, 2, 1), GraphError);  // new target already an edge
  CHECK_THROWS_AS(g.rewire(1, 0, 2), GraphError);  // old edge missing
  CHECK_THROWS_AS(g.rewire(0, 1, 0), GraphError);  // self-loop
}

TEST_CASE("distance2 on a chain and with exclusions") {
  auto g = make_graph({M, M, M, M}, {{0, 1}, {1, 2}, {1, 3}, {0, 3}});
  CHECK(distance2_candidates(g, 0) == std::vector<NodeId>{2});
  const std::vector<NodeId> excl{2};
  CHECK(distance2_candidates(g, 0, excl).empty());
  CHECK(distance2_candidates(g, 2).empty());  // sink
}

TEST_CASE("distance2 never returns u, neighbours or excluded nodes") {
  auto g = make_graph({M, M, M}, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
  // 0 -> 1 -> 0 must not yield 0 itself.
  CHECK(distance2_candidates(g, 0) == std::vector<NodeId>{2});
  CHECK(distance2_candidates(g, 1).empty());  // 1 -> 0 -> 1 and 1 -> 2 -> 0 (already a neighbour)
}

TEST_CASE("distance2 matches brute force on random graphs") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto g = random_graph(40, 0.07, 0.4, seed);
    Rng rng(seed * 31);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      std::set<NodeId> excl;
      for (int i = 0; i < 4; ++i) excl.insert(static_cast<NodeId>(uniform_below(rng, g.num_nodes())));
      const std::vector<NodeId> ex(excl.begin(), excl.end());
      const auto got = distance2_candidates(g, u, ex);
      REQUIRE(got == brute_distance2(g, u, excl));
      REQUIRE(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST_CASE("edges() is lexicographic and equality is structural") {
  auto a = make_graph({M, m, M}, {{2, 0}, {0, 2}, {0, 1}});
  auto b = make_graph({M, m, M}, {{0, 1}, {2, 0}, {0, 2}});
  const std::vector<std::pair<NodeId, NodeId>> want{{0, 1}, {0, 2}, {2, 0}};
  CHECK(a.edges() == want);
  CHECK(a == b);
  b.set_label(0, m);
  CHECK_FALSE(a == b);
  CHECK(a.members(m) == std::vector<NodeId>{1});
}
