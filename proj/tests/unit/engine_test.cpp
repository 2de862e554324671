#include <algorithm>
#include <set>

#include "doctest.h"
#include "feedloop/engine.hpp"
#include "feedloop/error.hpp"
#include "feedloop/netgen.hpp"
#include "unit/helpers.hpp"

using namespace feedloop;
using feedloop::test::make_graph;
using feedloop::test::random_graph;

namespace {

constexpr Group m = Group::kMinority;
constexpr Group M = Group::kMajority;

// i -> i+1..i+reach (mod n): every node has `reach` distance-2 candidates.
LabeledDigraph ring(std::size_t n, std::size_t reach) {
  LabeledDigraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    if (u % 3 == 0) g.set_label(u, m);
    for (std::size_t j = 1; j <= reach; ++j) g.add_edge(u, static_cast<NodeId>((u + j) % n));
  }
  return g;
}

}  // namespace

TEST_CASE("sample_users sizes, order and variation") {
  Rng rng(1);
  const auto s = sample_users(500, 0.2, rng);
  CHECK(s.size() == 100);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  const auto all = sample_users(37, 1.0, rng);
  CHECK(all.size() == 37);
  CHECK(all.front() == 0);
  CHECK(all.back() == 36);
  int same = 0;
  for (int i = 0; i < 20; ++i) same += sample_users(500, 0.2, rng) == sample_users(500, 0.2, rng);
  CHECK(same == 0);
  CHECK_THROWS_AS(sample_users(4, 0.2, rng), Error);
}

TEST_CASE("SimConfig validation") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.T = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.alpha = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.alpha = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SimConfig{};
  c.k = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("exclusion table stays sorted and counts additions") {
  ExclusionTable ex(4);
  ex.add(1, std::vector<NodeId>{3, 0});
  ex.add(1, std::vector<NodeId>{2});
  CHECK(std::vector<NodeId>(ex.of(1).begin(), ex.of(1).end()) == std::vector<NodeId>{0, 2, 3});
  CHECK(ex.contains(1, 2));
  CHECK_FALSE(ex.contains(0, 2));
  CHECK(ex.total() == 3);
}

TEST_CASE("isolated users issue nothing and exposure is absent") {
  LabeledDigraph g(std::vector<Group>{m, M, M, M, M, M, M, M, M, M});
  SimConfig cfg;
  cfg.alpha = 1.0;
  auto rec = make_recommender(cfg.recommender);
  ExclusionTable ex(g.num_nodes());
  const auto r = run_iteration(g, cfg, *rec, ex, 1, 0);
  CHECK(r.record.sampled_users == 10);
  CHECK(r.record.recs_issued == 0);
  CHECK(r.record.edges_added == 0);
  CHECK_FALSE(r.record.exposure.has_value());
  CHECK(r.record.recs_nominal == 30);
}

TEST_CASE("full sampling on a graph with ample candidates") {
  for (auto kind : {RecommenderKind::kAda, RecommenderKind::kSls, RecommenderKind::kAls, RecommenderKind::kRnd}) {
    for (auto beh : {BehaviorKind::kLazy, BehaviorKind::kRandom, BehaviorKind::kPositionBiased,
                     BehaviorKind::kMixed}) {
      auto g = ring(100, 3);
      SimConfig cfg;
      cfg.alpha = 1.0;
      cfg.recommender = kind;
      cfg.behavior = beh;
      cfg.rng_seed = 3;
      auto rec = make_recommender(kind);
      ExclusionTable ex(g.num_nodes());
      const auto before = g.num_edges();
      const auto r = run_iteration(g, cfg, *rec, ex, 1, before);
      CHECK(r.record.recs_issued == 300);
      CHECK(r.record.edges_added == 100);
      CHECK(g.num_edges() == before + 100);
      CHECK(r.record.cumulative_edge_growth == doctest::Approx(100.0 / before));
      CHECK(ex.total() == 300);
    }
  }
}

TEST_CASE("a round reads the snapshot: accepted edges are applied after every user") {
  // Every recommended target must be a candidate on the round-start graph,
  // even for users processed after others have accepted.
  auto g = random_graph(120, 0.04, 0.3, 6);
  const auto start = g;
  SimConfig cfg;
  cfg.alpha = 1.0;
  auto rec = make_recommender(RecommenderKind::kSls);
  ExclusionTable ex(g.num_nodes());
  const auto r = run_iteration(g, cfg, *rec, ex, 1, start.num_edges());
  for (const auto& item : r.batch) {
    const auto cand = distance2_candidates(start, item.user);
    for (NodeId v : item.targets) REQUIRE(std::binary_search(cand.begin(), cand.end(), v));
    if (item.accepted) REQUIRE(g.has_edge(item.user, item.targets[*item.accepted - 1]));
  }
}

TEST_CASE("simulation invariants over a full run") {
  auto net = build_preset(Preset::G1, 600, 5.0, 4);
  SimConfig cfg;
  cfg.T = 8;
  cfg.recommender = RecommenderKind::kAda;
  cfg.rng_seed = 4;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::uint64_t edges = net.graph.num_edges();
  const auto initial = edges;
  std::size_t added = 0;
  bool accepted_were_recommended = true;
  const auto res = run_simulation(cfg, net.graph, [&](const IterationRecord& rec, const RecommendationBatch& b,
                                                      const LabeledDigraph& g) {
    REQUIRE(g.num_edges() == edges + rec.edges_added);
    edges = g.num_edges();
    added += rec.edges_added;
    REQUIRE(rec.edges_added <= rec.recs_issued);
    std::size_t slots = 0;
    for (const auto& item : b) {
      slots += item.targets.size();
      for (NodeId v : item.targets) REQUIRE(seen.insert({item.user, v}).second);
      if (item.accepted) {
        accepted_were_recommended = accepted_were_recommended && *item.accepted >= 1 &&
                                    *item.accepted <= item.targets.size();
      }
    }
    REQUIRE(slots == rec.recs_issued);
    if (rec.exposure) {
      REQUIRE(rec.exposure->min_slots + rec.exposure->maj_slots == rec.recs_issued);
      REQUIRE(rec.exposure->e_min + rec.exposure->e_maj == doctest::Approx(1.0).epsilon(1e-15));
    }
    REQUIRE(std::abs(*rec.e_mm - (*rec.h_m + group_share(g, m))) <= 1e-12);
    REQUIRE(rec.gini_min >= 0.0);
    REQUIRE(rec.gini_min < 1.0);
  });
  CHECK(accepted_were_recommended);
  CHECK(res.records.size() == 8);
  CHECK(res.final_graph.num_edges() == initial + added);
  CHECK(res.initial.edges == initial);
  CHECK(check_invariants(res.final_graph));
}

TEST_CASE("simulation is deterministic") {
  auto net = build_preset(Preset::G0, 400, 5.0, 2);
  for (auto kind : {RecommenderKind::kAls, RecommenderKind::kRnd}) {
    SimConfig cfg;
    cfg.T = 4;
    cfg.recommender = kind;
    cfg.behavior = BehaviorKind::kMixed;
    cfg.rng_seed = 11;
    const auto a = run_simulation(cfg, net.graph);
    const auto b = run_simulation(cfg, net.graph);
    CHECK(a.final_graph == b.final_graph);
    for (std::size_t t = 0; t < a.records.size(); ++t) {
      CHECK(a.records[t].exposure->e_min == b.records[t].exposure->e_min);
      CHECK(a.records[t].gini_maj == b.records[t].gini_maj);
    }
  }
}

TEST_CASE("T = 1 gives a single record") {
  auto net = build_preset(Preset::G2, 300, 4.0, 1);
  SimConfig cfg;
  cfg.T = 1;
  cfg.rng_seed = 1;
  const auto r = run_simulation(cfg, net.graph);
  REQUIRE(r.records.size() == 1);
  CHECK(r.final_graph.num_edges() == net.graph.num_edges() + r.records[0].edges_added);
}

TEST_CASE("random recommendations on a neutral network expose the minority at its share") {
  double total = 0.0;
  std::size_t n = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    NetConfig nc;
    nc.n_nodes = 2000;
    nc.n_edges_target = 10000;
    nc.s_m = 0.1;
    nc.rng_seed = seed;
    auto net = generate_network(nc);
    SimConfig cfg;
    cfg.recommender = RecommenderKind::kRnd;
    cfg.rng_seed = seed;
    const auto r = run_simulation(cfg, net.graph);
    for (const auto& rec : r.records) {
      CHECK(std::abs(rec.exposure->e_min - 0.1) <= 0.05);
      total += rec.exposure->e_min;
      ++n;
    }
  }
  CHECK(total / static_cast<double>(n) == doctest::Approx(0.1).epsilon(0.2));
}

TEST_CASE("exposure_ratio") {
  std::vector<IterationRecord> recs(10);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    recs[i].t = i + 1;
    recs[i].exposure = ExposureReport{0.1, 0.9, 10, 1, 9};
  }
  CHECK(exposure_ratio(recs, 5) == 1.0);
  recs[9].exposure->e_min = 0.15;
  CHECK(exposure_ratio(recs, 10) == doctest::Approx(1.5));
  CHECK_THROWS_AS(exposure_ratio(recs, 11), Error);
  recs[0].exposure->e_min = 0.0;
  CHECK_THROWS_AS(exposure_ratio(recs, 2), Error);
}
