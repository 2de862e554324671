#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "feedloop/error.hpp"
#include "feedloop/metrics.hpp"
#include "unit/helpers.hpp"

using namespace feedloop;
using feedloop::test::make_graph;

namespace {

constexpr Group m = Group::kMinority;
constexpr Group M = Group::kMajority;

// Mean absolute difference form: G = sum_ij |x_i - x_j| / (2 n^2 mean).
double gini_pairwise(const std::vector<double>& x) {
  double num = 0.0, sum = 0.0;
  for (double a : x) {
    sum += a;
    for (double b : x) num += std::abs(a - b);
  }
  const double n = static_cast<double>(x.size());
  return num / (2.0 * n * sum);
}

}  // namespace

TEST_CASE("gini fixed values") {
  CHECK(gini(std::vector<double>{1, 1, 1, 1}) == 0.0);
  CHECK(gini(std::vector<double>{0, 0, 0, 1}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::abs(gini(std::vector<double>{0, 1, 2, 3}) - 5.0 / 12.0) <= 1e-12);
  CHECK(gini(std::vector<double>{3, 0, 2, 1}) == doctest::Approx(5.0 / 12.0));
  CHECK(gini(std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(gini(std::vector<double>{7}) == 0.0);
}

TEST_CASE("gini rejects bad input") {
  CHECK_THROWS_AS(gini(std::vector<double>{}), Error);
  CHECK_THROWS_AS(gini(std::vector<double>{1, -1}), Error);
}

TEST_CASE("gini agrees with the pairwise-difference form and stays in [0, 1)") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + uniform_below(rng, 40));
    for (auto& v : x) v = static_cast<double>(uniform_below(rng, 20));
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[0] = 1.0;
    const double g = gini(x);
    REQUIRE(g >= 0.0);
    REQUIRE(g < 1.0);
    REQUIRE(g == doctest::Approx(gini_pairwise(x)).epsilon(1e-12));
  }
}

TEST_CASE("exposure counts slots per group") {
  const std::vector<Group> labels{M, m, m, M, M};
  RecommendationBatch b{{0, {1, 3, 4}, 1}, {3, {2, 1}, std::nullopt}, {4, {}, std::nullopt}};
  const auto e = exposure(b, labels);
  REQUIRE(e);
  CHECK(e->recs_issued == 5);
  CHECK(e->min_slots == 3);
  CHECK(e->maj_slots == 2);
  CHECK(e->e_min == doctest::Approx(0.6));
  CHECK(e->e_min + e->e_maj == 1.0);
  CHECK_FALSE(exposure(RecommendationBatch{}, labels).has_value());
}

TEST_CASE("gini_in_degree uses only the group's nodes") {
  auto g = make_graph({m, m, M, M}, {{2, 0}, {3, 0}, {1, 2}, {0, 3}});
  // minority in-degrees (2, 0) -> 0.5; majority (1, 1) -> 0.
  CHECK(gini_in_degree(g, m) == doctest::Approx(0.5));
  CHECK(gini_in_degree(g, M) == 0.0);
}

TEST_CASE("percentile exposure ranks by in-degree with id tie-break") {
  // Ten minority nodes; node 9 has the largest in-degree, then node 8.
  std::vector<Group> labels(12, m);
  labels[10] = labels[11] = M;
  LabeledDigraph g(labels);
  for (NodeId u : {0, 1, 2, 10, 11}) g.add_edge(u, 9);
  for (NodeId u : {0, 1}) g.add_edge(u, 8);
  RecommendationBatch b{{10, {9, 8, 0}, 1}, {11, {9, 3, 4}, 1}};
  const auto p = percentile_exposure(b, g, m, std::vector<double>{0.1, 0.2, 0.5, 1.0});
  REQUIRE(p);
  // top 1 = {9}: 2 of 6 slots; top 2 = {9, 8}: 3; top 5 = {9, 8, 0, 1, 2}: 4; all: 6.
  CHECK(p->shares[0] == doctest::Approx(2.0 / 6.0));
  CHECK(p->shares[1] == doctest::Approx(3.0 / 6.0));
  CHECK(p->shares[2] == doctest::Approx(4.0 / 6.0));
  CHECK(p->shares[3] == 1.0);
  CHECK(std::is_sorted(p->shares.begin(), p->shares.end()));
  CHECK_FALSE(percentile_exposure(b, g, M).has_value());
}

TEST_CASE("percentile buckets are non-decreasing and end at 1 on random batches") {
  auto g = feedloop::test::random_graph(80, 0.05, 0.3, 9);
  Rng rng(4);
  RecommendationBatch b;
  for (NodeId u = 0; u < 30; ++u) {
    Recommendation r{u, {}, std::nullopt};
    for (int i = 0; i < 3; ++i) r.targets.push_back(static_cast<NodeId>(uniform_below(rng, 80)));
    b.push_back(r);
  }
  for (auto grp : {m, M}) {
    const auto p = percentile_exposure(b, g, grp);
    if (!p) continue;
    CHECK(std::is_sorted(p->shares.begin(), p->shares.end()));
    CHECK(p->shares.back() == doctest::Approx(1.0));
    CHECK(p->shares.front() >= 0.0);
  }
}
