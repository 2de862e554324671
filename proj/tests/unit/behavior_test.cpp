#include <cmath>
#include <numeric>

#include "doctest.h"
#include "feedloop/behavior.hpp"
#include "feedloop/error.hpp"

using namespace feedloop;

namespace {

std::vector<double> frequencies(BehaviorKind kind, std::size_t len, int draws, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> f(len, 0.0);
  for (int i = 0; i < draws; ++i) {
    const auto pick = select(kind, len, rng);
    REQUIRE(pick.has_value());
    REQUIRE(*pick >= 1);
    REQUIRE(*pick <= len);
    f[*pick - 1] += 1.0 / draws;
  }
  return f;
}

}  // namespace

TEST_CASE("psb_probs values") {
  CHECK(psb_probs(1) == std::vector<double>{1.0});
  const auto p = psb_probs(3);
  // 1/ln2 : 1/ln3 : 1/ln4, normalised.
  const double w[] = {1 / std::log(2.0), 1 / std::log(3.0), 1 / std::log(4.0)};
  const double z = w[0] + w[1] + w[2];
  for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(w[i] / z).epsilon(1e-14));
  CHECK(std::abs(p[0] - 0.4693) <= 1e-4);
  CHECK(std::abs(p[1] - 0.2961) <= 1e-4);
  CHECK(std::abs(p[2] - 0.2346) <= 1e-4);
  CHECK_THROWS_AS(psb_probs(0), Error);
}

TEST_CASE("psb_probs is base-free, decreasing and normalised") {
  for (std::size_t len = 1; len <= 30; ++len) {
    const auto e = psb_probs(len);
    const auto b2 = psb_probs(len, 2.0);
    const auto b10 = psb_probs(len, 10.0);
    REQUIRE(std::abs(std::accumulate(e.begin(), e.end(), 0.0) - 1.0) <= 1e-12);
    for (std::size_t i = 0; i < len; ++i) {
      REQUIRE(e[i] > 0.0);
      REQUIRE(b2[i] == doctest::Approx(e[i]).epsilon(1e-14));
      REQUIRE(b10[i] == doctest::Approx(e[i]).epsilon(1e-14));
      if (i + 1 < len) REQUIRE(e[i] > e[i + 1]);
    }
  }
}

TEST_CASE("behavior names round-trip") {
  for (auto b : {BehaviorKind::kLazy, BehaviorKind::kRandom, BehaviorKind::kPositionBiased, BehaviorKind::kMixed}) {
    CHECK(parse_behavior(behavior_name(b)) == b);
  }
  CHECK_FALSE(parse_behavior("greedy").has_value());
}

TEST_CASE("lazy always takes the top slot") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) REQUIRE(select(BehaviorKind::kLazy, 3, rng) == std::size_t{1});
}

TEST_CASE("empty lists never yield an acceptance") {
  Rng rng(2);
  for (auto b : {BehaviorKind::kLazy, BehaviorKind::kRandom, BehaviorKind::kPositionBiased, BehaviorKind::kMixed}) {
    CHECK_FALSE(select(b, 0, rng).has_value());
  }
}

TEST_CASE("empirical frequencies match the policies") {
  const auto rnd = frequencies(BehaviorKind::kRandom, 4, 100000, 3);
  for (double f : rnd) CHECK(std::abs(f - 0.25) <= 0.01);

  const auto psb = frequencies(BehaviorKind::kPositionBiased, 3, 100000, 4);
  const auto want = psb_probs(3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(psb[i] - want[i]) <= 0.01);

  const auto mix = frequencies(BehaviorKind::kMixed, 3, 100000, 5);
  CHECK(std::abs(mix[0] - (1.0 + 1.0 / 3.0 + want[0]) / 3.0) <= 0.01);
  CHECK(std::abs(mix[0] - 0.601) <= 0.01);
}

TEST_CASE("acceptance_probs of mix is the mean of its components") {
  for (std::size_t len = 1; len <= 6; ++len) {
    const auto lzy = acceptance_probs(BehaviorKind::kLazy, len);
    const auto rnd = acceptance_probs(BehaviorKind::kRandom, len);
    const auto psb = acceptance_probs(BehaviorKind::kPositionBiased, len);
    const auto mix = acceptance_probs(BehaviorKind::kMixed, len);
    for (std::size_t i = 0; i < len; ++i) {
      REQUIRE(mix[i] == doctest::Approx((lzy[i] + rnd[i] + psb[i]) / 3.0));
    }
  }
}

TEST_CASE("mix passes a chi-square test against the mixture") {
  constexpr int kDraws = 100000;
  const auto f = frequencies(BehaviorKind::kMixed, 3, kDraws, 6);
  const auto p = acceptance_probs(BehaviorKind::kMixed, 3);
  double chi2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double obs = f[i] * kDraws, exp = p[i] * kDraws;
    chi2 += (obs - exp) * (obs - exp) / exp;
  }
  CHECK(chi2 < 13.8155);  // df = 2, p = 0.001
}
