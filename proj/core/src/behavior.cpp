#include "feedloop/behavior.hpp"

#include <cmath>
#include <numeric>

#include "feedloop/error.hpp"

namespace feedloop {

std::optional<BehaviorKind> parse_behavior(std::string_view s) {
  if (s == "lzy" || s == "B-LZY") return BehaviorKind::kLazy;
  if (s == "rnd" || s == "B-RND") return BehaviorKind::kRandom;
  if (s == "psb" || s == "B-PSB") return BehaviorKind::kPositionBiased;
  if (s == "mix" || s == "B-MIX") return BehaviorKind::kMixed;
  return std::nullopt;
}

std::string_view behavior_name(BehaviorKind b) {
  switch (b) {
    case BehaviorKind::kLazy: return "lzy";
    case BehaviorKind::kRandom: return "rnd";
    case BehaviorKind::kPositionBiased: return "psb";
    case BehaviorKind::kMixed: return "mix";
  }
  return "?";
}

std::vector<double> psb_probs(std::size_t len, double log_base) {
  if (len == 0) throw Error("psb_probs: empty list");
  const double scale = log_base > 0.0 ? std::log(log_base) : 1.0;
  std::vector<double> p(len);
  for (std::size_t i = 1; i <= len; ++i) p[i - 1] = scale / std::log(static_cast<double>(i + 1));
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

std::vector<double> acceptance_probs(BehaviorKind kind, std::size_t len) {
  if (len == 0) return {};
  switch (kind) {
    case BehaviorKind::kLazy: {
      std::vector<double> p(len, 0.0);
      p[0] = 1.0;
      return p;
    }
    case BehaviorKind::kRandom: return std::vector<double>(len, 1.0 / static_cast<double>(len));
    case BehaviorKind::kPositionBiased: return psb_probs(len);
    case BehaviorKind::kMixed: {
      std::vector<double> p(len, 0.0);
      for (auto k : {BehaviorKind::kLazy, BehaviorKind::kRandom, BehaviorKind::kPositionBiased}) {
        const auto c = acceptance_probs(k, len);
        for (std::size_t i = 0; i < len; ++i) p[i] += c[i] / 3.0;
      }
      return p;
    }
  }
  return {};
}

namespace {

std::size_t categorical(const std::vector<double>& p, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i + 1;
  }
  return p.size();
}

}  // namespace

std::optional<std::size_t> select(BehaviorKind kind, std::size_t len, Rng& rng) {
  if (len == 0) return std::nullopt;
  switch (kind) {
    case BehaviorKind::kLazy: return 1;
    case BehaviorKind::kRandom: return 1 + uniform_below(rng, len);
    case BehaviorKind::kPositionBiased: return categorical(psb_probs(len), rng);
    case BehaviorKind::kMixed: {
      constexpr BehaviorKind parts[] = {BehaviorKind::kLazy, BehaviorKind::kRandom,
                                        BehaviorKind::kPositionBiased};
      return select(parts[uniform_below(rng, 3)], len, rng);
    }
  }
  return std::nullopt;
}

}  // namespace feedloop
