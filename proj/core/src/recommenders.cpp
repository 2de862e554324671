#include "feedloop/recommenders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "feedloop/error.hpp"

namespace feedloop {

std::optional<RecommenderKind> parse_recommender(std::string_view s) {
  if (s == "ada" || s == "ADA") return RecommenderKind::kAda;
  if (s == "sls" || s == "SLS") return RecommenderKind::kSls;
  if (s == "als" || s == "ALS") return RecommenderKind::kAls;
  if (s == "rnd" || s == "RND") return RecommenderKind::kRnd;
  return std::nullopt;
}

std::string_view recommender_name(RecommenderKind k) {
  switch (k) {
    case RecommenderKind::kAda: return "ada";
    case RecommenderKind::kSls: return "sls";
    case RecommenderKind::kAls: return "als";
    case RecommenderKind::kRnd: return "rnd";
  }
  return "?";
}

std::vector<NodeId> top_k_by_score(std::span<const NodeId> candidates, std::span<const double> scores,
                                   std::size_t k) {
  std::vector<std::size_t> idx(candidates.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto keep = std::min(k, idx.size());
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a] < candidates[b];
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(), better);
  std::vector<NodeId> r;
  r.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) r.push_back(candidates[idx[i]]);
  return r;
}

namespace {

double ada_weight(const LabeledDigraph& g, NodeId z) {
  return 1.0 / std::log(static_cast<double>(g.out_degree(z) + g.in_degree(z)));
}

}  // namespace

double ada_score(const LabeledDigraph& g, NodeId u, NodeId v) {
  double s = 0.0;
  for (NodeId z : g.out(u)) {
    if (g.has_edge(z, v)) s += ada_weight(g, z);
  }
  return s;
}

std::vector<double> ada_scores(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates) {
  std::vector<double> s(candidates.size(), 0.0);
  for (NodeId z : g.out(u)) {
    const double w = ada_weight(g, z);
    for (NodeId v : g.out(z)) {
      auto it = std::lower_bound(candidates.begin(), candidates.end(), v);
      if (it != candidates.end() && *it == v) s[static_cast<std::size_t>(it - candidates.begin())] += w;
    }
  }
  return s;
}

namespace {

class AdaRecommender final : public Recommender {
 public:
  RecommenderKind kind() const override { return RecommenderKind::kAda; }
  void prepare(const LabeledDigraph&, std::uint64_t) override {}
  RankedList recommend(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates, std::size_t k,
                       Rng&) const override {
    const auto scores = ada_scores(g, u, candidates);
    return {u, top_k_by_score(candidates, scores, k)};
  }
};

class SalsaRecommender final : public Recommender {
 public:
  explicit SalsaRecommender(SalsaParams p) : p_(p) {}
  RecommenderKind kind() const override { return RecommenderKind::kSls; }
  void prepare(const LabeledDigraph&, std::uint64_t) override {}
  RankedList recommend(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates, std::size_t k,
                       Rng&) const override {
    return salsa_rank(g, u, candidates, k, p_);
  }

 private:
  SalsaParams p_;
};

class AlsRecommender final : public Recommender {
 public:
  explicit AlsRecommender(AlsParams p) : p_(p) {}
  RecommenderKind kind() const override { return RecommenderKind::kAls; }
  void prepare(const LabeledDigraph& g, std::uint64_t round_seed) override {
    model_ = als_train(g, p_, round_seed);
  }
  RankedList recommend(const LabeledDigraph&, NodeId u, std::span<const NodeId> candidates, std::size_t k,
                       Rng&) const override {
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (NodeId v : candidates) scores.push_back(als_score(model_, u, v));
    return {u, top_k_by_score(candidates, scores, k)};
  }

 private:
  AlsParams p_;
  AlsModel model_;
};

class RandomRecommender final : public Recommender {
 public:
  RecommenderKind kind() const override { return RecommenderKind::kRnd; }
  void prepare(const LabeledDigraph&, std::uint64_t) override {}
  RankedList recommend(const LabeledDigraph&, NodeId u, std::span<const NodeId> candidates, std::size_t k,
                       Rng& rng) const override {
    std::vector<NodeId> pool(candidates.begin(), candidates.end());
    const auto keep = std::min(k, pool.size());
    for (std::size_t i = 0; i < keep; ++i) {
      const auto j = i + uniform_below(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(keep);
    return {u, std::move(pool)};
  }
};

}  // namespace

std::unique_ptr<Recommender> make_recommender(RecommenderKind kind, const RecommenderParams& p) {
  switch (kind) {
    case RecommenderKind::kAda: return std::make_unique<AdaRecommender>();
    case RecommenderKind::kSls: return std::make_unique<SalsaRecommender>(p.sls);
    case RecommenderKind::kAls: return std::make_unique<AlsRecommender>(p.als);
    case RecommenderKind::kRnd: return std::make_unique<RandomRecommender>();
  }
  throw Error("unknown recommender kind");
}

}  // namespace feedloop
