#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "feedloop/batch.hpp"
#include "feedloop/behavior.hpp"
#include "feedloop/graph.hpp"
#include "feedloop/metrics.hpp"
#include "feedloop/recommenders.hpp"
#include "feedloop/rng.hpp"

namespace feedloop {

struct SimConfig {
  std::size_t T = 20;
  double alpha = 0.2;
  std::size_t k = 3;
  RecommenderKind recommender = RecommenderKind::kSls;
  RecommenderParams params;
  BehaviorKind behavior = BehaviorKind::kPositionBiased;
  std::uint64_t rng_seed = 0;
  std::vector<double> thresholds = kDefaultThresholds;

  // Throws ConfigError.
  void validate() const;
};

// Per-user set of every target ever recommended to that user.
class ExclusionTable {
 public:
  explicit ExclusionTable(std::size_t n = 0) : sets_(n) {}

  std::span<const NodeId> of(NodeId u) const { return sets_[u]; }
  bool contains(NodeId u, NodeId v) const;
  void add(NodeId u, std::span<const NodeId> targets);
  std::size_t total() const noexcept { return total_; }

 private:
  std::vector<std::vector<NodeId>> sets_;  // each sorted
  std::size_t total_ = 0;
};

// State summary used for the t = 0 baseline.
struct GraphSummary {
  std::uint64_t edges = 0;
  double gini_min = 0.0;
  double gini_maj = 0.0;
  std::optional<double> h_m;
  std::optional<double> h_M;
  std::optional<double> e_mm;
  double s_m = 0.0;
};

GraphSummary summarize(const LabeledDigraph& g);

struct IterationRecord {
  std::size_t t = 0;
  std::size_t sampled_users = 0;
  std::size_t recs_issued = 0;
  std::size_t recs_nominal = 0;  // k * sampled_users
  std::optional<ExposureReport> exposure;
  std::size_t edges_added = 0;
  double cumulative_edge_growth = 0.0;  // (E_t - E_0) / E_0
  double gini_min = 0.0;
  double gini_maj = 0.0;
  std::optional<double> h_m;
  std::optional<double> h_M;
  std::optional<double> e_mm;
  std::optional<PercentileBuckets> pexp_min;
  std::optional<PercentileBuckets> pexp_maj;
};

// floor(alpha * N) distinct users, uniform without replacement, ascending.
std::vector<NodeId> sample_users(std::size_t n, double alpha, Rng& rng);

struct IterationResult {
  IterationRecord record;
  RecommendationBatch batch;
};

// One recommendation round followed by the batched graph update. Scoring
// reads the round-start snapshot; accepted edges are applied afterwards.
IterationResult run_iteration(LabeledDigraph& g, const SimConfig& cfg, Recommender& rec,
                              ExclusionTable& exclusions, std::size_t t, std::uint64_t initial_edges);

struct SimResult {
  GraphSummary initial;
  std::vector<IterationRecord> records;
  LabeledDigraph final_graph;
};

// Called after every round with the post-update graph.
using IterationObserver =
    std::function<void(const IterationRecord&, const RecommendationBatch&, const LabeledDigraph&)>;

SimResult run_simulation(const SimConfig& cfg, LabeledDigraph graph, const IterationObserver& observer = {});

// E_t / E_1 for the minority. Throws if either record is missing or E_1 = 0.
double exposure_ratio(std::span<const IterationRecord> records, std::size_t t);

}  // namespace feedloop
