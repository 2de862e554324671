#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "feedloop/batch.hpp"
#include "feedloop/graph.hpp"

namespace feedloop {

struct ExposureReport {
  double e_min = 0.0;
  double e_maj = 0.0;
  std::size_t recs_issued = 0;
  std::size_t min_slots = 0;
  std::size_t maj_slots = 0;
};

// Share of recommendation slots whose target is minority / majority. A node
// recommended to several users counts once per slot. nullopt if no slots.
std::optional<ExposureReport> exposure(const RecommendationBatch& batch, std::span<const Group> labels);

// Gini coefficient of non-negative values:
//   G = (1/N) (N + 1 - 2 sum_i (N + 1 - i) y_i / sum_i y_i), y ascending.
// All-zero input gives 0. Throws on negative values or empty input.
double gini(std::span<const double> values);

// Gini of in-degree over the nodes of one group.
double gini_in_degree(const LabeledDigraph& g, Group group);

inline const std::vector<double> kDefaultThresholds{0.01, 0.03, 0.05, 0.10, 0.20, 0.50, 1.00};

struct PercentileBuckets {
  std::vector<double> thresholds;
  std::vector<double> shares;  // cumulative share of the group's slots
};

// Group nodes ranked by in-degree descending (ties by NodeId); for each
// threshold q the share of the group's recommendation slots received by the
// top ceil(q * |V_g|) nodes. nullopt if the group received no slots.
std::optional<PercentileBuckets> percentile_exposure(const RecommendationBatch& batch, const LabeledDigraph& g,
                                                     Group group,
                                                     std::span<const double> thresholds = kDefaultThresholds);

}  // namespace feedloop
