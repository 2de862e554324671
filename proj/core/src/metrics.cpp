#include "feedloop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "feedloop/error.hpp"

namespace feedloop {

std::optional<ExposureReport> exposure(const RecommendationBatch& batch, std::span<const Group> labels) {
  ExposureReport r;
  for (const auto& rec : batch) {
    for (NodeId v : rec.targets) {
      if (labels[v] == Group::kMinority) {
        ++r.min_slots;
      } else {
        ++r.maj_slots;
      }
    }
  }
  r.recs_issued = r.min_slots + r.maj_slots;
  if (r.recs_issued == 0) return std::nullopt;
  r.e_min = static_cast<double>(r.min_slots) / static_cast<double>(r.recs_issued);
  r.e_maj = static_cast<double>(r.maj_slots) / static_cast<double>(r.recs_issued);
  return r;
}

double gini(std::span<const double> values) {
  if (values.empty()) throw Error("gini of an empty sample");
  std::vector<double> y(values.begin(), values.end());
  for (double v : y) {
    if (v < 0.0 || std::isnan(v)) throw Error("gini requires non-negative values");
  }
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += y[i];
    weighted += (n - static_cast<double>(i)) * y[i];  // (N + 1 - i) with 1-based i
  }
  if (total == 0.0) return 0.0;
  return (n + 1.0 - 2.0 * weighted / total) / n;
}

double gini_in_degree(const LabeledDigraph& g, Group group) {
  std::vector<double> deg;
  deg.reserve(g.group_size(group));
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (g.label(u) == group) deg.push_back(static_cast<double>(g.in_degree(u)));
  }
  if (deg.empty()) return 0.0;
  return gini(deg);
}

std::optional<PercentileBuckets> percentile_exposure(const RecommendationBatch& batch, const LabeledDigraph& g,
                                                     Group group, std::span<const double> thresholds) {
  auto nodes = g.members(group);
  if (nodes.empty()) return std::nullopt;
  std::vector<std::size_t> slots(g.num_nodes(), 0);
  std::size_t total = 0;
  for (const auto& rec : batch) {
    for (NodeId v : rec.targets) {
      if (g.label(v) == group) {
        ++slots[v];
        ++total;
      }
    }
  }
  if (total == 0) return std::nullopt;
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](NodeId a, NodeId b) { return g.in_degree(a) > g.in_degree(b); });

  PercentileBuckets r;
  r.thresholds.assign(thresholds.begin(), thresholds.end());
  std::vector<std::size_t> prefix(nodes.size() + 1, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) prefix[i + 1] = prefix[i] + slots[nodes[i]];
  for (double q : thresholds) {
    auto top = static_cast<std::size_t>(std::ceil(q * static_cast<double>(nodes.size()) - 1e-9));
    top = std::clamp<std::size_t>(top, 1, nodes.size());
    r.shares.push_back(static_cast<double>(prefix[top]) / static_cast<double>(total));
  }
  return r;
}

}  // namespace feedloop
