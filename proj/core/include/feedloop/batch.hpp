#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "feedloop/graph.hpp"

namespace feedloop {

// Ordered top-k list for one user; best first.
struct RankedList {
  NodeId user = 0;
  std::vector<NodeId> targets;
};

// One user's list in a round plus the 1-based position they accepted.
struct Recommendation {
  NodeId user = 0;
  std::vector<NodeId> targets;
  std::optional<std::size_t> accepted;
};

using RecommendationBatch = std::vector<Recommendation>;

}  // namespace feedloop
