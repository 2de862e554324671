#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "feedloop/graph.hpp"
#include "feedloop/rng.hpp"

namespace feedloop::test {

inline LabeledDigraph make_graph(std::vector<Group> labels,
                                 std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  LabeledDigraph g(std::move(labels));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Erdos-Renyi style digraph with random labels; deterministic in seed.
inline LabeledDigraph random_graph(std::size_t n, double p, double minority_p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Group> labels(n);
  for (auto& l : labels) l = uniform01(rng) < minority_p ? Group::kMinority : Group::kMajority;
  LabeledDigraph g(std::move(labels));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && uniform01(rng) < p) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace feedloop::test
