#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "feedloop/graph.hpp"
#include "feedloop/rng.hpp"

namespace feedloop {

// Target description for a generated network.
struct NetConfig {
  std::size_t n_nodes = 2000;
  std::uint64_t n_edges_target = 10000;  // seed graph aims for n_edges_target / n_nodes out-edges per node
  double s_m = 0.3;
  double h_m = 0.0;
  double h_M = 0.0;
  std::uint64_t rng_seed = 0;
  double tolerance = 0.02;
  double reciprocity = 0.5;  // follow-back probability in the seed graph

  double avg_out_degree() const { return static_cast<double>(n_edges_target) / static_cast<double>(n_nodes); }
  // Throws NetgenError when a target lies outside its admissible interval.
  void validate() const;
};

enum class Preset { G0, G1, G2, G3, G4 };

std::optional<Preset> parse_preset(std::string_view name);
std::string_view preset_name(Preset p);

// The (s_m, h_m, h_M) row for a preset; majority neutral except G4.
NetConfig preset_config(Preset p, std::size_t n, double avg_out_degree, std::uint64_t rng_seed);

// Directed preferential attachment: node t links to earlier nodes chosen with
// probability proportional to in-degree + 1, and each such edge is followed
// back with probability `reciprocity`. The per-node draw is scaled so that the
// mean out-degree stays near avg_out_degree. Labels are independent
// Bernoulli(s_m) draws, so the result is homophily-neutral in expectation.
LabeledDigraph seed_graph(std::size_t n, double avg_out_degree, double s_m, std::uint64_t rng_seed,
                          double reciprocity = 0.5);

struct ShareChange {
  std::size_t target_minority = 0;
  std::size_t flipped = 0;
};

// Flip labels of uniformly sampled nodes until exactly round(N * s_target)
// nodes are minority. Edges are untouched.
ShareChange set_minority_share(LabeledDigraph& g, double s_target, Rng& rng);

struct RewireReport {
  Group group = Group::kMinority;
  double initial = 0.0;
  double target = 0.0;
  double achieved = 0.0;
  std::uint64_t planned = 0;      // round(|E_i.| * |target - initial|)
  std::uint64_t rewired = 0;      // includes corrective rewires
  std::uint64_t corrective = 0;
};

// Rewire edges sourced in `group` until its homophily reaches h_target.
// Raising homophily moves cross-group edges inside the group; lowering it
// moves within-group edges out. New targets are drawn among valid nodes of the
// destination group with probability proportional to in-degree + 1. Throws NetgenError (with the achieved value)
// if the target cannot be met within `tolerance`.
RewireReport set_homophily(LabeledDigraph& g, Group group, double h_target, Rng& rng,
                           double tolerance = 0.02);

struct NetReport {
  double s_m = 0.0;
  double h_m = 0.0;
  double h_M = 0.0;
  std::uint64_t seed_edges = 0;
  ShareChange share;
  RewireReport minority;
  RewireReport majority;
};

struct GeneratedNetwork {
  LabeledDigraph graph;
  NetReport report;
};

// seed_graph -> set_minority_share -> set_homophily(minority) ->
// set_homophily(majority), all from one stream seeded by cfg.rng_seed.
GeneratedNetwork generate_network(const NetConfig& cfg);

GeneratedNetwork build_preset(Preset p, std::size_t n, double avg_out_degree, std::uint64_t rng_seed);

}  // namespace feedloop
