#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feedloop/engine.hpp"
#include "feedloop/netgen.hpp"

namespace feedloop {

// Where the initial network comes from. Files win over a preset; a preset
// wins over the explicit targets in `targets`.
struct NetworkSource {
  std::optional<Preset> preset = Preset::G1;
  NetConfig targets;  // n, edges, s_m, h_m, h_M, tolerance (rng_seed ignored)
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> labels;

  bool from_files() const { return edges.has_value(); }
  // Network targets for replicate `seed`.
  NetConfig resolve(std::uint64_t seed) const;
};

struct EmitFlags {
  bool metrics = true;
  bool recs = false;
  std::vector<std::size_t> snapshots;  // iterations whose graph is written
};

struct SweepGrid {
  std::vector<double> e_mm;  // empty: use the base network
  std::vector<double> s_m;
  std::vector<RecommenderKind> recommenders;  // empty: base recommender
  std::vector<BehaviorKind> behaviors;        // empty: base behavior
  std::vector<double> alphas;                 // empty: base alpha
  std::vector<std::size_t> ks;                // empty: base k
  std::vector<std::size_t> track{2, 10, 20};
};

struct ExperimentSpec {
  SimConfig sim;
  NetworkSource network;
  std::filesystem::path out = "out";
  std::uint64_t seed = 1;
  std::size_t replicates = 5;
  std::vector<std::uint64_t> seeds;  // explicit list overrides seed/replicates
  EmitFlags emit;
  SweepGrid sweep;
  std::size_t jobs = 1;

  std::vector<std::uint64_t> seed_list() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" text; '#' starts a comment line. Overrides are applied
// after the file, in order. Unknown keys, malformed lines and out-of-range
// values raise ConfigError naming the line (or flag) and key.
ExperimentSpec parse_config(std::istream& is, const Overrides& overrides = {});
ExperimentSpec parse_config(const std::filesystem::path& p, const Overrides& overrides = {});
ExperimentSpec default_spec(const Overrides& overrides = {});

// Every recognised key, for help output.
std::vector<std::string> config_keys();

// The resolved experiment written back as key = value lines.
std::string dump_config(const ExperimentSpec& spec);

}  // namespace feedloop
