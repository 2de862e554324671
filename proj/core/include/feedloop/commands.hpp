#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "feedloop/config.hpp"
#include "feedloop/engine.hpp"
#include "feedloop/netgen.hpp"

namespace feedloop {

// Exit codes shared by the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitRuntime = 2,
  kExitPartialSweep = 3,
};

struct GenerateResult {
  NetConfig config;
  NetReport report;
  std::filesystem::path edges;
  std::filesystem::path labels;
  std::filesystem::path provenance;
};

// Builds the network described by spec.network for spec.seed and writes
// edges.tsv, labels.tsv and provenance.json into spec.out.
GenerateResult cmd_generate(const ExperimentSpec& spec, std::ostream& log);

struct ReplicateResult {
  std::uint64_t seed = 0;
  SimResult result;
};

// Initial network for one replicate: loaded from files or generated with the
// replicate seed.
LabeledDigraph initial_network(const ExperimentSpec& spec, std::uint64_t seed);

// Runs every replicate seed. Writes <out>/seed_<s>/metrics.csv (plus
// recs.jsonl, snapshots and run.json as requested) and <out>/metrics_long.csv.
std::vector<ReplicateResult> cmd_simulate(const ExperimentSpec& spec, std::ostream& log);

struct SweepCell {
  std::string name;
  std::optional<double> e_mm;
  std::optional<double> s_m;
  RecommenderKind recommender = RecommenderKind::kSls;
  BehaviorKind behavior = BehaviorKind::kPositionBiased;
  double alpha = 0.2;
  std::size_t k = 3;
};

struct SweepCellResult {
  SweepCell cell;
  bool ok = false;
  std::string error;
  std::vector<ReplicateResult> replicates;
};

// Cross product of the grid axes, in a fixed order.
std::vector<SweepCell> expand_grid(const ExperimentSpec& spec);

// The experiment for a single cell (network targets and simulation knobs replaced).
ExperimentSpec cell_spec(const ExperimentSpec& base, const SweepCell& cell);

struct SweepOutcome {
  std::vector<SweepCellResult> cells;
  std::size_t failures = 0;
  std::filesystem::path summary;
};

// One subdirectory per cell plus <out>/summary.csv with the seed-mean,
// min and max of E_t/E_1 at every tracked t.
SweepOutcome cmd_sweep(const ExperimentSpec& spec, std::ostream& log);

struct ReportOutcome {
  std::size_t runs = 0;
  std::size_t iterations = 0;
  std::vector<std::filesystem::path> written;
};

// Reads metrics CSVs (files, or directories produced by simulate) and writes
// exposure_ratio.csv, gini_trend.csv and percentile_long.csv into `out`.
ReportOutcome cmd_report(const std::vector<std::filesystem::path>& inputs, const std::filesystem::path& out,
                         std::ostream& log);

}  // namespace feedloop
