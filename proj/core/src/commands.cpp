#include "feedloop/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "feedloop/error.hpp"
#include "feedloop/graph_io.hpp"
#include "feedloop/metrics_io.hpp"

namespace feedloop {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot open " + p.string() + " for writing");
  return os;
}

nlohmann::json to_json(const NetConfig& c) {
  return {{"n_nodes", c.n_nodes}, {"n_edges_target", c.n_edges_target}, {"s_m", c.s_m},
          {"h_m", c.h_m},         {"h_M", c.h_M},                       {"rng_seed", c.rng_seed},
          {"tolerance", c.tolerance},
          {"reciprocity", c.reciprocity}};
}

nlohmann::json to_json(const RewireReport& r) {
  return {{"initial", r.initial}, {"target", r.target},   {"achieved", r.achieved},
          {"planned", r.planned}, {"rewired", r.rewired}, {"corrective", r.corrective}};
}

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json to_json(const GraphSummary& s) {
  return {{"edges", s.edges}, {"s_m", s.s_m}, {"gini_min", s.gini_min}, {"gini_maj", s.gini_maj},
          {"h_m", opt(s.h_m)}, {"h_M", opt(s.h_M)}, {"e_mm", opt(s.e_mm)}};
}

void write_snapshot(const fs::path& dir, std::size_t t, const LabeledDigraph& g) {
  write_edges(dir / ("snapshot_t" + std::to_string(t) + "_edges.tsv"), g);
  write_labels(dir / ("snapshot_t" + std::to_string(t) + "_labels.tsv"), g);
}

}  // namespace

GenerateResult cmd_generate(const ExperimentSpec& spec, std::ostream& log) {
  if (spec.network.from_files()) throw ConfigError("generate needs a preset or explicit network targets");
  GenerateResult r;
  r.config = spec.network.resolve(spec.seed);
  auto net = generate_network(r.config);
  r.report = net.report;
  fs::create_directories(spec.out);
  r.edges = spec.out / "edges.tsv";
  r.labels = spec.out / "labels.tsv";
  r.provenance = spec.out / "provenance.json";
  write_edges(r.edges, net.graph);
  write_labels(r.labels, net.graph);

  nlohmann::json j;
  j["generator"] = "feedloop";
  j["preset"] = spec.network.preset ? nlohmann::json(std::string(preset_name(*spec.network.preset)))
                                    : nlohmann::json(nullptr);
  j["config"] = to_json(r.config);
  j["seed"] = spec.seed;
  j["nodes"] = net.graph.num_nodes();
  j["edges"] = net.graph.num_edges();
  j["seed_graph_edges"] = r.report.seed_edges;
  j["labels_flipped"] = r.report.share.flipped;
  j["achieved"] = {{"s_m", r.report.s_m}, {"h_m", r.report.h_m}, {"h_M", r.report.h_M}};
  j["rewiring"] = {{"minority", to_json(r.report.minority)}, {"majority", to_json(r.report.majority)}};
  open_out(r.provenance) << j.dump(2) << '\n';

  log << "generated " << net.graph.num_nodes() << " nodes, " << net.graph.num_edges()
      << " edges: s_m=" << format_double(r.report.s_m) << " h_m=" << format_double(r.report.h_m)
      << " h_M=" << format_double(r.report.h_M) << "\n";
  return r;
}

LabeledDigraph initial_network(const ExperimentSpec& spec, std::uint64_t seed) {
  if (spec.network.from_files()) return read_graph(*spec.network.edges, *spec.network.labels).graph;
  return generate_network(spec.network.resolve(seed)).graph;
}

std::vector<ReplicateResult> cmd_simulate(const ExperimentSpec& spec, std::ostream& log) {
  spec.sim.validate();
  fs::create_directories(spec.out);

  std::optional<LoadedGraph> loaded;
  if (spec.network.from_files()) {
    loaded = read_graph(*spec.network.edges, *spec.network.labels);
    if (!loaded->identity_mapping()) write_node_map(spec.out / "node_map.tsv", *loaded);
  }

  std::ofstream long_csv;
  if (spec.emit.metrics) {
    long_csv = open_out(spec.out / "metrics_long.csv");
    write_metrics_header(long_csv, spec.sim.thresholds, true);
  }

  std::vector<ReplicateResult> out;
  for (auto seed : spec.seed_list()) {
    const fs::path dir = spec.out / ("seed_" + std::to_string(seed));
    fs::create_directories(dir);
    SimConfig cfg = spec.sim;
    cfg.rng_seed = seed;
    LabeledDigraph g = loaded ? loaded->graph : generate_network(spec.network.resolve(seed)).graph;

    const auto& snaps = spec.emit.snapshots;
    auto wants = [&](std::size_t t) { return std::find(snaps.begin(), snaps.end(), t) != snaps.end(); };
    if (wants(0)) write_snapshot(dir, 0, g);

    std::ofstream recs;
    if (spec.emit.recs) recs = open_out(dir / "recs.jsonl");
    auto observer = [&](const IterationRecord& r, const RecommendationBatch& b, const LabeledDigraph& now) {
      if (spec.emit.recs) write_rec_log(recs, r.t, b);
      if (wants(r.t)) write_snapshot(dir, r.t, now);
    };
    auto res = run_simulation(cfg, std::move(g), observer);

    if (spec.emit.metrics) {
      auto os = open_out(dir / "metrics.csv");
      write_metrics_csv(os, res.records, cfg.thresholds);
      for (const auto& r : res.records) write_metrics_row(long_csv, r, cfg.thresholds, seed);
    }
    nlohmann::json run;
    run["seed"] = seed;
    run["config"] = dump_config(spec);
    run["initial"] = to_json(res.initial);
    run["recs_nominal_per_iteration"] = res.records.empty() ? 0 : res.records.front().recs_nominal;
    run["final_edges"] = res.final_graph.num_edges();
    open_out(dir / "run.json") << run.dump(2) << '\n';

    const auto& last = res.records.back();
    log << "seed " << seed << ": T=" << res.records.size() << " final E_m="
        << (last.exposure ? format_double(last.exposure->e_min) : std::string("n/a")) << " edges "
        << res.initial.edges << " -> " << res.final_graph.num_edges() << "\n";
    out.push_back({seed, std::move(res)});
  }
  return out;
}

}  // namespace feedloop
