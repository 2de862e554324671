// feedloop: simulate the feedback loop between people recommenders and users.
//
//   feedloop generate --preset G1 --n 2000 --seed 7 --out net/
//   feedloop simulate --config exp.cfg --recommender als --T 20 --out runs/
//   feedloop sweep    --config grid.cfg --out sweep/
//   feedloop report   runs/ --out tables/

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feedloop/commands.hpp"
#include "feedloop/config.hpp"
#include "feedloop/error.hpp"

namespace {

using feedloop::Overrides;

// Flags that map one-to-one onto config keys. Values given on the command
// line are applied after the config file.
struct FlagMap {
  std::vector<std::pair<std::string, std::string>> flags;  // (flag, key)
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    flags.emplace_back(flag, key);
    app->add_option("--" + flag, values[flag], help);
  }

  Overrides overrides(CLI::App* app) const {
    Overrides r;
    for (const auto& [flag, key] : flags) {
      if (app->count("--" + flag) > 0) r.emplace_back(key, values.at(flag));
    }
    return r;
  }
};

struct Common {
  std::string config;
  std::vector<std::string> set;
  FlagMap map;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "flat key = value config file");
  app->add_option("--set", c.set, "override any config key: --set als.d=32 (repeatable)");
  c.map.add(app, "seed", "seed", "base seed");
  c.map.add(app, "out", "out", "output directory");
  c.map.add(app, "preset", "network.preset", "network preset G0..G4 or none");
  c.map.add(app, "n", "network.n", "number of nodes");
  c.map.add(app, "avg-out-degree", "network.avg_out_degree", "seed graph average out-degree");
  c.map.add(app, "s-m", "network.s_m", "minority share (with --preset none)");
  c.map.add(app, "h-m", "network.h_m", "minority homophily (with --preset none)");
  c.map.add(app, "h-M", "network.h_M", "majority homophily (with --preset none)");
  c.map.add(app, "tolerance", "network.tolerance", "homophily tolerance");
  c.map.add(app, "reciprocity", "network.reciprocity", "seed-graph follow-back probability");
}

void add_sim(CLI::App* app, Common& c) {
  c.map.add(app, "T", "T", "iterations");
  c.map.add(app, "alpha", "alpha", "fraction of users sampled per iteration");
  c.map.add(app, "k", "k", "recommendations per user");
  c.map.add(app, "recommender", "recommender", "ada | sls | als | rnd");
  c.map.add(app, "behavior", "behavior", "lzy | rnd | psb | mix");
  c.map.add(app, "seeds", "seeds", "comma-separated replicate seeds");
  c.map.add(app, "replicates", "replicates", "number of replicate seeds starting at --seed");
  c.map.add(app, "edges", "network.edges", "edge list file");
  c.map.add(app, "labels", "network.labels", "label file");
  c.map.add(app, "emit-snapshots", "emit.snapshots", "comma-separated iterations to snapshot");
  c.map.add(app, "jobs", "jobs", "parallel sweep workers");
}

feedloop::ExperimentSpec load(CLI::App* app, const Common& c) {
  Overrides ov = c.map.overrides(app);
  for (const auto& kv : c.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw feedloop::ConfigError("--set expects key=value, got '" + kv + "'");
    ov.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.config.empty()) return feedloop::default_spec(ov);
  return feedloop::parse_config(std::filesystem::path(c.config), ov);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feedloop: people-recommender feedback-loop simulator"};
  app.require_subcommand(1);

  Common gen_opts, sim_opts, sweep_opts;
  bool emit_recs = false;

  auto* gen = app.add_subcommand("generate", "build a network with target minority share and homophily");
  add_common(gen, gen_opts);

  auto* sim = app.add_subcommand("simulate", "run the recommendation feedback loop");
  add_common(sim, sim_opts);
  add_sim(sim, sim_opts);
  sim->add_flag("--emit-recs", emit_recs, "write the per-user recommendation log (recs.jsonl)");

  auto* sweep = app.add_subcommand("sweep", "run a grid of configurations");
  add_common(sweep, sweep_opts);
  add_sim(sweep, sweep_opts);
  sweep_opts.map.add(sweep, "e-mm", "sweep.e_mm", "grid axis: minority within-group edge fractions");
  sweep_opts.map.add(sweep, "s-m-axis", "sweep.s_m", "grid axis: minority shares");
  sweep_opts.map.add(sweep, "recommenders", "sweep.recommenders", "grid axis: recommenders");
  sweep_opts.map.add(sweep, "behaviors", "sweep.behaviors", "grid axis: behavior models");
  sweep_opts.map.add(sweep, "alpha-axis", "sweep.alpha", "grid axis: alpha values");
  sweep_opts.map.add(sweep, "k-axis", "sweep.k", "grid axis: list lengths");
  sweep_opts.map.add(sweep, "track", "sweep.track", "iterations summarised as E_t/E_1");

  std::vector<std::string> report_inputs;
  std::string report_out = "report";
  auto* report = app.add_subcommand("report", "derive exposure-ratio, Gini and percentile tables");
  report->add_option("inputs", report_inputs, "metrics CSVs or simulate output directories")->required();
  report->add_option("--out", report_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? feedloop::kExitOk : feedloop::kExitUsage;
  }

  try {
    if (*gen) {
      feedloop::cmd_generate(load(gen, gen_opts), std::cout);
    } else if (*sim) {
      auto spec = load(sim, sim_opts);
      if (emit_recs) spec.emit.recs = true;
      feedloop::cmd_simulate(spec, std::cout);
    } else if (*sweep) {
      auto out = feedloop::cmd_sweep(load(sweep, sweep_opts), std::cout);
      std::cout << "summary: " << out.summary.string() << "\n";
      if (out.failures > 0) {
        std::cerr << out.failures << " of " << out.cells.size() << " cells failed\n";
        return feedloop::kExitPartialSweep;
      }
    } else if (*report) {
      std::vector<std::filesystem::path> in(report_inputs.begin(), report_inputs.end());
      feedloop::cmd_report(in, report_out, std::cout);
    }
  } catch (const feedloop::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return feedloop::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return feedloop::kExitRuntime;
  }
  return feedloop::kExitOk;
}
