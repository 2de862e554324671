#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "feedloop/commands.hpp"
#include "feedloop/error.hpp"
#include "feedloop/metrics_io.hpp"

namespace feedloop {

namespace fs = std::filesystem;

std::vector<SweepCell> expand_grid(const ExperimentSpec& spec) {
  const auto& g = spec.sweep;
  auto or_base = [](const auto& axis, auto base) {
    using T = std::decay_t<decltype(base)>;
    return axis.empty() ? std::vector<T>{base} : std::vector<T>(axis.begin(), axis.end());
  };
  std::vector<std::optional<double>> emms, sms;
  for (double x : g.e_mm) emms.emplace_back(x);
  for (double x : g.s_m) sms.emplace_back(x);
  if (emms.empty()) emms.emplace_back();
  if (sms.empty()) sms.emplace_back();
  const auto recs = or_base(g.recommenders, spec.sim.recommender);
  const auto behs = or_base(g.behaviors, spec.sim.behavior);
  const auto alphas = or_base(g.alphas, spec.sim.alpha);
  const auto ks = or_base(g.ks, spec.sim.k);

  std::vector<SweepCell> cells;
  for (auto emm : emms)
    for (auto sm : sms)
      for (auto rec : recs)
        for (auto beh : behs)
          for (double a : alphas)
            for (std::size_t k : ks) {
              SweepCell c{"", emm, sm, rec, beh, a, k};
              std::ostringstream name;
              if (emm) name << "emm" << format_double(*emm) << "_";
              if (sm) name << "sm" << format_double(*sm) << "_";
              name << recommender_name(rec) << "_" << behavior_name(beh) << "_alpha" << format_double(a) << "_k"
                   << k;
              c.name = name.str();
              cells.push_back(std::move(c));
            }
  return cells;
}

ExperimentSpec cell_spec(const ExperimentSpec& base, const SweepCell& cell) {
  ExperimentSpec s = base;
  s.sim.recommender = cell.recommender;
  s.sim.behavior = cell.behavior;
  s.sim.alpha = cell.alpha;
  s.sim.k = cell.k;
  s.out = base.out / cell.name;
  if (cell.e_mm || cell.s_m) {
    if (s.network.from_files()) throw ConfigError("e_mm/s_m sweep axes need a generated network");
    // Start from the base targets (the preset row when one is set).
    NetConfig t = s.network.resolve(0);
    if (cell.s_m) t.s_m = *cell.s_m;
    if (cell.e_mm) {
      t.h_m = *cell.e_mm - t.s_m;
      t.h_M = 0.0;
    }
    s.network.preset.reset();
    s.network.targets = t;
  }
  return s;
}

SweepOutcome cmd_sweep(const ExperimentSpec& spec, std::ostream& log) {
  const auto cells = expand_grid(spec);
  SweepOutcome out;
  out.cells.resize(cells.size());
  fs::create_directories(spec.out);

  std::atomic<std::size_t> next{0};
  std::mutex log_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      auto& r = out.cells[i];
      r.cell = cells[i];
      std::ostringstream cell_log;
      try {
        auto s = cell_spec(spec, cells[i]);
        s.network.targets.validate();
        r.replicates = cmd_simulate(s, cell_log);
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      std::lock_guard lock(log_mu);
      log << "[" << (i + 1) << "/" << cells.size() << "] " << cells[i].name << ": "
          << (r.ok ? "ok" : "FAILED: " + r.error) << "\n";
    }
  };
  const auto jobs = std::max<std::size_t>(1, std::min(spec.jobs, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out.summary = spec.out / "summary.csv";
  std::ofstream os(out.summary);
  if (!os) throw IoError("cannot open " + out.summary.string());
  os << "# schema: feedloop-sweep-summary/1\n";
  os << "cell,e_mm,s_m,recommender,behavior,alpha,k,t,seeds,ratio_mean,ratio_min,ratio_max,e_min_mean\n";
  for (const auto& c : out.cells) {
    if (!c.ok) {
      ++out.failures;
      continue;
    }
    for (std::size_t t : spec.sweep.track) {
      std::vector<double> ratios, exposures;
      for (const auto& rep : c.replicates) {
        try {
          ratios.push_back(exposure_ratio(rep.result.records, t));
          exposures.push_back(rep.result.records.at(t - 1).exposure->e_min);
        } catch (const std::exception&) {
          // Replicate without a defined ratio at t (e.g. t > T).
        }
      }
      os << c.cell.name << ',' << (c.cell.e_mm ? format_double(*c.cell.e_mm) : "") << ','
         << (c.cell.s_m ? format_double(*c.cell.s_m) : "") << ',' << recommender_name(c.cell.recommender) << ','
         << behavior_name(c.cell.behavior) << ',' << format_double(c.cell.alpha) << ',' << c.cell.k << ',' << t
         << ',' << ratios.size() << ',';
      if (ratios.empty()) {
        os << ",,,\n";
        continue;
      }
      double sum = 0.0, esum = 0.0;
      for (double x : ratios) sum += x;
      for (double x : exposures) esum += x;
      os << format_double(sum / static_cast<double>(ratios.size())) << ','
         << format_double(*std::min_element(ratios.begin(), ratios.end())) << ','
         << format_double(*std::max_element(ratios.begin(), ratios.end())) << ','
         << format_double(esum / static_cast<double>(exposures.size())) << '\n';
    }
  }
  for (const auto& c : out.cells) {
    if (!c.ok) os << "# omitted " << c.cell.name << ": " << c.error << "\n";
  }
  return out;
}

}  // namespace feedloop
