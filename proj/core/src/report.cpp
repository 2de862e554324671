#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

#include "feedloop/commands.hpp"
#include "feedloop/error.hpp"
#include "feedloop/metrics_io.hpp"

namespace feedloop {

namespace fs = std::filesystem;

namespace {

// One run's metric rows keyed by iteration.
struct Run {
  std::uint64_t seed = 0;
  std::map<std::size_t, std::map<std::string, std::optional<double>>> by_t;
};

void add_table(const CsvTable& t, std::uint64_t fallback_seed, std::vector<Run>& runs) {
  const bool has_seed = t.has_column("seed");
  const auto t_col = t.column("t");
  std::map<std::uint64_t, std::size_t> index;
  for (const auto& row : t.rows) {
    const auto seed = has_seed && row[t.column("seed")] ? static_cast<std::uint64_t>(*row[t.column("seed")])
                                                        : fallback_seed;
    if (!row[t_col]) throw IoError("metrics row without t");
    auto [it, fresh] = index.try_emplace(seed, runs.size());
    if (fresh) runs.push_back({seed, {}});
    auto& cols = runs[it->second].by_t[static_cast<std::size_t>(*row[t_col])];
    for (std::size_t c = 0; c < t.columns.size(); ++c) cols[t.columns[c]] = row[c];
  }
}

struct Stats {
  std::size_t n = 0;
  double mean = 0.0, lo = 0.0, hi = 0.0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  s.n = v.size();
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  s.lo = *std::min_element(v.begin(), v.end());
  s.hi = *std::max_element(v.begin(), v.end());
  return s;
}

void put(std::ostream& os, const Stats& s) {
  if (s.n == 0) {
    os << ",,";
    return;
  }
  os << format_double(s.mean) << ',' << format_double(s.lo) << ',' << format_double(s.hi);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot open " + p.string() + " for writing");
  return os;
}

}  // namespace

ReportOutcome cmd_report(const std::vector<fs::path>& inputs, const fs::path& out, std::ostream& log) {
  if (inputs.empty()) throw ConfigError("report needs at least one metrics input");
  std::vector<Run> runs;
  std::uint64_t fallback = 0;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      if (fs::exists(in / "metrics_long.csv")) {
        add_table(read_csv(in / "metrics_long.csv"), fallback++, runs);
        continue;
      }
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_directory() && fs::exists(e.path() / "metrics.csv")) files.push_back(e.path() / "metrics.csv");
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) throw IoError("no metrics found under " + in.string());
      for (const auto& f : files) add_table(read_csv(f), fallback++, runs);
    } else {
      add_table(read_csv(in), fallback++, runs);
    }
  }

  std::size_t max_t = 0;
  for (const auto& r : runs) {
    auto it = r.by_t.find(1);
    if (it == r.by_t.end() || !it->second.at("e_min") || *it->second.at("e_min") == 0.0) {
      throw Error("report: run with seed " + std::to_string(r.seed) + " has no non-zero E_1 baseline");
    }
    max_t = std::max(max_t, r.by_t.rbegin()->first);
  }

  auto value = [](const Run& r, std::size_t t, const std::string& col) -> std::optional<double> {
    auto it = r.by_t.find(t);
    if (it == r.by_t.end()) return std::nullopt;
    auto c = it->second.find(col);
    return c == it->second.end() ? std::nullopt : c->second;
  };

  fs::create_directories(out);
  ReportOutcome res;
  res.runs = runs.size();
  res.iterations = max_t;

  {
    const auto p = out / "exposure_ratio.csv";
    auto os = open_out(p);
    os << "# schema: feedloop-exposure-ratio/1\n";
    os << "t,runs,ratio_mean,ratio_min,ratio_max,e_min_mean,e_min_min,e_min_max\n";
    for (std::size_t t = 2; t <= max_t; ++t) {
      std::vector<double> ratios, e;
      for (const auto& r : runs) {
        const auto base = value(r, 1, "e_min");
        const auto now = value(r, t, "e_min");
        if (now) {
          ratios.push_back(*now / *base);
          e.push_back(*now);
        }
      }
      os << t << ',' << ratios.size() << ',';
      put(os, stats(ratios));
      os << ',';
      put(os, stats(e));
      os << '\n';
    }
    res.written.push_back(p);
  }
  {
    const auto p = out / "gini_trend.csv";
    auto os = open_out(p);
    os << "# schema: feedloop-gini-trend/1\n";
    os << "t,runs,gini_min_mean,gini_min_min,gini_min_max,gini_maj_mean,gini_maj_min,gini_maj_max\n";
    for (std::size_t t = 1; t <= max_t; ++t) {
      std::vector<double> gm, gM;
      for (const auto& r : runs) {
        if (auto v = value(r, t, "gini_min")) gm.push_back(*v);
        if (auto v = value(r, t, "gini_maj")) gM.push_back(*v);
      }
      os << t << ',' << gm.size() << ',';
      put(os, stats(gm));
      os << ',';
      put(os, stats(gM));
      os << '\n';
    }
    res.written.push_back(p);
  }
  {
    const auto p = out / "percentile_long.csv";
    auto os = open_out(p);
    os << "# schema: feedloop-percentile-long/1\n";
    os << "seed,t,group,threshold,share\n";
    for (const auto& r : runs) {
      for (const auto& [t, cols] : r.by_t) {
        // Column names sort as strings; order rows by group, then threshold.
        for (const std::string prefix : {"pexp_min_", "pexp_maj_"}) {
          std::vector<std::pair<double, double>> rows;
          for (const auto& [name, v] : cols) {
            if (name.rfind(prefix, 0) != 0 || !v) continue;
            rows.emplace_back(std::stod(name.substr(prefix.size())) / 100.0, *v);
          }
          std::sort(rows.begin(), rows.end());
          for (const auto& [q, share] : rows) {
            os << r.seed << ',' << t << ',' << (prefix == "pexp_min_" ? "minority" : "majority") << ','
               << format_double(q) << ',' << format_double(share) << '\n';
          }
        }
      }
    }
    res.written.push_back(p);
  }
  log << "report: " << runs.size() << " run(s), T=" << max_t << ", wrote " << res.written.size() << " tables to "
      << out.string() << "\n";
  return res;
}

}  // namespace feedloop
