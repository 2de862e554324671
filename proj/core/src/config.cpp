#include "feedloop/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string_view>

#include "feedloop/error.hpp"
#include "feedloop/metrics_io.hpp"

namespace feedloop {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Thrown by value parsers; rewrapped with the location.
struct BadValue {
  std::string why;
};

double to_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) throw BadValue{"expected a number"};
  return v;
}

std::uint64_t to_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw BadValue{"expected a non-negative integer"};
  }
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw BadValue{"expected true or false"};
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> r;
  while (!s.empty()) {
    const auto c = s.find(',');
    const auto tok = trim(s.substr(0, c));
    if (!tok.empty()) r.push_back(tok);
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  return r;
}

template <class F>
auto to_list(std::string_view s, F&& f) {
  std::vector<decltype(f(std::string_view{}))> r;
  for (auto tok : split_list(s)) r.push_back(f(tok));
  return r;
}

double positive(double v) {
  if (!(v > 0.0)) throw BadValue{"must be > 0"};
  return v;
}

double fraction01(double v) {
  if (!(v > 0.0 && v <= 1.0)) throw BadValue{"must lie in (0, 1]"};
  return v;
}

std::size_t at_least_one(std::uint64_t v) {
  if (v < 1) throw BadValue{"must be >= 1"};
  return static_cast<std::size_t>(v);
}

RecommenderKind to_recommender(std::string_view s) {
  if (auto r = parse_recommender(s)) return *r;
  throw BadValue{"unknown value '" + std::string(s) + "' (expected ada, sls, als or rnd)"};
}

BehaviorKind to_behavior(std::string_view s) {
  if (auto b = parse_behavior(s)) return *b;
  throw BadValue{"unknown value '" + std::string(s) + "' (expected lzy, rnd, psb or mix)"};
}

using Setter = std::function<void(ExperimentSpec&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"T", [](auto& e, auto v) { e.sim.T = at_least_one(to_uint(v)); }},
      {"alpha", [](auto& e, auto v) { e.sim.alpha = fraction01(to_double(v)); }},
      {"k", [](auto& e, auto v) { e.sim.k = at_least_one(to_uint(v)); }},
      {"recommender", [](auto& e, auto v) { e.sim.recommender = to_recommender(v); }},
      {"behavior", [](auto& e, auto v) { e.sim.behavior = to_behavior(v); }},
      {"seed", [](auto& e, auto v) { e.seed = to_uint(v); }},
      {"replicates", [](auto& e, auto v) { e.replicates = at_least_one(to_uint(v)); }},
      {"seeds",
       [](auto& e, auto v) {
         e.seeds = to_list(v, to_uint);
         if (e.seeds.empty()) throw BadValue{"at least one seed required"};
       }},
      {"out", [](auto& e, auto v) { e.out = std::string(v); }},
      {"jobs", [](auto& e, auto v) { e.jobs = at_least_one(to_uint(v)); }},
      {"als.d",
       [](auto& e, auto v) { e.sim.params.als.d = static_cast<int>(at_least_one(to_uint(v))); }},
      {"als.lambda", [](auto& e, auto v) { e.sim.params.als.lambda = positive(to_double(v)); }},
      {"als.conf_alpha",
       [](auto& e, auto v) {
         const double a = to_double(v);
         if (!(a >= 0.0)) throw BadValue{"must be >= 0"};
         e.sim.params.als.conf_alpha = a;
       }},
      {"als.sweeps",
       [](auto& e, auto v) { e.sim.params.als.sweeps = static_cast<int>(at_least_one(to_uint(v))); }},
      {"sls.max_iters",
       [](auto& e, auto v) { e.sim.params.sls.max_iters = static_cast<int>(at_least_one(to_uint(v))); }},
      {"sls.tol", [](auto& e, auto v) { e.sim.params.sls.tol = positive(to_double(v)); }},
      {"metrics.thresholds",
       [](auto& e, auto v) {
         auto t = to_list(v, to_double);
         for (std::size_t i = 0; i < t.size(); ++i) {
           fraction01(t[i]);
           if (i && t[i] <= t[i - 1]) throw BadValue{"thresholds must be increasing"};
         }
         if (t.empty()) throw BadValue{"at least one threshold required"};
         e.sim.thresholds = std::move(t);
       }},
      {"network.preset",
       [](auto& e, auto v) {
         if (v == "none") {
           e.network.preset.reset();
           return;
         }
         auto p = parse_preset(v);
         if (!p) throw BadValue{"unknown preset '" + std::string(v) + "' (expected G0..G4 or none)"};
         e.network.preset = *p;
       }},
      {"network.n",
       [](auto& e, auto v) {
         const auto n = to_uint(v);
         if (n < 10) throw BadValue{"must be >= 10"};
         const double avg = e.network.targets.avg_out_degree();
         e.network.targets.n_nodes = static_cast<std::size_t>(n);
         e.network.targets.n_edges_target = static_cast<std::uint64_t>(std::llround(avg * static_cast<double>(n)));
       }},
      {"network.avg_out_degree",
       [](auto& e, auto v) {
         const double avg = to_double(v);
         if (!(avg >= 1.0)) throw BadValue{"must be >= 1"};
         e.network.targets.n_edges_target =
             static_cast<std::uint64_t>(std::llround(avg * static_cast<double>(e.network.targets.n_nodes)));
       }},
      {"network.s_m", [](auto& e, auto v) { e.network.targets.s_m = to_double(v); }},
      {"network.h_m", [](auto& e, auto v) { e.network.targets.h_m = to_double(v); }},
      {"network.h_M", [](auto& e, auto v) { e.network.targets.h_M = to_double(v); }},
      {"network.tolerance", [](auto& e, auto v) { e.network.targets.tolerance = positive(to_double(v)); }},
      {"network.reciprocity",
       [](auto& e, auto v) {
         const double r = to_double(v);
         if (!(r >= 0.0 && r <= 1.0)) throw BadValue{"must lie in [0, 1]"};
         e.network.targets.reciprocity = r;
       }},
      {"network.edges", [](auto& e, auto v) { e.network.edges = std::string(v); }},
      {"network.labels", [](auto& e, auto v) { e.network.labels = std::string(v); }},
      {"emit.metrics", [](auto& e, auto v) { e.emit.metrics = to_bool(v); }},
      {"emit.recs", [](auto& e, auto v) { e.emit.recs = to_bool(v); }},
      {"emit.snapshots",
       [](auto& e, auto v) {
         e.emit.snapshots.clear();
         for (auto t : to_list(v, to_uint)) e.emit.snapshots.push_back(static_cast<std::size_t>(t));
       }},
      {"sweep.e_mm",
       [](auto& e, auto v) {
         e.sweep.e_mm = to_list(v, to_double);
         for (double x : e.sweep.e_mm) {
           if (!(x > 0.0 && x <= 1.0)) throw BadValue{"e_mm values must lie in (0, 1]"};
         }
       }},
      {"sweep.s_m",
       [](auto& e, auto v) {
         e.sweep.s_m = to_list(v, to_double);
         for (double x : e.sweep.s_m) {
           if (!(x > 0.0 && x <= 0.5)) throw BadValue{"s_m values must lie in (0, 0.5]"};
         }
       }},
      {"sweep.recommenders", [](auto& e, auto v) { e.sweep.recommenders = to_list(v, to_recommender); }},
      {"sweep.behaviors", [](auto& e, auto v) { e.sweep.behaviors = to_list(v, to_behavior); }},
      {"sweep.alpha",
       [](auto& e, auto v) {
         e.sweep.alphas = to_list(v, [](std::string_view s) { return fraction01(to_double(s)); });
       }},
      {"sweep.k",
       [](auto& e, auto v) {
         e.sweep.ks = to_list(v, [](std::string_view s) { return at_least_one(to_uint(s)); });
       }},
      {"sweep.track",
       [](auto& e, auto v) {
         e.sweep.track = to_list(v, [](std::string_view s) { return at_least_one(to_uint(s)); });
       }},
  };
  return table;
}

void apply(ExperimentSpec& spec, std::string_view key, std::string_view value, const std::string& where) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
  try {
    it->second(spec, value);
  } catch (const BadValue& b) {
    throw ConfigError(where + ": " + std::string(key) + ": " + b.why);
  }
}

void finish(ExperimentSpec& spec) {
  if (spec.network.edges.has_value() != spec.network.labels.has_value()) {
    throw ConfigError("network.edges and network.labels must be given together");
  }
  spec.sim.validate();
}

}  // namespace

NetConfig NetworkSource::resolve(std::uint64_t seed) const {
  NetConfig c = targets;
  if (preset) {
    c = preset_config(*preset, targets.n_nodes, targets.avg_out_degree(), seed);
    c.tolerance = targets.tolerance;
    c.reciprocity = targets.reciprocity;
  }
  c.rng_seed = seed;
  return c;
}

std::vector<std::uint64_t> ExperimentSpec::seed_list() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> r;
  for (std::size_t i = 0; i < replicates; ++i) r.push_back(seed + i);
  return r;
}

ExperimentSpec parse_config(std::istream& is, const Overrides& overrides) {
  ExperimentSpec spec;
  spec.network.targets.n_nodes = 2000;
  spec.network.targets.n_edges_target = 10000;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    const std::string where = "line " + std::to_string(line);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const auto key = trim(s.substr(0, eq));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    apply(spec, key, value, where);
  }
  for (const auto& [k, v] : overrides) apply(spec, k, v, "flag --" + k);
  finish(spec);
  return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& p, const Overrides& overrides) {
  std::ifstream is(p);
  if (!is) throw ConfigError("cannot open config file " + p.string());
  return parse_config(is, overrides);
}

ExperimentSpec default_spec(const Overrides& overrides) {
  std::istringstream empty;
  return parse_config(empty, overrides);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> r;
  for (const auto& [k, _] : setters()) r.push_back(k);
  return r;
}

std::string dump_config(const ExperimentSpec& e) {
  std::ostringstream os;
  auto list = [](const auto& v, auto&& f) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += f(v[i]);
    }
    return s;
  };
  auto num = [](double d) { return format_double(d); };
  auto uint = [](auto u) { return std::to_string(u); };
  os << "T = " << e.sim.T << "\n"
     << "alpha = " << num(e.sim.alpha) << "\n"
     << "k = " << e.sim.k << "\n"
     << "recommender = " << recommender_name(e.sim.recommender) << "\n"
     << "behavior = " << behavior_name(e.sim.behavior) << "\n"
     << "seeds = " << list(e.seed_list(), uint) << "\n"
     << "als.d = " << e.sim.params.als.d << "\n"
     << "als.lambda = " << num(e.sim.params.als.lambda) << "\n"
     << "als.conf_alpha = " << num(e.sim.params.als.conf_alpha) << "\n"
     << "als.sweeps = " << e.sim.params.als.sweeps << "\n"
     << "sls.max_iters = " << e.sim.params.sls.max_iters << "\n"
     << "sls.tol = " << num(e.sim.params.sls.tol) << "\n"
     << "metrics.thresholds = " << list(e.sim.thresholds, num) << "\n";
  if (e.network.from_files()) {
    os << "network.edges = " << e.network.edges->string() << "\n"
       << "network.labels = " << e.network.labels->string() << "\n";
  } else {
    os << "network.preset = " << (e.network.preset ? std::string(preset_name(*e.network.preset)) : "none")
       << "\n"
       << "network.n = " << e.network.targets.n_nodes << "\n"
       << "network.avg_out_degree = " << num(e.network.targets.avg_out_degree()) << "\n";
    if (!e.network.preset) {
      os << "network.s_m = " << num(e.network.targets.s_m) << "\n"
         << "network.h_m = " << num(e.network.targets.h_m) << "\n"
         << "network.h_M = " << num(e.network.targets.h_M) << "\n";
    }
    os << "network.tolerance = " << num(e.network.targets.tolerance) << "\n"
       << "network.reciprocity = " << num(e.network.targets.reciprocity) << "\n";
  }
  return os.str();
}

}  // namespace feedloop
