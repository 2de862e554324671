#include "feedloop/netgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "feedloop/error.hpp"

namespace feedloop {

namespace {

struct PresetRow {
  Preset preset;
  std::string_view name;
  double s_m;
  double h_m;
  double h_M;
};

constexpr std::array<PresetRow, 5> kPresets{{
    {Preset::G0, "G0", 0.30, 0.42, 0.0},
    {Preset::G1, "G1", 0.10, 0.40, 0.0},
    {Preset::G2, "G2", 0.45, 0.50, 0.0},
    {Preset::G3, "G3", 0.30, -0.25, 0.0},
    {Preset::G4, "G4", 0.30, 0.60, 0.20},
}};

const PresetRow& row(Preset p) {
  for (const auto& r : kPresets) {
    if (r.preset == p) return r;
  }
  throw NetgenError("unknown preset");
}

// Partial Fisher-Yates: the first k entries of v become a uniform sample
// without replacement.
template <class T>
void partial_shuffle(std::vector<T>& v, std::size_t k, Rng& rng) {
  k = std::min(k, v.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_below(rng, v.size() - i);
    std::swap(v[i], v[j]);
  }
}

bool admissible(double h, double s) { return h > -s && h <= 1.0 - s; }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Valid target for source u (w != u and (u, w) absent), drawn with
// probability proportional to in-degree + 1. `urn` holds one token per pool
// node plus one per in-edge it has received.
std::optional<NodeId> draw_target(const LabeledDigraph& g, NodeId u,
                                  const std::vector<NodeId>& urn, Rng& rng) {
  if (urn.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const NodeId w = urn[uniform_below(rng, urn.size())];
    if (w != u && !g.has_edge(u, w)) return w;
  }
  // Dense neighbourhood: fall back to explicit enumeration.
  std::vector<NodeId> valid;
  for (NodeId w : urn) {
    if (w != u && !g.has_edge(u, w)) valid.push_back(w);
  }
  if (valid.empty()) return std::nullopt;
  return valid[uniform_below(rng, valid.size())];
}

// Rewire up to `count` edges sourced in `group`. If `inward`, cross-group
// edges are redirected into the group; otherwise within-group edges are
// redirected out. Returns the number actually rewired.
std::uint64_t rewire_edges(LabeledDigraph& g, Group group, bool inward, std::uint64_t count,
                           Rng& rng) {
  if (count == 0) return 0;
  const Group dest = inward ? group : other(group);
  std::vector<std::pair<NodeId, NodeId>> eligible;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (g.label(u) != group) continue;
    for (NodeId v : g.out(u)) {
      if ((g.label(v) == group) != inward) eligible.emplace_back(u, v);
    }
  }
  partial_shuffle(eligible, static_cast<std::size_t>(count), rng);
  // Rewiring only ever adds in-edges to destination nodes (the old target is
  // always in the other group), so the urn can grow by appending.
  std::vector<NodeId> urn;
  for (NodeId w : g.members(dest)) urn.insert(urn.end(), g.in_degree(w) + 1, w);
  std::uint64_t done = 0;
  const auto limit = std::min<std::size_t>(static_cast<std::size_t>(count), eligible.size());
  for (std::size_t i = 0; i < limit; ++i) {
    const auto [u, v] = eligible[i];
    if (auto w = draw_target(g, u, urn, rng)) {
      g.rewire(u, v, *w);
      urn.push_back(*w);
      ++done;
    }
  }
  return done;
}

}  // namespace

void NetConfig::validate() const {
  if (n_nodes < 10) throw NetgenError("n_nodes must be at least 10");
  if (n_edges_target < n_nodes) throw NetgenError("n_edges_target must be at least n_nodes (average out-degree >= 1)");
  if (!(s_m > 0.0 && s_m <= 0.5)) throw NetgenError("s_m must lie in (0, 0.5]");
  if (!admissible(h_m, s_m)) {
    throw NetgenError("h_m=" + fmt(h_m) + " outside (" + fmt(-s_m) + ", " + fmt(1 - s_m) + "]");
  }
  const double s_M = 1.0 - s_m;
  if (!admissible(h_M, s_M)) {
    throw NetgenError("h_M=" + fmt(h_M) + " outside (" + fmt(-s_M) + ", " + fmt(1 - s_M) + "]");
  }
  if (!(tolerance > 0.0)) throw NetgenError("tolerance must be positive");
  if (!(reciprocity >= 0.0 && reciprocity <= 1.0)) throw NetgenError("reciprocity must lie in [0, 1]");
}

std::optional<Preset> parse_preset(std::string_view name) {
  for (const auto& r : kPresets) {
    if (r.name == name) return r.preset;
  }
  return std::nullopt;
}

std::string_view preset_name(Preset p) { return row(p).name; }

NetConfig preset_config(Preset p, std::size_t n, double avg_out_degree, std::uint64_t rng_seed) {
  const auto& r = row(p);
  NetConfig c;
  c.n_nodes = n;
  c.n_edges_target = static_cast<std::uint64_t>(std::llround(avg_out_degree * static_cast<double>(n)));
  c.s_m = r.s_m;
  c.h_m = r.h_m;
  c.h_M = r.h_M;
  c.rng_seed = rng_seed;
  return c;
}

LabeledDigraph seed_graph(std::size_t n, double avg_out_degree, double s_m, std::uint64_t rng_seed,
                          double reciprocity) {
  if (n < 10) throw NetgenError("seed graph needs at least 10 nodes");
  if (!(avg_out_degree >= 1.0)) throw NetgenError("average out-degree must be >= 1");
  if (!(reciprocity >= 0.0 && reciprocity <= 1.0)) throw NetgenError("reciprocity must lie in [0, 1]");
  if (!(s_m >= 0.0 && s_m <= 1.0)) throw NetgenError("label probability must lie in [0, 1]");

  Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(Stream::kNetwork), 0));
  std::vector<Group> labels(n);
  for (auto& l : labels) l = uniform01(rng) < s_m ? Group::kMinority : Group::kMajority;
  LabeledDigraph g(std::move(labels));

  // Follow-backs come out of the same budget so the mean out-degree stays put.
  const double per_node = avg_out_degree / (1.0 + reciprocity);
  const double whole = std::floor(per_node);
  const double frac = per_node - whole;
  // One token per node plus one per received edge: sampling a token is
  // sampling a node proportional to in-degree + 1.
  std::vector<NodeId> urn;
  urn.reserve(2 * n + static_cast<std::size_t>(avg_out_degree * static_cast<double>(n)));
  std::vector<NodeId> picked;
  for (NodeId t = 0; t < n; ++t) {
    std::size_t m = static_cast<std::size_t>(whole) + (uniform01(rng) < frac ? 1 : 0);
    m = std::min<std::size_t>(m, t);
    picked.clear();
    if (m == t) {
      for (NodeId v = 0; v < t; ++v) picked.push_back(v);
    } else {
      while (picked.size() < m) {
        const NodeId v = urn[uniform_below(rng, urn.size())];
        if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
      }
    }
    urn.push_back(t);
    for (NodeId v : picked) {
      g.add_edge(t, v);
      urn.push_back(v);
      if (uniform01(rng) < reciprocity) {
        g.add_edge(v, t);
        urn.push_back(t);
      }
    }
  }
  return g;
}

ShareChange set_minority_share(LabeledDigraph& g, double s_target, Rng& rng) {
  if (!(s_target > 0.0 && s_target < 1.0)) throw NetgenError("minority share must lie in (0, 1)");
  const std::size_t n = g.num_nodes();
  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * s_target));
  if (target == 0 || target == n) {
    throw NetgenError("minority share " + fmt(s_target) + " would empty a group at N=" + std::to_string(n));
  }
  ShareChange r{target, 0};
  const std::size_t current = g.group_size(Group::kMinority);
  if (current == target) return r;
  const bool shrink = target < current;
  const Group from = shrink ? Group::kMinority : Group::kMajority;
  auto pool = g.members(from);
  const std::size_t flips = shrink ? current - target : target - current;
  partial_shuffle(pool, flips, rng);
  for (std::size_t i = 0; i < flips; ++i) g.set_label(pool[i], other(from));
  r.flipped = flips;
  return r;
}

RewireReport set_homophily(LabeledDigraph& g, Group group, double h_target, Rng& rng,
                           double tolerance) {
  const double s = group_share(g, group);
  if (!admissible(h_target, s)) {
    throw NetgenError(std::string("target homophily ") + fmt(h_target) + " for the " + group_name(group) +
                      " group outside (" + fmt(-s) + ", " + fmt(1 - s) + "]");
  }
  RewireReport r;
  r.group = group;
  r.target = h_target;
  r.initial = homophily(g, group);

  const auto out_edges = static_cast<double>(g.mixing().outgoing(group));
  const double gap = h_target - r.initial;
  r.planned = static_cast<std::uint64_t>(std::llround(out_edges * std::abs(gap)));
  r.rewired = rewire_edges(g, group, gap > 0.0, r.planned, rng);

  // Corrective pass for edges that could not be placed; capped at 1% of edges.
  const auto cap = static_cast<std::uint64_t>(std::ceil(0.01 * static_cast<double>(g.num_edges())));
  double achieved = homophily(g, group);
  while (std::abs(achieved - h_target) > tolerance && r.corrective < cap) {
    const double rest = h_target - achieved;
    auto want = static_cast<std::uint64_t>(std::llround(out_edges * std::abs(rest)));
    want = std::min(want, cap - r.corrective);
    if (want == 0) break;
    const auto done = rewire_edges(g, group, rest > 0.0, want, rng);
    if (done == 0) break;
    r.corrective += done;
    r.rewired += done;
    achieved = homophily(g, group);
  }
  r.achieved = achieved;
  if (std::abs(achieved - h_target) > tolerance) {
    throw NetgenError(std::string("insufficient rewirable edges for the ") + group_name(group) +
                      " group: target h=" + fmt(h_target) + ", achieved h=" + fmt(achieved));
  }
  return r;
}

GeneratedNetwork generate_network(const NetConfig& cfg) {
  cfg.validate();
  GeneratedNetwork out;
  out.graph = seed_graph(cfg.n_nodes, cfg.avg_out_degree(), cfg.s_m, cfg.rng_seed, cfg.reciprocity);
  out.report.seed_edges = out.graph.num_edges();
  Rng rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(Stream::kNetwork), 1));
  out.report.share = set_minority_share(out.graph, cfg.s_m, rng);
  out.report.minority = set_homophily(out.graph, Group::kMinority, cfg.h_m, rng, cfg.tolerance);
  out.report.majority = set_homophily(out.graph, Group::kMajority, cfg.h_M, rng, cfg.tolerance);
  out.report.s_m = group_share(out.graph, Group::kMinority);
  out.report.h_m = homophily(out.graph, Group::kMinority);
  out.report.h_M = homophily(out.graph, Group::kMajority);
  return out;
}

GeneratedNetwork build_preset(Preset p, std::size_t n, double avg_out_degree, std::uint64_t rng_seed) {
  return generate_network(preset_config(p, n, avg_out_degree, rng_seed));
}

}  // namespace feedloop
