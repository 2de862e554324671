#include "feedloop/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feedloop/error.hpp"

namespace feedloop {

void SimConfig::validate() const {
  if (T < 1) throw ConfigError("T must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (params.als.d < 1) throw ConfigError("als.d must be >= 1");
  if (!(params.als.lambda > 0.0)) throw ConfigError("als.lambda must be > 0");
  if (!(params.als.conf_alpha >= 0.0)) throw ConfigError("als.conf_alpha must be >= 0");
  if (params.als.sweeps < 1) throw ConfigError("als.sweeps must be >= 1");
  if (params.sls.max_iters < 1) throw ConfigError("sls.max_iters must be >= 1");
  if (!(params.sls.tol > 0.0)) throw ConfigError("sls.tol must be > 0");
  if (thresholds.empty()) throw ConfigError("at least one percentile threshold is required");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0 && thresholds[i] <= 1.0)) throw ConfigError("thresholds must lie in (0, 1]");
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) throw ConfigError("thresholds must be increasing");
  }
}

bool ExclusionTable::contains(NodeId u, NodeId v) const {
  return std::binary_search(sets_[u].begin(), sets_[u].end(), v);
}

void ExclusionTable::add(NodeId u, std::span<const NodeId> targets) {
  auto& s = sets_[u];
  for (NodeId v : targets) {
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) {
      s.insert(it, v);
      ++total_;
    }
  }
}

namespace {

std::optional<double> try_homophily(const LabeledDigraph& g, Group grp) {
  if (g.mixing().outgoing(grp) == 0 || g.num_nodes() == 0) return std::nullopt;
  return homophily(g, grp);
}

std::optional<double> try_within(const LabeledDigraph& g, Group grp) {
  if (g.mixing().outgoing(grp) == 0) return std::nullopt;
  return edge_fraction_within(g, grp);
}

}  // namespace

GraphSummary summarize(const LabeledDigraph& g) {
  GraphSummary s;
  s.edges = g.num_edges();
  s.gini_min = gini_in_degree(g, Group::kMinority);
  s.gini_maj = gini_in_degree(g, Group::kMajority);
  s.h_m = try_homophily(g, Group::kMinority);
  s.h_M = try_homophily(g, Group::kMajority);
  s.e_mm = try_within(g, Group::kMinority);
  s.s_m = g.num_nodes() ? group_share(g, Group::kMinority) : 0.0;
  return s;
}

std::vector<NodeId> sample_users(std::size_t n, double alpha, Rng& rng) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
  if (count == 0) {
    throw ConfigError("alpha * N rounds down to zero users (N=" + std::to_string(n) + ")");
  }
  std::vector<NodeId> all(n);
  for (NodeId i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + uniform_below(rng, n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

IterationResult run_iteration(LabeledDigraph& g, const SimConfig& cfg, Recommender& rec,
                              ExclusionTable& exclusions, std::size_t t, std::uint64_t initial_edges) {
  IterationResult out;
  auto& r = out.record;
  r.t = t;

  rec.prepare(g, derive_seed(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(Stream::kAls)), t));

  Rng sampler = make_rng(cfg.rng_seed, Stream::kSampling, t);
  const auto users = sample_users(g.num_nodes(), cfg.alpha, sampler);
  r.sampled_users = users.size();
  r.recs_nominal = cfg.k * users.size();

  out.batch.reserve(users.size());
  for (NodeId u : users) {
    const auto candidates = distance2_candidates(g, u, exclusions.of(u));
    Rng rec_rng = make_rng(cfg.rng_seed, Stream::kRecommend, t, u);
    auto list = rec.recommend(g, u, candidates, cfg.k, rec_rng);
    Rng beh_rng = make_rng(cfg.rng_seed, Stream::kBehavior, t, u);
    Recommendation entry{u, std::move(list.targets), std::nullopt};
    entry.accepted = select(cfg.behavior, entry.targets.size(), beh_rng);
    out.batch.push_back(std::move(entry));
  }

  // Graph update after the whole round.
  for (const auto& e : out.batch) {
    exclusions.add(e.user, e.targets);
    r.recs_issued += e.targets.size();
    if (e.accepted) {
      g.add_edge(e.user, e.targets[*e.accepted - 1]);
      ++r.edges_added;
    }
  }

  r.exposure = exposure(out.batch, g.labels());
  r.cumulative_edge_growth =
      initial_edges ? static_cast<double>(g.num_edges() - initial_edges) / static_cast<double>(initial_edges) : 0.0;
  r.gini_min = gini_in_degree(g, Group::kMinority);
  r.gini_maj = gini_in_degree(g, Group::kMajority);
  r.h_m = try_homophily(g, Group::kMinority);
  r.h_M = try_homophily(g, Group::kMajority);
  r.e_mm = try_within(g, Group::kMinority);
  r.pexp_min = percentile_exposure(out.batch, g, Group::kMinority, cfg.thresholds);
  r.pexp_maj = percentile_exposure(out.batch, g, Group::kMajority, cfg.thresholds);
  return out;
}

SimResult run_simulation(const SimConfig& cfg, LabeledDigraph graph, const IterationObserver& observer) {
  cfg.validate();
  SimResult res;
  res.initial = summarize(graph);
  auto rec = make_recommender(cfg.recommender, cfg.params);
  ExclusionTable exclusions(graph.num_nodes());
  const auto initial_edges = graph.num_edges();
  res.records.reserve(cfg.T);
  for (std::size_t t = 1; t <= cfg.T; ++t) {
    auto it = run_iteration(graph, cfg, *rec, exclusions, t, initial_edges);
    if (observer) observer(it.record, it.batch, graph);
    res.records.push_back(std::move(it.record));
  }
  res.final_graph = std::move(graph);
  return res;
}

double exposure_ratio(std::span<const IterationRecord> records, std::size_t t) {
  auto find = [&](std::size_t when) -> const IterationRecord* {
    for (const auto& r : records) {
      if (r.t == when) return &r;
    }
    return nullptr;
  };
  const auto* first = find(1);
  if (!first || !first->exposure) throw Error("exposure ratio: no exposure recorded at t=1");
  if (first->exposure->e_min == 0.0) throw Error("exposure ratio: E_1 = 0");
  const auto* at = find(t);
  if (!at || !at->exposure) throw Error("exposure ratio: no exposure recorded at t=" + std::to_string(t));
  return at->exposure->e_min / first->exposure->e_min;
}

}  // namespace feedloop
