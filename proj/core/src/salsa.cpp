#include <algorithm>
#include <cmath>

#include "feedloop/recommenders.hpp"

namespace feedloop {

SalsaResult salsa(const LabeledDigraph& g, NodeId u, const SalsaParams& p) {
  SalsaResult r;
  if (g.out_degree(u) > 0) r.hubs.push_back(u);
  for (NodeId z : g.out(u)) {
    if (g.out_degree(z) > 0) r.hubs.push_back(z);
  }
  std::sort(r.hubs.begin(), r.hubs.end());
  if (r.hubs.empty()) return r;

  for (NodeId h : r.hubs) {
    for (NodeId v : g.out(h)) r.authorities.push_back(v);
  }
  std::sort(r.authorities.begin(), r.authorities.end());
  r.authorities.erase(std::unique(r.authorities.begin(), r.authorities.end()), r.authorities.end());

  // Local bipartite adjacency: hub index -> authority indices.
  const std::size_t nh = r.hubs.size();
  const std::size_t na = r.authorities.size();
  std::vector<std::vector<std::uint32_t>> adj(nh);
  std::vector<double> auth_in(na, 0.0);
  for (std::size_t i = 0; i < nh; ++i) {
    for (NodeId v : g.out(r.hubs[i])) {
      const auto j = static_cast<std::uint32_t>(
          std::lower_bound(r.authorities.begin(), r.authorities.end(), v) - r.authorities.begin());
      adj[i].push_back(j);
      auth_in[j] += 1.0;
    }
  }

  r.hub_mass.assign(nh, 1.0 / static_cast<double>(nh));
  r.authority_mass.assign(na, 0.0);
  std::vector<double> prev(na, 0.0);
  for (int it = 0; it < p.max_iters; ++it) {
    std::fill(r.authority_mass.begin(), r.authority_mass.end(), 0.0);
    for (std::size_t i = 0; i < nh; ++i) {
      const double share = r.hub_mass[i] / static_cast<double>(adj[i].size());
      for (auto j : adj[i]) r.authority_mass[j] += share;
    }
    for (std::size_t i = 0; i < nh; ++i) {
      double m = 0.0;
      for (auto j : adj[i]) m += r.authority_mass[j] / auth_in[j];
      r.hub_mass[i] = m;
    }
    r.iterations = it + 1;
    double delta = 0.0;
    for (std::size_t j = 0; j < na; ++j) delta += std::abs(r.authority_mass[j] - prev[j]);
    if (it > 0 && delta < p.tol) break;
    prev = r.authority_mass;
  }
  return r;
}

RankedList salsa_rank(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates, std::size_t k,
                      const SalsaParams& p) {
  if (candidates.empty()) return {u, {}};
  const auto res = salsa(g, u, p);
  std::vector<double> scores(candidates.size(), 0.0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto it = std::lower_bound(res.authorities.begin(), res.authorities.end(), candidates[i]);
    if (it != res.authorities.end() && *it == candidates[i]) {
      scores[i] = res.authority_mass[static_cast<std::size_t>(it - res.authorities.begin())];
    }
  }
  return {u, top_k_by_score(candidates, scores, k)};
}

}  // namespace feedloop
