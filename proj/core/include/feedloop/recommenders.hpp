#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "feedloop/batch.hpp"
#include "feedloop/graph.hpp"
#include "feedloop/rng.hpp"

namespace feedloop {

enum class RecommenderKind { kAda, kSls, kAls, kRnd };

std::optional<RecommenderKind> parse_recommender(std::string_view s);
std::string_view recommender_name(RecommenderKind k);

struct AlsParams {
  int d = 16;
  double lambda = 0.1;
  double conf_alpha = 40.0;
  int sweeps = 10;
};

struct SalsaParams {
  int max_iters = 50;
  double tol = 1e-8;
};

struct RecommenderParams {
  AlsParams als;
  SalsaParams sls;
};

// Sort candidates by score descending, ties by NodeId ascending, keep k.
// `scores[i]` belongs to `candidates[i]`.
std::vector<NodeId> top_k_by_score(std::span<const NodeId> candidates, std::span<const double> scores,
                                   std::size_t k);

// ---- Adamic-Adar (directed) ----

// Sum over intermediaries z with u->z->v of 1 / ln(out_deg(z) + in_deg(z)).
double ada_score(const LabeledDigraph& g, NodeId u, NodeId v);
// Scores for every entry of the sorted `candidates` in one pass over u's
// two-hop neighbourhood.
std::vector<double> ada_scores(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates);

// ---- SALSA ----

struct SalsaResult {
  std::vector<NodeId> hubs;         // sorted
  std::vector<NodeId> authorities;  // sorted
  std::vector<double> authority_mass;
  std::vector<double> hub_mass;
  int iterations = 0;
};

// Bipartite SALSA on hubs {u} + out(u) (those with at least one out-edge)
// and authorities = union of the hubs' out-neighbours. Starts from uniform
// hub mass and alternates hub -> authority -> hub until the L1 change of the
// authority vector drops below tol.
SalsaResult salsa(const LabeledDigraph& g, NodeId u, const SalsaParams& p = {});

RankedList salsa_rank(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates,
                      std::size_t k, const SalsaParams& p = {});

// ---- Implicit-feedback ALS ----

// Row-major N x d factor matrices.
struct AlsModel {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> user_factors;
  std::vector<double> item_factors;

  std::span<const double> user(NodeId u) const { return {user_factors.data() + std::size_t{u} * d, d}; }
  std::span<const double> item(NodeId v) const { return {item_factors.data() + std::size_t{v} * d, d}; }
};

// Trains on preferences p_uv = [(u,v) in E] with confidence 1 + conf_alpha * p_uv.
// If `loss_trace` is given it receives the loss before the first sweep and
// after every sweep.
AlsModel als_train(const LabeledDigraph& g, const AlsParams& p, std::uint64_t rng_seed,
                   std::vector<double>* loss_trace = nullptr);

// sum_uv c_uv (p_uv - x_u.y_v)^2 + lambda (|X|^2 + |Y|^2), evaluated without
// materialising the N x N matrix.
double als_loss(const LabeledDigraph& g, const AlsModel& m, const AlsParams& p);

double als_score(const AlsModel& m, NodeId u, NodeId v);

// ---- Recommender interface ----

class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual RecommenderKind kind() const = 0;
  // Called once per round on the round's snapshot before any recommend().
  virtual void prepare(const LabeledDigraph& g, std::uint64_t round_seed) = 0;
  // `candidates` must be sorted and eligible for u. `rng` is u's private
  // stream for this round.
  virtual RankedList recommend(const LabeledDigraph& g, NodeId u, std::span<const NodeId> candidates,
                               std::size_t k, Rng& rng) const = 0;
};

std::unique_ptr<Recommender> make_recommender(RecommenderKind kind, const RecommenderParams& p = {});

}  // namespace feedloop
