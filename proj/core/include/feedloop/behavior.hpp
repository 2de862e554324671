#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "feedloop/rng.hpp"

namespace feedloop {

enum class BehaviorKind { kLazy, kRandom, kPositionBiased, kMixed };

std::optional<BehaviorKind> parse_behavior(std::string_view s);
std::string_view behavior_name(BehaviorKind b);

// Position-bias acceptance probabilities for a list of length len:
// p_i proportional to 1 / log(i + 1), i = 1..len. The log base cancels.
std::vector<double> psb_probs(std::size_t len, double log_base = 0.0 /* 0 = natural log */);

// Exact acceptance distribution of a policy over positions 1..len.
std::vector<double> acceptance_probs(BehaviorKind kind, std::size_t len);

// Accepted 1-based position, or nullopt for an empty list. B-MIX draws its
// component policy on every call.
std::optional<std::size_t> select(BehaviorKind kind, std::size_t len, Rng& rng);

}  // namespace feedloop
