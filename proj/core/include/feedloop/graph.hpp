#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace feedloop {

using NodeId = std::uint32_t;

enum class Group : std::uint8_t { kMajority = 0, kMinority = 1 };

constexpr Group other(Group g) noexcept {
  return g == Group::kMinority ? Group::kMajority : Group::kMinority;
}

constexpr const char* group_name(Group g) noexcept {
  return g == Group::kMinority ? "minority" : "majority";
}

// Edge counts by (source group, target group).
struct MixingCounts {
  std::uint64_t mm = 0;  // minority -> minority
  std::uint64_t mM = 0;  // minority -> majority
  std::uint64_t Mm = 0;  // majority -> minority
  std::uint64_t MM = 0;  // majority -> majority

  std::uint64_t& at(Group src, Group dst) noexcept;
  std::uint64_t at(Group src, Group dst) const noexcept;
  // |E_i.|: edges whose source is in group i.
  std::uint64_t outgoing(Group g) const noexcept { return at(g, Group::kMinority) + at(g, Group::kMajority); }
  std::uint64_t total() const noexcept { return mm + mM + Mm + MM; }

  friend bool operator==(const MixingCounts&, const MixingCounts&) = default;
};

// Directed simple graph with a binary group label per node.
//
// Adjacency lists are kept sorted by NodeId so that iteration order never
// depends on insertion order. Mixing counts are maintained on every mutation.
class LabeledDigraph {
 public:
  LabeledDigraph() = default;
  explicit LabeledDigraph(std::size_t n, Group initial = Group::kMajority);
  LabeledDigraph(std::vector<Group> labels);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::uint64_t num_edges() const noexcept { return edge_count_; }

  std::span<const NodeId> out(NodeId u) const { return out_[u]; }
  std::span<const NodeId> in(NodeId v) const { return in_[v]; }
  std::size_t out_degree(NodeId u) const { return out_[u].size(); }
  std::size_t in_degree(NodeId v) const { return in_[v].size(); }

  bool has_edge(NodeId u, NodeId v) const;

  // Throws GraphError on self-loops, duplicates or out-of-range ids.
  void add_edge(NodeId u, NodeId v);
  // Replace (u, old_target) by (u, new_target). Out-degree of u is unchanged.
  void rewire(NodeId u, NodeId old_target, NodeId new_target);

  Group label(NodeId u) const { return labels_[u]; }
  std::span<const Group> labels() const noexcept { return labels_; }
  void set_label(NodeId u, Group g);

  std::size_t group_size(Group g) const noexcept {
    return g == Group::kMinority ? minority_count_ : labels_.size() - minority_count_;
  }
  std::vector<NodeId> members(Group g) const;

  const MixingCounts& mixing() const noexcept { return mixing_; }
  // Full O(E) recount; the incremental counts must always agree with it.
  MixingCounts recount_mixing() const;

  // All edges in (source, target) lexicographic order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const LabeledDigraph& a, const LabeledDigraph& b) {
    return a.labels_ == b.labels_ && a.out_ == b.out_;
  }

 private:
  void check_node(NodeId u) const;

  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<Group> labels_;
  std::uint64_t edge_count_ = 0;
  std::size_t minority_count_ = 0;
  MixingCounts mixing_;
};

// |V_i| / |V|. Throws GraphError on an empty graph.
double group_share(const LabeledDigraph& g, Group i);

// h_i = |E_ii| / |E_i.| - s_i. Throws GraphError when group i has no outgoing
// edges.
double homophily(const LabeledDigraph& g, Group i);

// |E_ii| / |E_i.|. Equals homophily(g, i) + group_share(g, i).
double edge_fraction_within(const LabeledDigraph& g, Group i);

// Nodes v with a path u -> z -> v, v != u, (u, v) not an edge and v not in
// `excluded` (which must be sorted ascending). Result is sorted ascending.
std::vector<NodeId> distance2_candidates(const LabeledDigraph& g, NodeId u,
                                         std::span<const NodeId> excluded = {});

// Checks every structural invariant by exhaustive scan. Returns false on the
// first violation.
bool check_invariants(const LabeledDigraph& g);

}  // namespace feedloop
