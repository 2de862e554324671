#include "feedloop/graph.hpp"

#include <algorithm>
#include <string>

#include "feedloop/error.hpp"

namespace feedloop {

namespace {

bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  v.erase(it);
}

}  // namespace

std::uint64_t& MixingCounts::at(Group src, Group dst) noexcept {
  if (src == Group::kMinority) return dst == Group::kMinority ? mm : mM;
  return dst == Group::kMinority ? Mm : MM;
}

std::uint64_t MixingCounts::at(Group src, Group dst) const noexcept {
  return const_cast<MixingCounts*>(this)->at(src, dst);
}

LabeledDigraph::LabeledDigraph(std::size_t n, Group initial)
    : out_(n), in_(n), labels_(n, initial),
      minority_count_(initial == Group::kMinority ? n : 0) {}

LabeledDigraph::LabeledDigraph(std::vector<Group> labels)
    : out_(labels.size()), in_(labels.size()), labels_(std::move(labels)) {
  minority_count_ = static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), Group::kMinority));
}

void LabeledDigraph::check_node(NodeId u) const {
  if (u >= labels_.size()) {
    throw GraphError("node id " + std::to_string(u) + " out of range (N=" +
                     std::to_string(labels_.size()) + ")");
  }
}

bool LabeledDigraph::has_edge(NodeId u, NodeId v) const {
  if (u >= labels_.size() || v >= labels_.size()) return false;
  // Search the shorter of the two lists.
  if (out_[u].size() <= in_[v].size()) return sorted_contains(out_[u], v);
  return sorted_contains(in_[v], u);
}

void LabeledDigraph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw GraphError("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ") rejected");
  if (has_edge(u, v)) {
    throw GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ") rejected");
  }
  sorted_insert(out_[u], v);
  sorted_insert(in_[v], u);
  ++edge_count_;
  ++mixing_.at(labels_[u], labels_[v]);
}

void LabeledDigraph::rewire(NodeId u, NodeId old_target, NodeId new_target) {
  check_node(u);
  check_node(old_target);
  check_node(new_target);
  if (!has_edge(u, old_target)) {
    throw GraphError("cannot rewire missing edge (" + std::to_string(u) + "," +
                     std::to_string(old_target) + ")");
  }
  if (u == new_target) throw GraphError("rewire would create a self-loop");
  if (has_edge(u, new_target)) throw GraphError("rewire would create a duplicate edge");
  sorted_erase(out_[u], old_target);
  sorted_erase(in_[old_target], u);
  --mixing_.at(labels_[u], labels_[old_target]);
  sorted_insert(out_[u], new_target);
  sorted_insert(in_[new_target], u);
  ++mixing_.at(labels_[u], labels_[new_target]);
}

void LabeledDigraph::set_label(NodeId u, Group g) {
  check_node(u);
  const Group old = labels_[u];
  if (old == g) return;
  for (NodeId v : out_[u]) {
    --mixing_.at(old, labels_[v]);
    ++mixing_.at(g, labels_[v]);
  }
  for (NodeId w : in_[u]) {
    --mixing_.at(labels_[w], old);
    ++mixing_.at(labels_[w], g);
  }
  labels_[u] = g;
  if (g == Group::kMinority) {
    ++minority_count_;
  } else {
    --minority_count_;
  }
}

std::vector<NodeId> LabeledDigraph::members(Group g) const {
  std::vector<NodeId> r;
  r.reserve(group_size(g));
  for (NodeId u = 0; u < labels_.size(); ++u) {
    if (labels_[u] == g) r.push_back(u);
  }
  return r;
}

MixingCounts LabeledDigraph::recount_mixing() const {
  MixingCounts c;
  for (NodeId u = 0; u < out_.size(); ++u) {
    for (NodeId v : out_[u]) ++c.at(labels_[u], labels_[v]);
  }
  return c;
}

std::vector<std::pair<NodeId, NodeId>> LabeledDigraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> r;
  r.reserve(edge_count_);
  for (NodeId u = 0; u < out_.size(); ++u) {
    for (NodeId v : out_[u]) r.emplace_back(u, v);
  }
  return r;
}

double group_share(const LabeledDigraph& g, Group i) {
  if (g.num_nodes() == 0) throw GraphError("group share of an empty graph");
  return static_cast<double>(g.group_size(i)) / static_cast<double>(g.num_nodes());
}

double edge_fraction_within(const LabeledDigraph& g, Group i) {
  const auto out = g.mixing().outgoing(i);
  if (out == 0) {
    throw GraphError(std::string("homophily undefined: ") + group_name(i) +
                     " group has no outgoing edges");
  }
  return static_cast<double>(g.mixing().at(i, i)) / static_cast<double>(out);
}

double homophily(const LabeledDigraph& g, Group i) {
  return edge_fraction_within(g, i) - group_share(g, i);
}

std::vector<NodeId> distance2_candidates(const LabeledDigraph& g, NodeId u,
                                         std::span<const NodeId> excluded) {
  std::vector<NodeId> r;
  const auto direct = g.out(u);
  for (NodeId z : direct) {
    for (NodeId v : g.out(z)) {
      if (v == u) continue;
      if (std::binary_search(direct.begin(), direct.end(), v)) continue;
      if (std::binary_search(excluded.begin(), excluded.end(), v)) continue;
      r.push_back(v);
    }
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

bool check_invariants(const LabeledDigraph& g) {
  std::uint64_t total = 0;
  std::size_t minority = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto out = g.out(u);
    if (!std::is_sorted(out.begin(), out.end())) return false;
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return false;
    for (NodeId v : out) {
      if (v == u || v >= g.num_nodes()) return false;
      const auto in = g.in(v);
      if (!std::binary_search(in.begin(), in.end(), u)) return false;
    }
    const auto in = g.in(u);
    if (!std::is_sorted(in.begin(), in.end())) return false;
    if (std::adjacent_find(in.begin(), in.end()) != in.end()) return false;
    for (NodeId w : in) {
      const auto wout = g.out(w);
      if (!std::binary_search(wout.begin(), wout.end(), u)) return false;
    }
    total += out.size();
    if (g.label(u) == Group::kMinority) ++minority;
  }
  return total == g.num_edges() && minority == g.group_size(Group::kMinority) &&
         g.recount_mixing() == g.mixing();
}

}  // namespace feedloop
