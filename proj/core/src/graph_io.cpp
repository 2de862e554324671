#include "feedloop/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "feedloop/error.hpp"

namespace feedloop {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_id(std::string_view tok, const char* what, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty()) {
    throw IoError(std::string(what) + " line " + std::to_string(line) + ": bad integer '" +
                  std::string(tok) + "'");
  }
  return v;
}

// Splits "a<TAB>b" (any run of tabs/spaces accepted).
bool split_pair(std::string_view s, std::string_view& a, std::string_view& b) {
  const auto sep = s.find_first_of(" \t");
  if (sep == std::string_view::npos) return false;
  a = s.substr(0, sep);
  b = trim(s.substr(sep));
  return !b.empty() && b.find_first_of(" \t") == std::string_view::npos;
}

template <class F>
void for_each_record(std::istream& is, const char* what, F&& f) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    std::string_view a, b;
    if (!split_pair(s, a, b)) {
      throw IoError(std::string(what) + " line " + std::to_string(line) +
                    ": expected two tab-separated fields");
    }
    f(parse_id(a, what, line), parse_id(b, what, line), line);
  }
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw IoError("cannot open " + p.string() + " for writing");
  return os;
}

}  // namespace

bool LoadedGraph::identity_mapping() const noexcept {
  for (std::size_t i = 0; i < external_ids.size(); ++i) {
    if (external_ids[i] != i) return false;
  }
  return true;
}

LoadedGraph read_graph(std::istream& edges, std::istream& labels) {
  std::vector<std::pair<std::uint64_t, Group>> label_rows;
  for_each_record(labels, "labels", [&](std::uint64_t u, std::uint64_t g, std::size_t line) {
    if (g > 1) {
      throw IoError("labels line " + std::to_string(line) + ": group must be 0 or 1");
    }
    label_rows.emplace_back(u, g == 1 ? Group::kMinority : Group::kMajority);
  });
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edge_rows;
  for_each_record(edges, "edges", [&](std::uint64_t u, std::uint64_t v, std::size_t line) {
    if (u == v) throw IoError("edges line " + std::to_string(line) + ": self-loop");
    edge_rows.emplace_back(u, v);
  });

  std::sort(label_rows.begin(), label_rows.end());
  for (std::size_t i = 1; i < label_rows.size(); ++i) {
    if (label_rows[i].first == label_rows[i - 1].first) {
      throw IoError("labels: node " + std::to_string(label_rows[i].first) + " labeled twice");
    }
  }

  LoadedGraph out;
  out.external_ids.reserve(label_rows.size());
  std::vector<Group> dense_labels;
  dense_labels.reserve(label_rows.size());
  for (const auto& [id, g] : label_rows) {
    out.external_ids.push_back(id);
    dense_labels.push_back(g);
  }
  out.graph = LabeledDigraph(std::move(dense_labels));

  auto dense = [&](std::uint64_t ext) -> NodeId {
    auto it = std::lower_bound(out.external_ids.begin(), out.external_ids.end(), ext);
    if (it == out.external_ids.end() || *it != ext) {
      throw IoError("edges: node " + std::to_string(ext) + " has no label");
    }
    return static_cast<NodeId>(it - out.external_ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> dense_edges;
  dense_edges.reserve(edge_rows.size());
  for (const auto& [u, v] : edge_rows) dense_edges.emplace_back(dense(u), dense(v));
  std::sort(dense_edges.begin(), dense_edges.end());
  dense_edges.erase(std::unique(dense_edges.begin(), dense_edges.end()), dense_edges.end());
  for (const auto& [u, v] : dense_edges) out.graph.add_edge(u, v);
  return out;
}

LoadedGraph read_graph(const std::filesystem::path& edges, const std::filesystem::path& labels) {
  std::ifstream e(edges);
  if (!e) throw IoError("cannot open edge list " + edges.string());
  std::ifstream l(labels);
  if (!l) throw IoError("cannot open label file " + labels.string());
  return read_graph(e, l);
}

void write_edges(std::ostream& os, const LabeledDigraph& g) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.out(u)) os << u << '\t' << v << '\n';
  }
}

void write_labels(std::ostream& os, const LabeledDigraph& g) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    os << u << '\t' << (g.label(u) == Group::kMinority ? 1 : 0) << '\n';
  }
}

void write_edges(const std::filesystem::path& p, const LabeledDigraph& g) {
  auto os = open_out(p);
  write_edges(os, g);
}

void write_labels(const std::filesystem::path& p, const LabeledDigraph& g) {
  auto os = open_out(p);
  write_labels(os, g);
}

void write_node_map(const std::filesystem::path& p, const LoadedGraph& g) {
  auto os = open_out(p);
  os << "# dense\texternal\n";
  for (std::size_t i = 0; i < g.external_ids.size(); ++i) {
    os << i << '\t' << g.external_ids[i] << '\n';
  }
}

}  // namespace feedloop
