#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "feedloop/graph.hpp"

namespace feedloop {

// A graph read from text files together with the translation table from
// dense ids back to the ids used in the files.
struct LoadedGraph {
  LabeledDigraph graph;
  std::vector<std::uint64_t> external_ids;  // external_ids[dense] = file id

  bool identity_mapping() const noexcept;
};

// Edge list: "u<TAB>v" per line, '#' comment lines, blank lines ignored.
// Label file: "u<TAB>g" per line, g = 0 (majority) or 1 (minority).
//
// Dense ids are assigned in ascending order of the external ids. Every node
// appearing in the edge list must have a label. Repeated edge lines collapse
// into one edge; self-loops are rejected.
LoadedGraph read_graph(std::istream& edges, std::istream& labels);
LoadedGraph read_graph(const std::filesystem::path& edges,
                       const std::filesystem::path& labels);

// Canonical form: edges sorted by (source, target), labels by node id.
void write_edges(std::ostream& os, const LabeledDigraph& g);
void write_labels(std::ostream& os, const LabeledDigraph& g);
void write_edges(const std::filesystem::path& p, const LabeledDigraph& g);
void write_labels(const std::filesystem::path& p, const LabeledDigraph& g);

// "dense<TAB>external" per line.
void write_node_map(const std::filesystem::path& p, const LoadedGraph& g);

}  // namespace feedloop
