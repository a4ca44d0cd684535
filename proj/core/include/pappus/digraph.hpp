#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pappus/errors.hpp"
#include "pappus/signed_set.hpp"

namespace pappus {

struct Edge {
  int label;         // 1-based; doubles as the matrix column index
  std::string tail;  // edge direction tail -> head
  std::string head;
};

/// Loop-free directed graph without parallel or antiparallel edges. Edge
/// labels are unique positive integers.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  void add_edge(int label, std::string tail, std::string head);

  const std::vector<Edge>& edges() const { return edges_; }  // sorted by label
  const std::set<std::string>& vertices() const { return vertices_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int label) const;
  bool has_edge(int label) const;
  /// Max edge label; edge labels are required to be 1..n when a graph feeds
  /// matrix columns, which validate_labels() enforces.
  int max_label() const;
  void validate_labels() const;

  /// Graph with the same underlying edges, given ones reversed.
  DirectedGraph reversed(const std::set<int>& labels) const;

  std::vector<int> incident_labels(const std::string& v) const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  std::vector<Edge> edges_;
  std::set<std::string> vertices_;
};

bool is_connected(const DirectedGraph& g);  // underlying graph
bool is_totally_cyclic(const DirectedGraph& g);
bool three_edge_connected(const DirectedGraph& g);

/// Signed cycles of the underlying graph, both traversal directions.
std::vector<SignedSet> graph_circuits(const DirectedGraph& g);
/// Signed minimal cuts (both sides connected), both orientations.
std::vector<SignedSet> graph_cocircuits(const DirectedGraph& g);
/// (in-edges, out-edges) of a vertex.
SignedSet vertex_cocircuit(const DirectedGraph& g, const std::string& v);

/// Text format: `edge <label> <tail> <head>` lines; `order`/`triple` lines
/// are left to the caller (see om.hpp and twisted.hpp). Output is in
/// canonical label order.
std::string to_string(const DirectedGraph& g);

}  // namespace pappus
