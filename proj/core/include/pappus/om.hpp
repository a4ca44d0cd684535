#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pappus/digraph.hpp"
#include "pappus/order.hpp"
#include "pappus/signed_set.hpp"
#include "pappus/sines.hpp"

namespace pappus {

/// Circuits of the rank-2 uniform oriented matroid of the chain 1 < ... < n:
/// ({e1,e3},{e2}) and opposites over all e1 < e2 < e3.
std::vector<SignedSet> circuits_of_total_order(int n);
/// Per-element lower/upper splits ({e' < e},{e'' > e}) and opposites.
std::vector<SignedSet> cocircuits_of_total_order(int n);

/// Same constructions over an explicit element sequence (position = order).
std::vector<SignedSet> circuits_of_order(std::span<const int> elements);
std::vector<SignedSet> cocircuits_of_order(std::span<const int> elements);

/// Closed form for the circuits shared by every linear extension:
/// ({x,z},{y}) and opposites over all x < y < z in the partial order.
std::vector<SignedSet> circuits_of_partial_order(const PartialOrder& order);

/// Vector test for the order matroid: x is a vector iff it is orthogonal to
/// every cocircuit of M(<). Implemented on the sign pattern of x along the
/// order, which is the same test restricted to the support (elements outside
/// the support only shift the cocircuit's split point).
bool is_order_vector(const SignedSet& x, std::span<const int> order);

/// Strong map test from the dual of the graph matroid to the order matroid:
/// every signed minimal cut of g must be orthogonal to every cocircuit of
/// the order, i.e. a vector of M(<). `order` lists the edge labels,
/// smallest first.
bool strong_map_exists(const DirectedGraph& g, std::span<const int> order);

/// Backtracking over label sequences, pruning each cut as soon as its
/// support is fully placed. Requires g totally cyclic, simple and
/// three-edge-connected; throws SearchLimitError past the node cap.
std::optional<std::vector<int>> find_compatible_total_order(const DirectedGraph& g);

/// Coordinates of circuits and cocircuits of the order matroid on 1..n:
/// the circuit ({i,k},{j}) maps to sin(j,k) at i, -sin(i,k) at j, sin(i,j)
/// at k; the cocircuit at i maps to sin(theta_i - theta_h) in column h. The
/// cocircuit convention is fixed by orthogonality against the circuits.
std::vector<double> hat_circuit(const SignedSet& c, const ThetaVector& theta, int n);
std::vector<double> hat_cocircuit(const SignedSet& c, const ThetaVector& theta, int n);

/// Numeric rank with relative tolerance 1e-8.
int rank_of_span(const std::vector<std::vector<double>>& vectors);

/// Homogeneous coordinates for a line arrangement: one 3-vector per element
/// plus the distinguished element omega (the line at infinity).
struct HomogeneousRealization {
  std::map<int, std::array<double, 3>> lines;
  std::array<double, 3> omega{0.0, 0.0, 1.0};

  /// Chirotope sign of three elements (columns in the given order); 0 names
  /// omega.
  int chi(int e, int f, int g) const;
};

struct PolarCoordinates {
  std::map<int, double> r;
  std::map<int, double> theta_deg;
};

/// Applies the normalization pipeline (basis change, unit scaling, rotation,
/// epsilon rotation, shear) to produce polar coordinates with r > 0 and
/// theta in (0,180) whose triangle orientations agree with the chirotope.
/// Steps already satisfied are skipped, so normalized input passes through.
/// a and b must be distinct positive cocircuits avoiding omega with
/// chi(omega, x, y) = 1 for x in a\b, y in b\a.
PolarCoordinates polar_normalize(const HomogeneousRealization& real, const SignedSet& a,
                                 const SignedSet& b);

/// Graph text format plus `order <l1> < <l2>` lines.
struct GraphWithOrder {
  DirectedGraph graph;
  std::vector<std::pair<int, int>> order_relations;

  PartialOrder order() const;
};
GraphWithOrder parse_graph_text(std::string_view text);
std::string to_string(const GraphWithOrder& g);

}  // namespace pappus
