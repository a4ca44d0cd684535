#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pappus/digraph.hpp"
#include "pappus/matrix.hpp"
#include "pappus/om.hpp"
#include "pappus/order.hpp"
#include "pappus/signed_set.hpp"

namespace pappus {

/// Directed graph with an edge partial order and a set A of signed triples,
/// one bundle per vertex, whose conformal composition recovers each vertex
/// cocircuit.
struct TwistedGraph {
  DirectedGraph digraph;
  PartialOrder order;              // on edge labels 1..n
  std::vector<SignedSet> triples;  // A, in row order
  std::vector<std::string> triple_vertex;  // vertex owning each triple

  int edge_count() const { return digraph.edge_count(); }
};

/// Decomposes a vertex cocircuit into |support|-2 order circuits conformal
/// to it and composing to it, by backtracking over triple covers. The strict
/// entry point requires the support to be totally ordered.
std::vector<SignedSet> split_vertex_cocircuit(const SignedSet& cv, const PartialOrder& order);

/// Constructs the twisted graph of a totally cyclic, simple,
/// three-edge-connected digraph over the given (possibly partial) edge
/// order. Fails with a named precondition when the graph or order does not
/// qualify.
TwistedGraph build_twisted(const DirectedGraph& g, const PartialOrder& order);

/// Full invariant check; `extension_sample_cap` bounds how many linear
/// extensions are tried for the strong-map condition when the order is
/// partial (exhaustive for graphs with at most 10 edges).
void validate_twisted(const TwistedGraph& t, int extension_sample_cap = 20000);

/// Reorients edges so every edge lies on a directed cycle, by composing
/// signed cycles into a full-support vector and reorienting its negative
/// part. Totally cyclic input passes through unchanged.
DirectedGraph totally_cyclic_orientation(const DirectedGraph& g);

/// The |A| x |E| matrix whose row for a triple {e,e',e''} carries
/// a(e) * sin(theta_{e''} - theta_{e'}) in column e.
ConstraintMatrix sigma_matrix(const TwistedGraph& t);

struct PositiveSequence {
  std::vector<int> row_order;  // 0-based indices into triples, length |A|
  std::vector<int> f;          // edge labels f_2..f_m, length |A|-1
};

bool validate_positive_sequence(const TwistedGraph& t, const PositiveSequence& seq);

/// Spanning-tree construction for cubic graphs, backtracking otherwise.
/// Absence of a result is not a proof that none exists.
std::optional<PositiveSequence> find_positive_sequence(const TwistedGraph& t);

/// Sigma restricted to the F columns is a simplex for every theta respecting
/// the order (decided symbolically). Strict additionally requires E \ F to
/// be totally ordered.
bool is_simplicial(const TwistedGraph& t, std::span<const int> f);
bool is_strictly_simplicial(const TwistedGraph& t, std::span<const int> f);

struct SigmaSignResult {
  int sign;               // of det Sigma[F + {x1}] at theta; 0 => insoluble
  bool predicted_soluble; // solubility of hat(A + {C}) r > 0 at theta
  int sigma_c;            // the theorem's constant for C (0 when sign is 0)
  int sigma_neg_c;        // always -sigma_c
};

/// For a strictly simplicial T with E \ F = {x1,x2,x3} and C = +-({x1,x3},
/// {x2}): evaluates the decisive determinant at theta and reports the
/// predicted solubility of the extended system.
SigmaSignResult sigma_sign(const TwistedGraph& t, std::span<const int> f, const SignedSet& c,
                           const ThetaVector& theta);

/// Row of the extended system contributed by an order circuit C at theta:
/// the coordinates of hat(C).
std::vector<double> hat_row(const SignedSet& c, const ThetaVector& theta, int n);

/// Text format: the graph/order format plus optional explicit
/// `triple <e1> <e2> <e3> <+|->` lines overriding the vertex splits
/// (+ means ({e1,e3},{e2}), - its opposite; e1 < e2 < e3 in the order).
TwistedGraph parse_twisted(std::string_view text);
std::string to_string(const TwistedGraph& t);

}  // namespace pappus
