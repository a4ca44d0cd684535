#pragma once

#include <variant>
#include <vector>

#include "pappus/matrix.hpp"

namespace pappus {

/// Dense real matrix, row-major.
struct NumericMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  NumericMatrix() = default;
  NumericMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

/// Instantiates the symbolic entries at theta. Equality rows are evaluated
/// like any other; strip them with ConstraintMatrix::strict_rows() before
/// solving a strict system.
NumericMatrix evaluate_matrix(const ConstraintMatrix& m, const ThetaVector& theta);

struct Feasible {
  std::vector<double> r;  // |r|_inf <= 1
  double slack;           // min(A r) > 0
};

/// Nonnegative, nonzero row dependency: lambda^T A = 0 within tolerance.
struct Infeasible {
  std::vector<double> lambda;  // scaled to sum 1
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const FeasibilityResult& r) {
  return std::holds_alternative<Feasible>(r);
}

/// Decides A r > 0 by maximizing t subject to A r >= t, |r|_inf <= 1 with a
/// dense two-phase simplex under Bland's rule. t above tolerance yields
/// Feasible; otherwise the dual weights of the A rows form the certificate.
/// Iteration-cap overruns and certificates that do not re-verify raise
/// SolverError instead of returning an answer.
FeasibilityResult solve_strict(const NumericMatrix& a);

/// Re-checks the defining inequalities of either branch with fresh
/// arithmetic.
bool verify_certificate(const NumericMatrix& a, const FeasibilityResult& result);

}  // namespace pappus
