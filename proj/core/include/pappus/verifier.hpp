#pragma once

#include <string>
#include <vector>

#include "pappus/matrix.hpp"
#include "pappus/twisted.hpp"

namespace pappus {

struct CheckResult {
  std::string key;   // stable machine-readable name
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  void add(std::string key, bool passed, std::string detail = "");
  void merge(const VerificationReport& other);
  /// One "[PASS|FAIL] key  detail" line per check plus a summary block of
  /// `key=pass|fail` lines.
  std::string render() const;
};

/// The canonical ten-line system: the nine oriented triangles, their
/// transitively closed angle order, and the standard submatrices.
struct CanonicalSystem {
  std::vector<TriangleConstraint> constraints;
  PartialOrder order;
  ConstraintMatrix m9;  // 9 x 10, rows A..I
  ConstraintMatrix m8;  // rows A..H
  ConstraintMatrix s8;  // m8 columns 2,3,4,6,8,9,10
  ConstraintMatrix s9;  // m9 columns 2,3,4,5,6,8,9,10

  /// The twisted graph behind rows A..H, with the canonical partial order.
  TwistedGraph twisted;
  /// The angles measured from the arrangement drawing, rows' theta*.
  ThetaVector theta_star;
};

CanonicalSystem build_canonical_matrices();

/// The three-term expression whose positivity the nine triangles force.
SineSum main_expression();

VerificationReport verify_subdeterminants();
VerificationReport verify_d_identities();
VerificationReport verify_rin_contradiction();
VerificationReport verify_second_proof();

/// Runs the four suites above.
VerificationReport verify_all();

}  // namespace pappus
