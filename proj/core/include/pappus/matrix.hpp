#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pappus/order.hpp"
#include "pappus/sines.hpp"

namespace pappus {

enum class Orientation { Positive, Negative, Coincident };

/// Oriented triple of lines with i, j, k in angle order.
struct TriangleConstraint {
  int i, j, k;
  Orientation orientation;
};

enum class Sign { Positive, Negative, Zero, Indeterminate };

/// A matrix cell: zero, or a signed single sine sin(theta_hi - theta_lo).
class SymbolicEntry {
 public:
  SymbolicEntry() = default;  // zero
  SymbolicEntry(int sign, AnglePair pair) : sign_(sign), pair_(pair) {
    if (sign != 1 && sign != -1) throw PreconditionError("entry sign must be +1 or -1");
  }

  static SymbolicEntry zero() { return SymbolicEntry(); }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  const AnglePair& pair() const {
    if (is_zero()) throw PreconditionError("zero entry has no pair");
    return pair_;
  }
  SineSum as_sum() const {
    return is_zero() ? SineSum::zero() : SineSum::monomial(SineMonomial({pair_}), sign_);
  }
  double value(const ThetaVector& theta) const;

  bool operator==(const SymbolicEntry&) const = default;

 private:
  int sign_ = 0;
  AnglePair pair_{1, 2};
};

/// Matrix of SymbolicEntry cells with optional row/column labels; rows coming
/// from Coincident constraints are tagged as equality rows.
class ConstraintMatrix {
 public:
  ConstraintMatrix(int rows, int cols);

  int rows() const { return static_cast<int>(cells_.size()); }
  int cols() const { return cols_; }
  const SymbolicEntry& at(int r, int c) const;
  void set(int r, int c, SymbolicEntry e);

  void set_row_label(int r, std::string label);
  void set_col_label(int c, std::string label);
  const std::string& row_label(int r) const { return row_labels_[r]; }
  const std::string& col_label(int c) const { return col_labels_[c]; }
  bool has_row_labels() const;
  bool has_col_labels() const;

  void mark_equality(int r, bool eq = true);
  bool is_equality(int r) const { return equality_[r]; }
  /// Rows that are strict inequalities (equality rows dropped), labels kept.
  ConstraintMatrix strict_rows() const;

  /// Appends a row of entries (must have cols() cells).
  void append_row(std::vector<SymbolicEntry> row, std::string label = "", bool equality = false);

  bool operator==(const ConstraintMatrix&) const = default;

 private:
  int cols_;
  std::vector<std::vector<SymbolicEntry>> cells_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<bool> equality_;
};

/// The row of the linear system contributed by one oriented triangle, as a
/// dense vector of n entries. The triple must satisfy i < j < k in `order`.
std::vector<SymbolicEntry> row_for_triangle(const TriangleConstraint& t, int n,
                                            const PartialOrder& order);

/// One row per constraint, in input order. Duplicate rows are legal; the
/// count of duplicates is reported through `duplicate_warning` when given.
ConstraintMatrix build_matrix(std::span<const TriangleConstraint> constraints, int n,
                              const PartialOrder& order,
                              std::string* duplicate_warning = nullptr);

/// Selection of rows and columns (0-based), in the order given.
ConstraintMatrix submatrix(const ConstraintMatrix& m, std::span<const int> rows,
                           std::span<const int> cols);
/// Column selection by 1-based matrix column numbers, all rows.
ConstraintMatrix columns(const ConstraintMatrix& m, std::span<const int> one_based_cols);

/// Exact determinant by cofactor expansion along the sparsest row or column;
/// the result is returned in normal form.
SineSum symbolic_det(const ConstraintMatrix& m);
/// Same expansion without the final normalization; useful when the raw
/// factored shape of the determinant is itself of interest.
SineSum symbolic_det_raw(const ConstraintMatrix& m);

/// Sign determination under a partial order: definite only when every pair
/// (i,j) of every monomial has i < j in the order and all coefficients agree
/// in sign.
Sign definite_sign(const SineSum& s, const PartialOrder& order);

/// Numeric determinant of the matrix evaluated at theta.
double numeric_det(const ConstraintMatrix& m, const ThetaVector& theta);

/// An (r+1) x r matrix is a simplex when its r+1 row-deletion determinants
/// alternate in sign. The symbolic test requires each sign to be definite
/// under the order; it falls back to the normalized determinant when the raw
/// expansion is not sign-definite.
bool is_simplex(const ConstraintMatrix& m, const PartialOrder& order);
bool is_simplex_numeric(const ConstraintMatrix& m, const ThetaVector& theta);

/// Minimal-insolubility test: S = all rows of m restricted to s_cols
/// (0-based, |s_cols| = rows-1) must be a simplex, and appending any column
/// of m outside s_cols must give a singular square matrix.
bool minimal_insoluble(const ConstraintMatrix& m, std::span<const int> s_cols,
                       const PartialOrder& order);
bool minimal_insoluble_numeric(const ConstraintMatrix& m, std::span<const int> s_cols,
                               const ThetaVector& theta);

/// Text format: one line per row of `SN(i,j)` / `-SN(i,j)` / `.` tokens, an
/// optional leading `(label)` token per row, an optional `cols` header line,
/// and a trailing `==` token on equality rows. Round-trips exactly.
std::string to_string(const ConstraintMatrix& m);
ConstraintMatrix parse_matrix(std::string_view text);

}  // namespace pappus
