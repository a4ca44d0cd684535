#include "pappus/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace pappus {

double SymbolicEntry::value(const ThetaVector& theta) const {
  if (is_zero()) return 0.0;
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  return sign_ * std::sin((theta.at(pair_.hi) - theta.at(pair_.lo)) * kDegToRad);
}

ConstraintMatrix::ConstraintMatrix(int rows, int cols) : cols_(cols) {
  if (rows < 0 || cols < 0) throw PreconditionError("matrix dimensions must be nonnegative");
  cells_.assign(rows, std::vector<SymbolicEntry>(cols));
  row_labels_.assign(rows, "");
  equality_.assign(rows, false);
  col_labels_.assign(cols, "");
}

const SymbolicEntry& ConstraintMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows() || c < 0 || c >= cols())
    throw PreconditionError("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") out of range");
  return cells_[r][c];
}

void ConstraintMatrix::set(int r, int c, SymbolicEntry e) {
  if (r < 0 || r >= rows() || c < 0 || c >= cols())
    throw PreconditionError("matrix index out of range");
  cells_[r][c] = e;
}

void ConstraintMatrix::set_row_label(int r, std::string label) { row_labels_.at(r) = std::move(label); }
void ConstraintMatrix::set_col_label(int c, std::string label) { col_labels_.at(c) = std::move(label); }

bool ConstraintMatrix::has_row_labels() const {
  return std::any_of(row_labels_.begin(), row_labels_.end(),
                     [](const std::string& s) { return !s.empty(); });
}
bool ConstraintMatrix::has_col_labels() const {
  return std::any_of(col_labels_.begin(), col_labels_.end(),
                     [](const std::string& s) { return !s.empty(); });
}

void ConstraintMatrix::mark_equality(int r, bool eq) { equality_.at(r) = eq; }

ConstraintMatrix ConstraintMatrix::strict_rows() const {
  ConstraintMatrix out(0, cols_);
  out.col_labels_ = col_labels_;
  for (int r = 0; r < rows(); ++r)
    if (!equality_[r]) out.append_row(cells_[r], row_labels_[r], false);
  return out;
}

void ConstraintMatrix::append_row(std::vector<SymbolicEntry> row, std::string label, bool equality) {
  if (static_cast<int>(row.size()) != cols_)
    throw PreconditionError("row width " + std::to_string(row.size()) + " != matrix cols " +
                            std::to_string(cols_));
  cells_.push_back(std::move(row));
  row_labels_.push_back(std::move(label));
  equality_.push_back(equality);
}

std::vector<SymbolicEntry> row_for_triangle(const TriangleConstraint& t, int n,
                                            const PartialOrder& order) {
  auto check = [&](int a, int b) {
    if (!order.less(a, b))
      throw PreconditionError("triangle (" + std::to_string(t.i) + "," + std::to_string(t.j) +
                              "," + std::to_string(t.k) + ") not ordered: need " +
                              std::to_string(a) + " < " + std::to_string(b));
  };
  check(t.i, t.j);
  check(t.j, t.k);
  if (t.i < 1 || t.k > n || t.j < 1 || t.j > n || t.i > n || t.k < 1)
    throw PreconditionError("triangle index outside 1.." + std::to_string(n));

  // entry at column a is sign * sin(theta_c - theta_b) for the other two
  // members b < c in the order; folded so the stored pair has lo < hi.
  auto entry = [&](int s, int b, int c) {
    if (b < c) return SymbolicEntry(s, AnglePair(b, c));
    return SymbolicEntry(-s, AnglePair(c, b));
  };
  int s = t.orientation == Orientation::Negative ? -1 : 1;
  std::vector<SymbolicEntry> row(static_cast<std::size_t>(n));
  row[t.i - 1] = entry(s, t.j, t.k);
  row[t.j - 1] = entry(-s, t.i, t.k);
  row[t.k - 1] = entry(s, t.i, t.j);
  return row;
}

ConstraintMatrix build_matrix(std::span<const TriangleConstraint> constraints, int n,
                              const PartialOrder& order, std::string* duplicate_warning) {
  ConstraintMatrix m(0, n);
  for (const auto& t : constraints)
    m.append_row(row_for_triangle(t, n, order), "", t.orientation == Orientation::Coincident);
  if (duplicate_warning) {
    duplicate_warning->clear();
    for (int r = 0; r < m.rows(); ++r)
      for (int r2 = r + 1; r2 < m.rows(); ++r2) {
        bool same = true;
        for (int c = 0; c < n && same; ++c) same = m.at(r, c) == m.at(r2, c);
        if (same)
          *duplicate_warning += "rows " + std::to_string(r + 1) + " and " +
                                std::to_string(r2 + 1) + " are identical\n";
      }
  }
  return m;
}

ConstraintMatrix submatrix(const ConstraintMatrix& m, std::span<const int> rows,
                           std::span<const int> cols) {
  ConstraintMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    if (cols[ci] < 0 || cols[ci] >= m.cols())
      throw PreconditionError("column index " + std::to_string(cols[ci]) + " out of range");
    out.set_col_label(static_cast<int>(ci), m.col_label(cols[ci]));
  }
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (rows[ri] < 0 || rows[ri] >= m.rows())
      throw PreconditionError("row index " + std::to_string(rows[ri]) + " out of range");
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
      out.set(static_cast<int>(ri), static_cast<int>(ci), m.at(rows[ri], cols[ci]));
    out.set_row_label(static_cast<int>(ri), m.row_label(rows[ri]));
    out.mark_equality(static_cast<int>(ri), m.is_equality(rows[ri]));
  }
  return out;
}

ConstraintMatrix columns(const ConstraintMatrix& m, std::span<const int> one_based_cols) {
  std::vector<int> rows(m.rows());
  for (int r = 0; r < m.rows(); ++r) rows[r] = r;
  std::vector<int> cols;
  cols.reserve(one_based_cols.size());
  for (int c : one_based_cols) cols.push_back(c - 1);
  return submatrix(m, rows, cols);
}

namespace {

// Cofactor expansion over index subsets; rows/cols are views into m.
SineSum det_recurse(const ConstraintMatrix& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return SineSum::constant(1);

  // pick the sparsest line to expand along
  int best_count = static_cast<int>(k) + 1;
  std::size_t best_idx = 0;
  bool best_is_row = true;
  for (std::size_t i = 0; i < k; ++i) {
    int cnt = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (!m.at(rows[i], cols[j]).is_zero()) ++cnt;
    if (cnt < best_count) {
      best_count = cnt;
      best_idx = i;
      best_is_row = true;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    int cnt = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (!m.at(rows[i], cols[j]).is_zero()) ++cnt;
    if (cnt < best_count) {
      best_count = cnt;
      best_idx = j;
      best_is_row = false;
    }
  }
  if (best_count == 0) return SineSum::zero();

  SineSum acc;
  if (best_is_row) {
    const int r = rows[best_idx];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best_idx));
    for (std::size_t j = 0; j < k; ++j) {
      const SymbolicEntry& e = m.at(r, cols[j]);
      if (e.is_zero()) continue;
      const int c = cols[j];
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
      SineSum minor = det_recurse(m, rows, cols);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(j), c);
      int sgn = ((best_idx + j) % 2 == 0) ? 1 : -1;
      acc = acc + SineSum::monomial(SineMonomial({e.pair()}), Int(sgn * e.sign())) * minor;
    }
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(best_idx), r);
  } else {
    const int c = cols[best_idx];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best_idx));
    for (std::size_t i = 0; i < k; ++i) {
      const SymbolicEntry& e = m.at(rows[i], c);
      if (e.is_zero()) continue;
      const int r = rows[i];
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
      SineSum minor = det_recurse(m, rows, cols);
      rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(i), r);
      int sgn = ((i + best_idx) % 2 == 0) ? 1 : -1;
      acc = acc + SineSum::monomial(SineMonomial({e.pair()}), Int(sgn * e.sign())) * minor;
    }
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(best_idx), c);
  }
  return acc;
}

ConstraintMatrix drop_row(const ConstraintMatrix& m, int row) {
  std::vector<int> rows;
  for (int r = 0; r < m.rows(); ++r)
    if (r != row) rows.push_back(r);
  std::vector<int> cols(m.cols());
  for (int c = 0; c < m.cols(); ++c) cols[c] = c;
  return submatrix(m, rows, cols);
}

// Hadamard bound of the evaluated matrix; 1 for the empty matrix. Used to
// scale zero tolerances for numeric determinants.
double det_scale(const ConstraintMatrix& m, const ThetaVector& theta) {
  double bound = 1.0;
  for (int r = 0; r < m.rows(); ++r) {
    double norm2 = 0.0;
    for (int c = 0; c < m.cols(); ++c) {
      double v = m.at(r, c).value(theta);
      norm2 += v * v;
    }
    bound *= std::sqrt(norm2);
  }
  return std::max(bound, 1.0);
}

constexpr double kZeroTolerance = 1e-9;

int signum(double x, double tol) {
  if (std::abs(x) <= tol) return 0;
  return x > 0 ? 1 : -1;
}

}  // namespace

SineSum symbolic_det_raw(const ConstraintMatrix& m) {
  if (m.rows() != m.cols())
    throw PreconditionError("determinant of non-square matrix (" + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ")");
  std::vector<int> rows(m.rows()), cols(m.cols());
  for (int r = 0; r < m.rows(); ++r) rows[r] = r;
  for (int c = 0; c < m.cols(); ++c) cols[c] = c;
  return det_recurse(m, rows, cols);
}

SineSum symbolic_det(const ConstraintMatrix& m) { return normalize(symbolic_det_raw(m)); }

Sign definite_sign(const SineSum& s, const PartialOrder& order) {
  if (s.is_zero()) return Sign::Zero;
  bool any_pos = false, any_neg = false;
  for (const auto& [m, c] : s.terms()) {
    for (const auto& p : m.pairs())
      if (!order.less(p.lo, p.hi)) return Sign::Indeterminate;
    (c > 0 ? any_pos : any_neg) = true;
    if (any_pos && any_neg) return Sign::Indeterminate;
  }
  return any_pos ? Sign::Positive : Sign::Negative;
}

double numeric_det(const ConstraintMatrix& m, const ThetaVector& theta) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of non-square matrix");
  const int n = m.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[r][c] = m.at(r, c).value(theta);
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int r = k + 1; r < n; ++r) {
      double f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

namespace {

// Sign of one row-deletion determinant for the symbolic simplex test. The raw
// cofactor expansion usually keeps the factored shape whose pairs are all
// order-comparable; if not, the normal form gets a second chance.
Sign subdet_sign(const ConstraintMatrix& m, int drop, const PartialOrder& order) {
  SineSum raw = symbolic_det_raw(drop_row(m, drop));
  Sign s = definite_sign(raw, order);
  if (s == Sign::Indeterminate) s = definite_sign(normalize(raw), order);
  return s;
}

bool alternating(const std::vector<Sign>& signs) {
  for (const Sign s : signs)
    if (s != Sign::Positive && s != Sign::Negative) return false;
  for (std::size_t i = 0; i + 1 < signs.size(); ++i)
    if (signs[i] == signs[i + 1]) return false;
  return true;
}

}  // namespace

bool is_simplex(const ConstraintMatrix& m, const PartialOrder& order) {
  if (m.rows() != m.cols() + 1)
    throw PreconditionError("simplex test needs r+1 rows by r columns, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  std::vector<Sign> signs;
  for (int r = 0; r < m.rows(); ++r) signs.push_back(subdet_sign(m, r, order));
  return alternating(signs);
}

bool is_simplex_numeric(const ConstraintMatrix& m, const ThetaVector& theta) {
  if (m.rows() != m.cols() + 1)
    throw PreconditionError("simplex test needs r+1 rows by r columns, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  std::vector<Sign> signs;
  for (int r = 0; r < m.rows(); ++r) {
    ConstraintMatrix sub = drop_row(m, r);
    double d = numeric_det(sub, theta);
    switch (signum(d, kZeroTolerance * det_scale(sub, theta))) {
      case 0: signs.push_back(Sign::Zero); break;
      case 1: signs.push_back(Sign::Positive); break;
      default: signs.push_back(Sign::Negative); break;
    }
  }
  return alternating(signs);
}

namespace {

// Shared scaffolding for the two minimal-insolubility variants.
template <typename SimplexFn, typename SingularFn>
bool minimal_insoluble_impl(const ConstraintMatrix& m, std::span<const int> s_cols,
                            SimplexFn&& simplex_ok, SingularFn&& singular) {
  const int rows = m.rows();
  if (static_cast<int>(s_cols.size()) != rows - 1)
    throw PreconditionError("S must select rows-1 = " + std::to_string(rows - 1) +
                            " columns, got " + std::to_string(s_cols.size()));
  std::vector<int> all_rows(rows);
  for (int r = 0; r < rows; ++r) all_rows[r] = r;
  ConstraintMatrix s = submatrix(m, all_rows, s_cols);
  if (!simplex_ok(s)) return false;

  std::set<int> inside(s_cols.begin(), s_cols.end());
  for (int c = 0; c < m.cols(); ++c) {
    if (inside.count(c)) continue;  // repeated column, trivially singular
    std::vector<int> cols(s_cols.begin(), s_cols.end());
    cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    if (!singular(submatrix(m, all_rows, cols))) return false;
  }
  return true;
}

}  // namespace

bool minimal_insoluble(const ConstraintMatrix& m, std::span<const int> s_cols,
                       const PartialOrder& order) {
  return minimal_insoluble_impl(
      m, s_cols, [&](const ConstraintMatrix& s) { return is_simplex(s, order); },
      [&](const ConstraintMatrix& sq) { return symbolic_det(sq).is_zero(); });
}

bool minimal_insoluble_numeric(const ConstraintMatrix& m, std::span<const int> s_cols,
                               const ThetaVector& theta) {
  return minimal_insoluble_impl(
      m, s_cols, [&](const ConstraintMatrix& s) { return is_simplex_numeric(s, theta); },
      [&](const ConstraintMatrix& sq) {
        return std::abs(numeric_det(sq, theta)) <= kZeroTolerance * det_scale(sq, theta);
      });
}

std::string to_string(const ConstraintMatrix& m) {
  std::ostringstream out;
  if (m.has_col_labels()) {
    out << "cols";
    for (int c = 0; c < m.cols(); ++c) out << " (" << m.col_label(c) << ")";
    out << "\n";
  }
  for (int r = 0; r < m.rows(); ++r) {
    bool first = true;
    if (m.has_row_labels()) {
      out << "(" << m.row_label(r) << ")";
      first = false;
    }
    for (int c = 0; c < m.cols(); ++c) {
      if (!first) out << " ";
      first = false;
      const SymbolicEntry& e = m.at(r, c);
      if (e.is_zero())
        out << ".";
      else
        out << (e.sign() < 0 ? "-" : "") << "SN(" << e.pair().lo << "," << e.pair().hi << ")";
    }
    if (m.is_equality(r)) out << " ==";
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

SymbolicEntry parse_entry(const std::string& tok, int line_no) {
  std::string body = tok;
  int sign = 1;
  if (!body.empty() && body[0] == '-') {
    sign = -1;
    body = body.substr(1);
  }
  int i = 0, j = 0;
  if (std::sscanf(body.c_str(), "SN(%d,%d)", &i, &j) != 2 || i >= j)
    throw ParseError("line " + std::to_string(line_no) + ": bad matrix entry '" + tok + "'");
  return SymbolicEntry(sign, AnglePair(i, j));
}

}  // namespace

ConstraintMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::vector<std::string> col_labels;
  struct Row {
    std::string label;
    std::vector<SymbolicEntry> entries;
    bool equality = false;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "cols") {
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const std::string& tok = tokens[t];
        if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
          throw ParseError("line " + std::to_string(line_no) + ": bad column label '" + tok + "'");
        col_labels.push_back(tok.substr(1, tok.size() - 2));
      }
      continue;
    }
    Row row;
    std::size_t t = 0;
    if (tokens[0].front() == '(' && tokens[0].back() == ')') {
      row.label = tokens[0].substr(1, tokens[0].size() - 2);
      t = 1;
    }
    for (; t < tokens.size(); ++t) {
      if (tokens[t] == "==") {
        row.equality = true;
        if (t + 1 != tokens.size())
          throw ParseError("line " + std::to_string(line_no) + ": '==' must end the row");
        break;
      }
      if (tokens[t] == ".")
        row.entries.push_back(SymbolicEntry::zero());
      else
        row.entries.push_back(parse_entry(tokens[t], line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix text contains no rows");
  const int cols = static_cast<int>(rows[0].entries.size());
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (static_cast<int>(rows[r].entries.size()) != cols)
      throw ParseError("row " + std::to_string(r + 1) + " has " +
                       std::to_string(rows[r].entries.size()) + " entries, expected " +
                       std::to_string(cols));
  if (!col_labels.empty() && static_cast<int>(col_labels.size()) != cols)
    throw ParseError("column label count does not match row width");

  ConstraintMatrix m(0, cols);
  for (auto& row : rows) m.append_row(std::move(row.entries), row.label, row.equality);
  for (std::size_t c = 0; c < col_labels.size(); ++c)
    m.set_col_label(static_cast<int>(c), col_labels[c]);
  return m;
}

}  // namespace pappus
