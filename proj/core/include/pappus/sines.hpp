#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pappus/errors.hpp"

namespace pappus {

/// Coefficients are arbitrary-precision integers: overflow is impossible by
/// construction rather than detected after the fact.
using Int = boost::multiprecision::cpp_int;

/// An unordered pair {lo, hi} of 1-based angle indices, stored with lo < hi.
/// Stands for the value sin(theta_hi - theta_lo).
struct AnglePair {
  int lo;
  int hi;

  AnglePair(int lo_, int hi_) : lo(lo_), hi(hi_) {
    if (lo < 1 || hi <= lo)
      throw PreconditionError("AnglePair requires 1 <= lo < hi, got (" +
                              std::to_string(lo) + "," + std::to_string(hi) + ")");
  }
  /// Builds the pair from indices in either order; i == j is rejected.
  static AnglePair of(int i, int j) {
    return i < j ? AnglePair(i, j) : AnglePair(j, i);
  }
  auto operator<=>(const AnglePair&) const = default;
};

/// A finite multiset of AnglePairs, kept canonically sorted. Represents the
/// product of the corresponding sines; the empty multiset is the constant 1.
class SineMonomial {
 public:
  SineMonomial() = default;
  explicit SineMonomial(std::vector<AnglePair> pairs);

  static SineMonomial one() { return SineMonomial(); }

  const std::vector<AnglePair>& pairs() const { return pairs_; }
  bool is_one() const { return pairs_.empty(); }
  int degree() const { return static_cast<int>(pairs_.size()); }
  int max_index() const;
  bool contains(const AnglePair& p) const;

  /// Multiset sum with another monomial (product of the sine values).
  SineMonomial times(const SineMonomial& other) const;
  /// Removes one copy each of a and b; they must be present.
  SineMonomial without(const AnglePair& a, const AnglePair& b) const;
  /// Adds one copy each of a and b.
  SineMonomial with(const AnglePair& a, const AnglePair& b) const;

  auto operator<=>(const SineMonomial&) const = default;

 private:
  std::vector<AnglePair> pairs_;  // sorted
};

/// Angle assignment in degrees, indexed from 1.
class ThetaVector {
 public:
  ThetaVector() = default;
  /// values[i] becomes the angle of index i+1.
  explicit ThetaVector(const std::vector<double>& values);

  void set(int index, double degrees);
  bool contains(int index) const { return angles_.count(index) != 0; }
  /// Throws naming the index if it is not assigned.
  double at(int index) const;
  /// Copy with one angle replaced.
  ThetaVector with(int index, double degrees) const;
  const std::map<int, double>& angles() const { return angles_; }

 private:
  std::map<int, double> angles_;
};

/// An integer combination of sine monomials. Terms are kept in a canonical
/// order and zero coefficients are never stored, so equal values built along
/// different routes compare equal once normalized.
class SineSum {
 public:
  SineSum() = default;

  static SineSum zero() { return SineSum(); }
  static SineSum monomial(SineMonomial m, Int coeff = 1);
  /// Single sine factor sin(theta_hi - theta_lo).
  static SineSum sine(int i, int j) {
    return monomial(SineMonomial({AnglePair::of(i, j)}));
  }
  static SineSum constant(Int k) { return monomial(SineMonomial::one(), std::move(k)); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<SineMonomial, Int>& terms() const { return terms_; }
  int max_index() const;

  void add_term(const SineMonomial& m, const Int& coeff);

  SineSum operator-() const;
  SineSum operator+(const SineSum& other) const;
  SineSum operator-(const SineSum& other) const;
  SineSum operator*(const SineSum& other) const;

  bool operator==(const SineSum&) const = default;

 private:
  std::map<SineMonomial, Int> terms_;
};

/// True when no two pairs of the monomial interleave; such monomials admit no
/// further expansion.
bool is_normal(const SineMonomial& m);

/// The smallest interleaved pair of pairs ({a,c},{b,d}) with a<b<c<d, or
/// nothing if the monomial is normal. The choice rule is: scan pairs in
/// canonical order and return the lexicographically first hit, so runs are
/// reproducible.
std::optional<std::pair<AnglePair, AnglePair>> find_expandable(const SineMonomial& m);

/// All interleaved pairs of pairs of m, in the deterministic scan order.
std::vector<std::pair<AnglePair, AnglePair>> expandable_sites(const SineMonomial& m);

/// Rewrites sin(a,c)sin(b,d) -> sin(a,b)sin(c,d) + sin(a,d)sin(b,c) inside m,
/// for target = ({a,c},{b,d}) with a<b<c<d. Both pairs must occur in m.
SineSum expand_once(const SineMonomial& m, const std::pair<AnglePair, AnglePair>& target);

/// Fully expands every monomial; the result has no expandable monomial and is
/// independent of expansion order.
SineSum normalize(const SineSum& s);

/// Normalization driven by an external choice of what to expand next: pick(n)
/// must return an index in [0, n). Used to exercise confluence; the result
/// always equals normalize(s).
SineSum normalize_with_selector(const SineSum& s, const std::function<std::size_t(std::size_t)>& pick);

/// True iff s1 - s2 normalizes to the empty sum.
bool equivalent(const SineSum& s1, const SineSum& s2);

double evaluate(const SineMonomial& m, const ThetaVector& theta);
double evaluate(const SineSum& s, const ThetaVector& theta);

/// Replaces every occurrence of index `from` with `to`. Pairs collapsing to
/// {i,i} annihilate their monomial (sin 0 = 0).
SineSum merge_indices(const SineSum& s, int from, int to);

/// Canonical text form, e.g. "s(1,2)s(3,4) - 2*s(1,4)"; empty sum prints "0".
std::string to_string(const SineSum& s);
std::string to_string(const SineMonomial& m);

/// Parses the grammar emitted by to_string; also accepts optional '*' between
/// all factors. Round-trips exactly.
SineSum parse_sine_sum(std::string_view text);

}  // namespace pappus
