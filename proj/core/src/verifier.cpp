#include "pappus/verifier.hpp"

#include <cmath>
#include <sstream>

#include "pappus/lp.hpp"

namespace pappus {

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void VerificationReport::add(std::string key, bool passed, std::string detail) {
  checks.push_back(CheckResult{std::move(key), passed, std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::render() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.key;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  out << "\nsummary:\n";
  for (const auto& c : checks) out << c.key << "=" << (c.passed ? "pass" : "fail") << "\n";
  out << "overall=" << (all_passed() ? "pass" : "fail") << "\n";
  return out.str();
}

namespace {

const std::vector<TriangleConstraint>& canonical_constraints() {
  static const std::vector<TriangleConstraint> tris = {
      {3, 5, 8, Orientation::Negative},   // A
      {2, 8, 9, Orientation::Negative},   // B
      {2, 4, 6, Orientation::Positive},   // C
      {6, 7, 10, Orientation::Negative},  // D
      {1, 3, 7, Orientation::Negative},   // E
      {1, 4, 7, Orientation::Negative},   // F
      {1, 5, 9, Orientation::Positive},   // G
      {1, 5, 10, Orientation::Positive},  // H
      {1, 5, 7, Orientation::Positive},   // I
  };
  return tris;
}

constexpr const char* kRowNames = "ABCDEFGHI";

TwistedGraph canonical_twisted(const PartialOrder& order) {
  DirectedGraph g;
  g.add_edge(1, "C", "D");
  g.add_edge(2, "X", "Z");
  g.add_edge(3, "E", "C");
  g.add_edge(4, "Z", "C");
  g.add_edge(5, "D", "E");
  g.add_edge(6, "B", "Z");
  g.add_edge(7, "C", "B");
  g.add_edge(8, "E", "X");
  g.add_edge(9, "X", "D");
  g.add_edge(10, "B", "D");

  TwistedGraph t{g, order, {}, {}};
  auto add = [&](SignedSet a, std::string v) {
    t.triples.push_back(std::move(a));
    t.triple_vertex.push_back(std::move(v));
  };
  add(SignedSet({5}, {3, 8}), "E");      // row A
  add(SignedSet({8}, {2, 9}), "X");      // row B
  add(SignedSet({2, 6}, {4}), "Z");      // row C
  add(SignedSet({7}, {6, 10}), "B");     // row D
  add(SignedSet({3}, {1, 7}), "C");      // row E
  add(SignedSet({4}, {1, 7}), "C");      // row F
  add(SignedSet({1, 9}, {5}), "D");      // row G
  add(SignedSet({1, 10}, {5}), "D");     // row H
  validate_twisted(t);
  return t;
}

// Angles with theta_3 = theta_4 and theta_9 = theta_10, otherwise
// increasing: the configuration that forces the contradiction.
const ThetaVector& merged_theta() {
  static const ThetaVector th({10, 20, 30, 30, 50, 60, 70, 80, 90, 90});
  return th;
}

}  // namespace

SineSum main_expression() {
  return parse_sine_sum(
      "s(8,9)s(1,10)s(2,4)s(3,5)s(6,7)"
      " + s(4,6)s(1,9)s(7,10)s(3,5)s(2,8)"
      " - s(4,6)s(3,8)s(7,10)s(2,9)s(1,5)");
}

namespace {

CanonicalSystem build_canonical_impl() {
  CanonicalSystem sys{canonical_constraints(),
                      PartialOrder(10),
                      ConstraintMatrix(0, 0),
                      ConstraintMatrix(0, 0),
                      ConstraintMatrix(0, 0),
                      ConstraintMatrix(0, 0),
                      TwistedGraph{DirectedGraph{}, PartialOrder(0), {}, {}},
                      ThetaVector({42, 20, 62, 80, 120, 98, 158, 125, 149, 170})};
  for (const auto& t : sys.constraints) {
    sys.order.add(t.i, t.j);
    sys.order.add(t.j, t.k);
  }
  sys.m9 = build_matrix(sys.constraints, 10, sys.order);
  for (int r = 0; r < 9; ++r) sys.m9.set_row_label(r, std::string(1, kRowNames[r]));
  for (int c = 0; c < 10; ++c) sys.m9.set_col_label(c, std::to_string(c + 1));

  std::vector<int> first8{0, 1, 2, 3, 4, 5, 6, 7}, all10(10);
  for (int c = 0; c < 10; ++c) all10[static_cast<std::size_t>(c)] = c;
  sys.m8 = submatrix(sys.m9, first8, all10);
  sys.s8 = columns(sys.m8, std::vector<int>{2, 3, 4, 6, 8, 9, 10});
  sys.s9 = columns(sys.m9, std::vector<int>{2, 3, 4, 5, 6, 8, 9, 10});
  sys.twisted = canonical_twisted(sys.order);
  return sys;
}

}  // namespace

CanonicalSystem build_canonical_matrices() {
  static const CanonicalSystem cached = build_canonical_impl();
  return cached;
}

namespace {

// The eight row-deletion subdeterminants of S8, as printed products, in row
// order. The raw cofactor expansion collapses to exactly these monomials.
const std::vector<std::string>& listed_subdets() {
  static const std::vector<std::string> v = {
      "-s(4,6)s(1,7)s(1,7)s(7,10)s(2,9)s(1,5)s(1,5)",
      "s(4,6)s(1,7)s(1,7)s(7,10)s(3,5)s(1,5)s(1,5)",
      "-s(8,9)s(1,7)s(1,7)s(7,10)s(3,5)s(1,5)s(1,5)",
      "s(8,9)s(1,7)s(1,7)s(2,4)s(3,5)s(1,5)s(1,5)",
      "-s(4,6)s(5,8)s(1,7)s(7,10)s(2,9)s(1,5)s(1,5)",
      "s(8,9)s(1,7)s(2,6)s(7,10)s(3,5)s(1,5)s(1,5)",
      "-s(4,6)s(1,7)s(1,7)s(7,10)s(3,5)s(2,8)s(1,5)",
      "s(8,9)s(1,7)s(1,7)s(2,4)s(3,5)s(1,5)s(6,7)",
  };
  return v;
}

SineSum d_determinant(const CanonicalSystem& sys, const std::vector<int>& cols, bool raw) {
  ConstraintMatrix sq = columns(sys.m8, cols);
  return raw ? symbolic_det_raw(sq) : symbolic_det(sq);
}

ConstraintMatrix drop_row_copy(const ConstraintMatrix& m, int row) {
  std::vector<int> rows, cols(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    if (r != row) rows.push_back(r);
  for (int c = 0; c < m.cols(); ++c) cols[static_cast<std::size_t>(c)] = c;
  return submatrix(m, rows, cols);
}

}  // namespace

VerificationReport verify_subdeterminants() {
  VerificationReport rep;
  CanonicalSystem sys = build_canonical_matrices();

  Sign prev = Sign::Zero;
  bool alternates = true;
  for (int i = 0; i < 8; ++i) {
    SineSum raw = symbolic_det_raw(drop_row_copy(sys.s8, i));
    SineSum listed = parse_sine_sum(listed_subdets()[static_cast<std::size_t>(i)]);
    bool match = raw == listed;
    rep.add("subdet.s8." + std::to_string(i + 1), match,
            match ? to_string(raw) : "got " + to_string(raw) + " expected " + to_string(listed));
    Sign s = definite_sign(raw, sys.order);
    if (s != Sign::Positive && s != Sign::Negative) alternates = false;
    if (i > 0 && s == prev) alternates = false;
    prev = s;
  }
  rep.add("subdet.s8.alternation", alternates);
  rep.add("subdet.s8.simplex", is_simplex(sys.s8, sys.order));

  // S9: first eight row-deletion determinants are the S8 ones times
  // -s(1,7); the ninth is the three-term d5 form.
  bool first8 = true;
  SineSum minus_s17 = -SineSum::sine(1, 7);
  for (int i = 0; i < 8; ++i) {
    SineSum got = symbolic_det(drop_row_copy(sys.s9, i));
    SineSum expect =
        normalize(minus_s17 * parse_sine_sum(listed_subdets()[static_cast<std::size_t>(i)]));
    if (got != expect) first8 = false;
  }
  rep.add("subdet.s9.first-eight", first8);

  SineSum ninth = symbolic_det_raw(drop_row_copy(sys.s9, 8));
  SineSum d5_listed = parse_sine_sum(
      "s(4,6)s(1,7)s(1,7)s(3,8)s(7,10)s(2,9)s(1,5)s(1,5)"
      " - s(4,6)s(1,7)s(1,7)s(1,9)s(7,10)s(3,5)s(2,8)s(1,5)"
      " - s(8,9)s(1,7)s(1,7)s(1,10)s(2,4)s(3,5)s(1,5)s(6,7)");
  rep.add("subdet.s9.ninth", ninth == d5_listed,
          ninth == d5_listed ? "" : "got " + to_string(ninth));
  // the ninth equals -s(1,7)s(1,7)s(1,5) times the main expression
  SineSum factored = -SineSum::sine(1, 7) * SineSum::sine(1, 7) * SineSum::sine(1, 5) *
                     main_expression();
  rep.add("subdet.s9.factorization", equivalent(ninth, factored));
  // the ninth determinant flips sign with the main expression, so S9 is a
  // simplex exactly on the contradiction side
  rep.add("subdet.s9.simplex-when-expression-negative",
          is_simplex_numeric(sys.s9, merged_theta()));
  rep.add("subdet.s9.not-simplex-when-expression-positive",
          !is_simplex_numeric(sys.s9, sys.theta_star));
  return rep;
}

VerificationReport verify_d_identities() {
  VerificationReport rep;
  CanonicalSystem sys = build_canonical_matrices();

  SineSum d1 = d_determinant(sys, {1, 2, 3, 4, 6, 8, 9, 10}, /*raw=*/true);
  SineSum d5 = d_determinant(sys, {2, 3, 4, 5, 6, 8, 9, 10}, /*raw=*/true);
  SineSum d7 = d_determinant(sys, {2, 3, 4, 6, 7, 8, 9, 10}, /*raw=*/true);

  SineSum d5_listed = parse_sine_sum(
      "s(4,6)s(1,7)s(1,7)s(3,8)s(7,10)s(2,9)s(1,5)s(1,5)"
      " - s(4,6)s(1,7)s(1,7)s(1,9)s(7,10)s(3,5)s(2,8)s(1,5)"
      " - s(8,9)s(1,7)s(1,7)s(1,10)s(2,4)s(3,5)s(1,5)s(6,7)");
  rep.add("d.d5-terms", d5 == d5_listed, d5 == d5_listed ? "" : to_string(d5));

  SineSum lhs = SineSum::sine(1, 7) * SineSum::sine(1, 5) * d1;
  SineSum mid = SineSum::sine(1, 5) * SineSum::sine(5, 7) * d5;
  SineSum rhs = SineSum::sine(1, 7) * SineSum::sine(5, 7) * d7;
  bool id15 = equivalent(lhs, mid);
  bool id57 = equivalent(mid, rhs);
  rep.add("d.identity.s17s15d1-eq-s15s57d5", id15,
          id15 ? "" : "residual " + to_string(normalize(lhs - mid)));
  rep.add("d.identity.s15s57d5-eq-s17s57d7", id57,
          id57 ? "" : "residual " + to_string(normalize(mid - rhs)));

  // nine-row minors: appending column 1 or 7 to S9's columns kills the
  // determinant identically
  ConstraintMatrix m15 = columns(sys.m9, std::vector<int>{1, 2, 3, 4, 5, 6, 8, 9, 10});
  ConstraintMatrix m57 = columns(sys.m9, std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});
  SineSum d15 = symbolic_det(m15);
  SineSum d57 = symbolic_det(m57);
  rep.add("d.d15-normalizes-to-zero", d15.is_zero(), d15.is_zero() ? "" : to_string(d15));
  rep.add("d.d57-normalizes-to-zero", d57.is_zero(), d57.is_zero() ? "" : to_string(d57));

  // with the expression negative, S9 is a simplex and both appended columns
  // are singular, so the ten-line system is minimally insoluble
  std::vector<int> s9cols{1, 2, 3, 4, 5, 7, 8, 9};  // 0-based columns 2..6, 8..10
  rep.add("d.m9-minimal-insoluble-at-contradiction-theta",
          minimal_insoluble_numeric(sys.m9, s9cols, merged_theta()));
  return rep;
}

VerificationReport verify_rin_contradiction() {
  VerificationReport rep;
  SineSum expr = main_expression();
  PartialOrder natural = PartialOrder::total(10);

  rep.add("rin.unmerged-indeterminate",
          definite_sign(normalize(expr), natural) == Sign::Indeterminate);

  SineSum merged = merge_indices(merge_indices(expr, 4, 3), 10, 9);
  SineSum nf = normalize(merged);

  bool all_negative = !nf.is_zero();
  for (const auto& [m, c] : nf.terms())
    if (c > 0) all_negative = false;
  rep.add("rin.merged-all-negative", all_negative, to_string(nf));

  SineSum pp_c = parse_sine_sum(
      "-s(1,9)s(2,3)s(3,7)s(5,6)s(8,9)"
      " - s(1,9)s(2,3)s(3,6)s(5,9)s(7,8)"
      " - s(3,6)s(7,9)s(3,8)s(1,2)s(5,9)");
  rep.add("rin.matches-contradiction-form", equivalent(merged, pp_c));

  rep.add("rin.merged-definitely-negative",
          definite_sign(nf, natural) == Sign::Negative);
  return rep;
}

VerificationReport verify_second_proof() {
  VerificationReport rep;
  CanonicalSystem sys = build_canonical_matrices();
  const TwistedGraph& t = sys.twisted;

  // (a) the listed positive sequence: rows in order, F = 8,2,6,3,4,9,10
  PositiveSequence listed{{0, 1, 2, 3, 4, 5, 6, 7}, {8, 2, 6, 3, 4, 9, 10}};
  rep.add("second.positive-sequence-validates", validate_positive_sequence(t, listed));

  // (b) strictly simplicial on F = {2,3,4,6,8,9,10}; E \ F = {1,5,7}
  std::vector<int> f{2, 3, 4, 6, 8, 9, 10};
  rep.add("second.simplicial", is_simplicial(t, f));
  rep.add("second.strictly-simplicial", is_strictly_simplicial(t, f));

  // (c) the drawing's angles put d5 near -0.17
  SineSum d5 = symbolic_det(columns(sys.m8, std::vector<int>{2, 3, 4, 5, 6, 8, 9, 10}));
  double d5v = evaluate(d5, sys.theta_star);
  bool near = std::abs(d5v - (-0.17)) <= 0.03;
  rep.add("second.d5-at-theta-star", near, "d5 = " + std::to_string(d5v));

  // (d) sigma = -1 there, and the ten-line system is soluble
  SignedSet c157({1, 7}, {5});
  SigmaSignResult sig = sigma_sign(t, f, c157, sys.theta_star);
  rep.add("second.sigma-is-minus-one", sig.sign == -1 && sig.sigma_c == -1,
          "sign=" + std::to_string(sig.sign));
  rep.add("second.sigma-predicts-soluble", sig.predicted_soluble);

  FeasibilityResult lp = solve_strict(evaluate_matrix(sys.m9, sys.theta_star));
  bool feas = is_feasible(lp) && verify_certificate(evaluate_matrix(sys.m9, sys.theta_star), lp);
  rep.add("second.m9-soluble-at-theta-star", feas);

  double expr_val = evaluate(main_expression(), sys.theta_star);
  rep.add("second.main-expression-positive", expr_val > 0,
          "value = " + std::to_string(expr_val));

  // (e) the column-{2,3,4,5,6,8,9,10} determinant is -s(1,7)s(1,7)s(1,5)
  // times the main expression
  SineSum factored = -SineSum::sine(1, 7) * SineSum::sine(1, 7) * SineSum::sine(1, 5) *
                     main_expression();
  rep.add("second.d5-factorization", equivalent(d5, factored));
  return rep;
}

VerificationReport verify_all() {
  VerificationReport rep;
  rep.merge(verify_subdeterminants());
  rep.merge(verify_d_identities());
  rep.merge(verify_rin_contradiction());
  rep.merge(verify_second_proof());
  return rep;
}

}  // namespace pappus
