#include "pappus/om.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pappus {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

std::vector<SignedSet> circuits_of_order(std::span<const int> elements) {
  std::vector<SignedSet> out;
  const std::size_t n = elements.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        SignedSet c({elements[i], elements[k]}, {elements[j]});
        out.push_back(c);
        out.push_back(c.opposite());
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedSet> cocircuits_of_order(std::span<const int> elements) {
  std::vector<SignedSet> out;
  const std::size_t n = elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::set<int> below(elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(i));
    std::set<int> above(elements.begin() + static_cast<std::ptrdiff_t>(i) + 1, elements.end());
    SignedSet c(std::move(below), std::move(above));
    if (c.empty()) continue;  // n = 1: no cocircuit
    out.push_back(c);
    out.push_back(c.opposite());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<SignedSet> circuits_of_total_order(int n) {
  std::vector<int> e(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  return circuits_of_order(e);
}

std::vector<SignedSet> cocircuits_of_total_order(int n) {
  std::vector<int> e(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
  return cocircuits_of_order(e);
}

std::vector<SignedSet> circuits_of_partial_order(const PartialOrder& order) {
  std::vector<SignedSet> out;
  const int n = order.size();
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z)
        if (order.less(x, y) && order.less(y, z)) {
          out.emplace_back(std::set<int>{x, z}, std::set<int>{y});
          out.emplace_back(std::set<int>{y}, std::set<int>{x, z});
        }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// A sign pattern (read along the order restricted to a cut's support) is a
// vector of the order matroid iff it is orthogonal to every lower/upper
// split and every puncture of that restriction. Equivalent to checking the
// full-ground-set cocircuits, since elements outside the support only shift
// the split point.
bool pattern_is_vector(const std::vector<int>& signs) {
  const std::size_t k = signs.size();
  if (k == 0) return true;
  // splits: elements at positions < t count +, >= t count -
  for (std::size_t t = 0; t <= k; ++t) {
    bool agree = false, disagree = false;
    for (std::size_t i = 0; i < k; ++i) {
      int c = i < t ? 1 : -1;
      (signs[i] * c > 0 ? agree : disagree) = true;
    }
    if (!(agree && disagree)) return false;
  }
  // punctures: position j removed, earlier +, later -
  for (std::size_t j = 0; j < k; ++j) {
    bool agree = false, disagree = false, any = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      any = true;
      int c = i < j ? 1 : -1;
      (signs[i] * c > 0 ? agree : disagree) = true;
    }
    if (any && !(agree && disagree)) return false;
  }
  return true;
}

std::vector<int> restrict_pattern(const SignedSet& cut, std::span<const int> order) {
  std::vector<int> signs;
  for (int e : order) {
    int s = cut.sign(e);
    if (s != 0) signs.push_back(s);
  }
  return signs;
}

}  // namespace

bool is_order_vector(const SignedSet& x, std::span<const int> order) {
  return pattern_is_vector(restrict_pattern(x, order));
}

bool strong_map_exists(const DirectedGraph& g, std::span<const int> order) {
  std::vector<int> labels(order.begin(), order.end());
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected;
  for (const Edge& e : g.edges()) expected.push_back(e.label);
  if (sorted != expected)
    throw PreconditionError("order must list every edge label exactly once");

  for (const SignedSet& cut : graph_cocircuits(g))
    if (!is_order_vector(cut, labels)) return false;
  return true;
}

std::optional<std::vector<int>> find_compatible_total_order(const DirectedGraph& g) {
  if (g.vertices().size() < 3)
    throw PreconditionError("graph too small for a compatible order search");
  if (!is_totally_cyclic(g)) throw PreconditionError("graph must be totally cyclic");
  if (!three_edge_connected(g)) throw PreconditionError("graph must be three-edge-connected");

  const auto cuts = graph_cocircuits(g);
  std::vector<int> labels;
  for (const Edge& e : g.edges()) labels.push_back(e.label);

  std::vector<int> prefix;
  std::set<int> placed;
  long long budget = 2'000'000;

  std::function<bool()> rec = [&]() -> bool {
    if (--budget < 0) throw SearchLimitError("order search exceeded its node cap");
    if (prefix.size() == labels.size()) return true;
    for (int next : labels) {
      if (placed.count(next)) continue;
      prefix.push_back(next);
      placed.insert(next);
      bool ok = true;
      // check every cut whose support just became fully placed
      for (const SignedSet& cut : cuts) {
        auto supp = cut.support();
        if (!supp.count(next)) continue;
        bool complete = std::all_of(supp.begin(), supp.end(),
                                    [&](int e) { return placed.count(e) != 0; });
        if (complete && !is_order_vector(cut, prefix)) {
          ok = false;
          break;
        }
      }
      if (ok && rec()) return true;
      prefix.pop_back();
      placed.erase(next);
    }
    return false;
  };
  if (rec()) return prefix;
  return std::nullopt;
}

std::vector<double> hat_circuit(const SignedSet& c, const ThetaVector& theta, int n) {
  auto supp = c.support();
  if (supp.size() != 3)
    throw PreconditionError("hat_circuit needs a three-element circuit");
  std::vector<int> e(supp.begin(), supp.end());  // ascending: i < j < k
  int i = e[0], j = e[1], k = e[2];
  int s = c.sign(i);
  bool plus_form = s == 1 && c.sign(j) == -1 && c.sign(k) == 1;
  bool minus_form = s == -1 && c.sign(j) == 1 && c.sign(k) == -1;
  if (!plus_form && !minus_form)
    throw PreconditionError("signed set " + to_string(c) + " is not an order circuit");
  if (k > n) throw PreconditionError("circuit element exceeds ground set size");
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  auto sn = [&](int a, int b) { return std::sin((theta.at(b) - theta.at(a)) * kDegToRad); };
  x[static_cast<std::size_t>(i - 1)] = s * sn(j, k);
  x[static_cast<std::size_t>(j - 1)] = -s * sn(i, k);
  x[static_cast<std::size_t>(k - 1)] = s * sn(i, j);
  return x;
}

std::vector<double> hat_cocircuit(const SignedSet& c, const ThetaVector& theta, int n) {
  // identify the pivot i: support must be everything else, lower part one
  // sign and upper part the other
  int pivot = 0;
  for (int i = 1; i <= n; ++i)
    if (c.sign(i) == 0) {
      if (pivot != 0) throw PreconditionError("cocircuit must omit exactly one element");
      pivot = i;
    }
  if (pivot == 0) throw PreconditionError("cocircuit must omit exactly one element");
  int s = 0;  // +1 for +C*_i (lower part positive)
  for (int e = 1; e <= n; ++e) {
    if (e == pivot) continue;
    int expect = e < pivot ? 1 : -1;
    if (s == 0) s = c.sign(e) * expect;
    if (c.sign(e) != s * expect)
      throw PreconditionError("signed set " + to_string(c) + " is not an order cocircuit");
  }
  if (s == 0) s = 1;  // n == 1
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int h = 1; h <= n; ++h)
    x[static_cast<std::size_t>(h - 1)] =
        s * std::sin((theta.at(pivot) - theta.at(h)) * kDegToRad);
  return x;
}

int rank_of_span(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<std::vector<double>> a = vectors;
  const std::size_t rows = a.size(), cols = a[0].size();
  for (const auto& row : a)
    if (row.size() != cols) throw PreconditionError("vectors must share one dimension");
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double tol = 1e-8 * scale;
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    for (std::size_t r = piv + 1; r < rows; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) <= tol) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      double f = a[r][c] / a[static_cast<std::size_t>(rank)][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[static_cast<std::size_t>(rank)][cc];
    }
    ++rank;
  }
  return rank;
}

namespace {

double det3(const std::array<double, 3>& a, const std::array<double, 3>& b,
            const std::array<double, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

int sign_of(double x, double tol = 1e-12) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

std::array<double, 3> matvec(const std::array<std::array<double, 3>, 3>& p,
                             const std::array<double, 3>& v) {
  std::array<double, 3> out{};
  for (int r = 0; r < 3; ++r)
    out[static_cast<std::size_t>(r)] = p[static_cast<std::size_t>(r)][0] * v[0] +
                                       p[static_cast<std::size_t>(r)][1] * v[1] +
                                       p[static_cast<std::size_t>(r)][2] * v[2];
  return out;
}

std::array<std::array<double, 3>, 3> inverse3(const std::array<std::array<double, 3>, 3>& m) {
  double det = det3({m[0][0], m[1][0], m[2][0]}, {m[0][1], m[1][1], m[2][1]},
                    {m[0][2], m[1][2], m[2][2]});
  if (std::abs(det) < 1e-14) throw PreconditionError("basis change matrix is singular");
  std::array<std::array<double, 3>, 3> inv{};
  auto cof = [&](int r, int c) {
    int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
    return m[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)] *
               m[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] -
           m[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c2)] *
               m[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c1)];
  };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = cof(r, c) / det;
  return inv;
}

}  // namespace

int HomogeneousRealization::chi(int e, int f, int g) const {
  auto get = [&](int idx) -> const std::array<double, 3>& {
    if (idx == 0) return omega;
    auto it = lines.find(idx);
    if (it == lines.end())
      throw PreconditionError("no element " + std::to_string(idx) + " in the realization");
    return it->second;
  };
  return sign_of(det3(get(e), get(f), get(g)));
}

PolarCoordinates polar_normalize(const HomogeneousRealization& input, const SignedSet& a,
                                 const SignedSet& b) {
  if (!a.is_positive() || !b.is_positive())
    throw PreconditionError("hypothesis failed: cocircuits A and B must be positive");
  if (a == b) throw PreconditionError("hypothesis failed: cocircuits A and B must be distinct");

  HomogeneousRealization real = input;
  for (const auto& [e, v] : real.lines)
    if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0)
      throw PreconditionError("element " + std::to_string(e) + " is the zero vector");
  // parallel or antiparallel to omega <=> the cross product vanishes
  auto cross_norm = [&](const std::array<double, 3>& u, const std::array<double, 3>& w) {
    double cx = u[1] * w[2] - u[2] * w[1];
    double cy = u[2] * w[0] - u[0] * w[2];
    double cz = u[0] * w[1] - u[1] * w[0];
    return std::sqrt(cx * cx + cy * cy + cz * cz);
  };
  for (const auto& [e, v] : real.lines)
    if (cross_norm(v, real.omega) < 1e-12)
      throw PreconditionError("hypothesis failed: element " + std::to_string(e) +
                              " is parallel or antiparallel to omega");

  std::set<int> a_not_b, b_not_a;
  for (int e : a.positive())
    if (!b.sign(e)) a_not_b.insert(e);
  for (int e : b.positive())
    if (!a.sign(e)) b_not_a.insert(e);
  if (a.sign(0) || b.sign(0) || a_not_b.empty() || b_not_a.empty())
    throw PreconditionError("hypothesis failed: cocircuits must avoid omega and differ");
  for (int x : a_not_b)
    for (int y : b_not_a)
      if (real.chi(0, x, y) != 1)
        throw PreconditionError("hypothesis failed: chi(omega," + std::to_string(x) + "," +
                                std::to_string(y) + ") != 1");

  auto apply = [&](const std::array<std::array<double, 3>, 3>& p) {
    for (auto& [e, v] : real.lines) v = matvec(p, v);
    real.omega = matvec(p, real.omega);
  };

  // 1. basis change sending v_a -> e1, v_b -> e2, omega -> e3
  if (!(real.omega[0] == 0.0 && real.omega[1] == 0.0 && real.omega[2] > 0.0)) {
    int ea = *a_not_b.begin(), eb = *b_not_a.begin();
    const auto& va = real.lines.at(ea);
    const auto& vb = real.lines.at(eb);
    std::array<std::array<double, 3>, 3> basis = {
        std::array<double, 3>{va[0], vb[0], real.omega[0]},
        std::array<double, 3>{va[1], vb[1], real.omega[1]},
        std::array<double, 3>{va[2], vb[2], real.omega[2]}};
    apply(inverse3(basis));
  }
  real.omega = {0.0, 0.0, 1.0};

  // 2. scale every line to a unit (x,y) part
  for (auto& [e, v] : real.lines) {
    double norm = std::hypot(v[0], v[1]);
    if (norm < 1e-14)
      throw PreconditionError("element " + std::to_string(e) + " collapsed onto omega");
    for (double& c : v) c /= norm;
  }

  auto theta_of = [](const std::array<double, 3>& v) {
    // x = -cos(theta), y = -sin(theta)
    double t = std::atan2(-v[1], -v[0]) / kDegToRad;
    if (t < 0) t += 360.0;
    return t;
  };

  // 4. rotate the minimal element to angle zero so every angle lands in
  // [0,180)
  auto in_upper_range = [&]() {
    for (const auto& [e, v] : real.lines) {
      double t = theta_of(v);
      if (!(t >= 0.0 && t < 180.0)) return false;
    }
    return true;
  };
  if (!in_upper_range()) {
    // minimal element under chi(omega, ., .)
    int min_e = 0;
    for (const auto& [e, v] : real.lines) {
      bool minimal = true;
      for (const auto& [f, w] : real.lines)
        if (f != e && real.chi(0, e, f) < 0) minimal = false;
      if (minimal) {
        min_e = e;
        break;
      }
    }
    if (min_e == 0)
      throw PreconditionError("hypothesis failed: no angle-minimal element exists");
    double t = theta_of(real.lines.at(min_e)) * kDegToRad;
    apply({std::array<double, 3>{std::cos(t), std::sin(t), 0.0},
           std::array<double, 3>{-std::sin(t), std::cos(t), 0.0},
           std::array<double, 3>{0.0, 0.0, 1.0}});
    if (!in_upper_range())
      throw PreconditionError(
          "hypothesis failed: angles do not fit a half-turn after rotation");
  }

  // 5. epsilon rotation into the open interval
  {
    double min_pos = 180.0, max_t = 0.0;
    bool any_zero = false;
    for (const auto& [e, v] : real.lines) {
      double t = theta_of(v);
      max_t = std::max(max_t, t);
      if (t > 1e-12)
        min_pos = std::min(min_pos, t);
      else
        any_zero = true;
    }
    if (any_zero || max_t >= 180.0 - 1e-12) {
      double gap_low = min_pos > 179.0 ? 90.0 : min_pos;  // all at zero
      double eps = 0.5 * std::min(gap_low, 180.0 - max_t);
      if (eps <= 0.0)
        throw PreconditionError("hypothesis failed: no room for the epsilon rotation");
      double er = eps * kDegToRad;
      // rotate angles upward by eps
      apply({std::array<double, 3>{std::cos(er), -std::sin(er), 0.0},
             std::array<double, 3>{std::sin(er), std::cos(er), 0.0},
             std::array<double, 3>{0.0, 0.0, 1.0}});
    }
  }

  // 6. shear until every z is positive
  {
    bool all_pos = true;
    for (const auto& [e, v] : real.lines)
      if (v[2] <= 0.0) all_pos = false;
    if (!all_pos) {
      double worst = 0.0;
      for (const auto& [e, v] : real.lines) {
        if (v[1] >= 0.0)
          throw PreconditionError("hypothesis failed: y coordinate not negative before shear");
        worst = std::max(worst, v[2] / v[1]);
      }
      double mu = 1.0 + worst;
      // shear z -> z - mu*y; theta untouched, determinant 1
      apply({std::array<double, 3>{1.0, 0.0, 0.0}, std::array<double, 3>{0.0, 1.0, 0.0},
             std::array<double, 3>{0.0, -mu, 1.0}});
    }
  }

  PolarCoordinates out;
  for (const auto& [e, v] : real.lines) {
    double t = theta_of(v);
    if (!(t > 0.0 && t < 180.0))
      throw PreconditionError("normalization failed to place theta_" + std::to_string(e) +
                              " in (0,180)");
    if (v[2] <= 0.0)
      throw PreconditionError("normalization failed to make r_" + std::to_string(e) +
                              " positive");
    out.theta_deg[e] = t;
    out.r[e] = v[2];
  }
  return out;
}

PartialOrder GraphWithOrder::order() const {
  graph.validate_labels();
  PartialOrder o(graph.edge_count());
  for (const auto& [a, b] : order_relations) o.add(a, b);
  return o;
}

GraphWithOrder parse_graph_text(std::string_view text) {
  GraphWithOrder out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "edge") {
      int label;
      std::string u, v;
      if (!(ls >> label >> u >> v))
        throw ParseError("line " + std::to_string(line_no) + ": expected 'edge <label> <u> <v>'");
      out.graph.add_edge(label, u, v);
    } else if (kw == "order") {
      int a, b;
      std::string lt;
      if (!(ls >> a >> lt >> b) || lt != "<")
        throw ParseError("line " + std::to_string(line_no) + ": expected 'order <a> < <b>'");
      out.order_relations.emplace_back(a, b);
    } else if (kw == "triple") {
      throw ParseError("line " + std::to_string(line_no) +
                       ": 'triple' lines belong to the twisted-graph format");
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'");
    }
  }
  std::sort(out.order_relations.begin(), out.order_relations.end());
  return out;
}

std::string to_string(const GraphWithOrder& g) {
  std::string out = to_string(g.graph);
  auto rel = g.order_relations;
  std::sort(rel.begin(), rel.end());
  for (const auto& [a, b] : rel)
    out += "order " + std::to_string(a) + " < " + std::to_string(b) + "\n";
  return out;
}

}  // namespace pappus
