#include "pappus/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "pappus/lp.hpp"

namespace pappus {

namespace {

// Order circuits on three elements of the cut, conformal to it: patterns
// (s, -s, s) along a chain x < y < z of the order.
std::vector<SignedSet> candidate_triples(const SignedSet& cv, const PartialOrder& order) {
  std::vector<int> supp = cv.support_sorted();
  std::vector<SignedSet> out;
  const std::size_t k = supp.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        if (i == j || j == l || i == l) continue;
        int x = supp[i], y = supp[j], z = supp[l];
        if (x > z) continue;  // (x,z) unordered pair: take each chain once
        if (!order.less(x, y) || !order.less(y, z)) continue;
        if (cv.sign(x) != cv.sign(z) || cv.sign(y) != -cv.sign(x)) continue;
        if (cv.sign(x) > 0)
          out.emplace_back(std::set<int>{x, z}, std::set<int>{y});
        else
          out.emplace_back(std::set<int>{y}, std::set<int>{x, z});
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Exact cover-ish search: pick d-2 candidate triples covering the support.
bool cover_search(const std::vector<SignedSet>& cands, std::size_t from,
                  const std::set<int>& missing, std::size_t remaining,
                  std::vector<SignedSet>& chosen) {
  if (remaining == 0) return missing.empty();
  if (missing.size() > 3 * remaining) return false;
  for (std::size_t i = from; i < cands.size(); ++i) {
    std::set<int> next_missing = missing;
    for (int e : cands[i].support()) next_missing.erase(e);
    chosen.push_back(cands[i]);
    if (cover_search(cands, i + 1, next_missing, remaining - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

std::vector<SignedSet> decompose_cocircuit(const SignedSet& cv, const PartialOrder& order) {
  if (cv.size() < 3)
    throw PreconditionError("vertex cocircuit " + to_string(cv) + " has degree below 3");
  if (cv.positive().empty() || cv.negative().empty())
    throw PreconditionError("cut " + to_string(cv) +
                            " carries one sign only; no order circuit conforms to it");
  auto cands = candidate_triples(cv, order);
  std::vector<SignedSet> chosen;
  if (!cover_search(cands, 0, cv.support(), cv.support().size() - 2, chosen))
    throw PreconditionError("cocircuit " + to_string(cv) +
                            " admits no conformal decomposition into order circuits");
  return chosen;
}

}  // namespace

std::vector<SignedSet> split_vertex_cocircuit(const SignedSet& cv, const PartialOrder& order) {
  std::vector<int> supp = cv.support_sorted();
  if (!order.totally_ordered(supp))
    throw PreconditionError("support of " + to_string(cv) +
                            " is not totally ordered by the given order");
  return decompose_cocircuit(cv, order);
}

TwistedGraph build_twisted(const DirectedGraph& g, const PartialOrder& order) {
  g.validate_labels();
  if (order.size() != g.edge_count())
    throw PreconditionError("order ground set must match the edge count");
  if (!is_totally_cyclic(g)) throw PreconditionError("digraph is not totally cyclic");
  if (!three_edge_connected(g))
    throw PreconditionError("underlying graph is not three-edge-connected");

  TwistedGraph t{g, order, {}, {}};
  for (const std::string& v : g.vertices()) {
    SignedSet cv = vertex_cocircuit(g, v);
    for (SignedSet& a : decompose_cocircuit(cv, order)) {
      t.triples.push_back(std::move(a));
      t.triple_vertex.push_back(v);
    }
  }
  validate_twisted(t);
  return t;
}

void validate_twisted(const TwistedGraph& t, int extension_sample_cap) {
  const DirectedGraph& g = t.digraph;
  g.validate_labels();
  if (t.order.size() != g.edge_count())
    throw PreconditionError("order ground set must match the edge count");
  if (!three_edge_connected(g))
    throw PreconditionError("underlying graph is not three-edge-connected");
  if (t.triples.size() != t.triple_vertex.size())
    throw PreconditionError("triple/vertex bookkeeping out of step");

  // each triple is an order circuit conformal to its vertex cocircuit
  std::map<std::string, SignedSet> composed;
  for (std::size_t i = 0; i < t.triples.size(); ++i) {
    const SignedSet& a = t.triples[i];
    if (a.size() != 3)
      throw PreconditionError("triple " + to_string(a) + " must have three elements");
    std::vector<int> supp = a.support_sorted();
    bool circuit = false;
    for (int mid : supp) {
      std::vector<int> ends;
      for (int e : supp)
        if (e != mid) ends.push_back(e);
      for (auto [lo, hi] : {std::pair{ends[0], ends[1]}, std::pair{ends[1], ends[0]}})
        if (t.order.less(lo, mid) && t.order.less(mid, hi) && a.sign(lo) == a.sign(hi) &&
            a.sign(mid) == -a.sign(lo))
          circuit = true;
    }
    if (!circuit)
      throw PreconditionError("triple " + to_string(a) +
                              " is not a circuit of the order");
    const std::string& v = t.triple_vertex[i];
    SignedSet cv = vertex_cocircuit(g, v);
    if (!a.conformal_with(cv) || !std::all_of(supp.begin(), supp.end(), [&](int e) {
          return cv.sign(e) == a.sign(e);
        }))
      throw PreconditionError("triple " + to_string(a) + " does not conform to vertex " + v);
    auto it = composed.find(v);
    if (it == composed.end())
      composed.emplace(v, a);
    else
      it->second = SignedSet::compose(it->second, a);
  }
  for (const std::string& v : g.vertices()) {
    auto it = composed.find(v);
    if (it == composed.end() || it->second != vertex_cocircuit(g, v))
      throw PreconditionError("triples at vertex " + v +
                              " do not compose to its cocircuit");
  }

  // strong map for every (or sampled) total extension of the order; the
  // cuts are independent of the extension, so enumerate them once
  auto cuts = graph_cocircuits(g);
  int tried = 0;
  bool all_ok = true;
  std::vector<int> witness;
  for_each_linear_extension(t.order, [&](const std::vector<int>& ext) {
    for (const SignedSet& cut : cuts)
      if (!is_order_vector(cut, ext)) {
        all_ok = false;
        witness = ext;
        return false;
      }
    return ++tried < extension_sample_cap;
  });
  if (!all_ok) {
    std::string w;
    for (int e : witness) w += std::to_string(e) + " ";
    throw PreconditionError("no strong map to the order matroid of extension " + w);
  }
}

DirectedGraph totally_cyclic_orientation(const DirectedGraph& g) {
  if (!three_edge_connected(g))
    throw PreconditionError("underlying graph is not three-edge-connected");
  DirectedGraph cur = g;
  for (int round = 0; round < 4 && !is_totally_cyclic(cur); ++round) {
    // compose signed cycles into a vector covering every edge, then flip its
    // negative part
    SignedSet vec;
    auto cycles = graph_circuits(cur);
    for (const Edge& e : cur.edges()) {
      if (vec.sign(e.label) != 0) continue;
      for (const SignedSet& c : cycles)
        if (c.sign(e.label) == 1) {
          vec = vec.empty() ? c : SignedSet::compose(vec, c);
          break;
        }
    }
    cur = cur.reversed(vec.negative());
  }
  if (!is_totally_cyclic(cur))
    throw PreconditionError("failed to orient the graph totally cyclically");
  return cur;
}

ConstraintMatrix sigma_matrix(const TwistedGraph& t) {
  const int n = t.edge_count();
  ConstraintMatrix m(0, n);
  for (std::size_t i = 0; i < t.triples.size(); ++i) {
    const SignedSet& a = t.triples[i];
    std::vector<int> supp = a.support_sorted();
    std::vector<SymbolicEntry> row(static_cast<std::size_t>(n));
    for (int e : supp) {
      std::vector<int> others;
      for (int o : supp)
        if (o != e) others.push_back(o);
      auto chain = t.order.sorted(others);  // e' < e''
      int s = a.sign(e);
      // sin(theta_{e''} - theta_{e'}) folded onto an index-ordered pair
      if (chain[0] < chain[1])
        row[static_cast<std::size_t>(e - 1)] = SymbolicEntry(s, AnglePair(chain[0], chain[1]));
      else
        row[static_cast<std::size_t>(e - 1)] = SymbolicEntry(-s, AnglePair(chain[1], chain[0]));
    }
    m.append_row(std::move(row), t.triple_vertex.empty() ? "" : t.triple_vertex[i]);
  }
  return m;
}

bool validate_positive_sequence(const TwistedGraph& t, const PositiveSequence& seq) {
  const std::size_t m = t.triples.size();
  if (seq.row_order.size() != m || seq.f.size() + 1 != m) return false;
  std::vector<bool> seen(m, false);
  for (int r : seq.row_order) {
    if (r < 0 || static_cast<std::size_t>(r) >= m || seen[static_cast<std::size_t>(r)])
      return false;
    seen[static_cast<std::size_t>(r)] = true;
  }
  for (std::size_t j = 1; j < m; ++j) {
    int fj = seq.f[j - 1];
    const SignedSet& aj = t.triples[static_cast<std::size_t>(seq.row_order[j])];
    if (aj.sign(fj) == 0) return false;
    for (std::size_t i = j + 1; i < m; ++i)
      if (t.triples[static_cast<std::size_t>(seq.row_order[i])].sign(fj) != 0) return false;
    for (std::size_t i = 0; i < j; ++i) {
      int s = t.triples[static_cast<std::size_t>(seq.row_order[i])].sign(fj);
      if (s != 0 && s != -aj.sign(fj)) return false;
    }
  }
  return true;
}

namespace {

bool is_cubic(const DirectedGraph& g) {
  for (const auto& v : g.vertices())
    if (g.incident_labels(v).size() != 3) return false;
  return true;
}

std::optional<PositiveSequence> cubic_sequence(const TwistedGraph& t) {
  // one triple per vertex; grow a connected prefix along a spanning tree
  const DirectedGraph& g = t.digraph;
  std::map<std::string, int> triple_of;
  for (std::size_t i = 0; i < t.triples.size(); ++i) {
    if (triple_of.count(t.triple_vertex[i])) return std::nullopt;
    triple_of[t.triple_vertex[i]] = static_cast<int>(i);
  }
  if (triple_of.size() != g.vertices().size()) return std::nullopt;

  PositiveSequence seq;
  std::set<std::string> visited;
  std::string start = *g.vertices().begin();
  visited.insert(start);
  seq.row_order.push_back(triple_of[start]);
  while (visited.size() < g.vertices().size()) {
    bool grew = false;
    for (const Edge& e : g.edges()) {
      bool t_in = visited.count(e.tail), h_in = visited.count(e.head);
      if (t_in == h_in) continue;
      const std::string& fresh = t_in ? e.head : e.tail;
      visited.insert(fresh);
      seq.row_order.push_back(triple_of[fresh]);
      seq.f.push_back(e.label);
      grew = true;
      break;
    }
    if (!grew) return std::nullopt;  // disconnected
  }
  return seq;
}

std::optional<PositiveSequence> backtrack_sequence(const TwistedGraph& t) {
  const std::size_t m = t.triples.size();
  std::vector<int> labels;
  for (const Edge& e : t.digraph.edges()) labels.push_back(e.label);

  PositiveSequence seq;
  std::vector<bool> used_row(m, false);
  std::set<int> used_edge;
  long long budget = 4'000'000;

  std::function<bool()> rec = [&]() -> bool {
    if (--budget < 0) throw SearchLimitError("positive-sequence search exceeded its cap");
    std::size_t j = seq.row_order.size();
    if (j == m) return true;
    for (std::size_t r = 0; r < m; ++r) {
      if (used_row[r]) continue;
      if (j == 0) {
        used_row[r] = true;
        seq.row_order.push_back(static_cast<int>(r));
        if (rec()) return true;
        seq.row_order.pop_back();
        used_row[r] = false;
        continue;
      }
      const SignedSet& aj = t.triples[r];
      for (int fj : labels) {
        if (used_edge.count(fj) || aj.sign(fj) == 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
          if (!used_row[i] && i != r && t.triples[i].sign(fj) != 0) ok = false;
        for (int rr : seq.row_order) {
          int s = t.triples[static_cast<std::size_t>(rr)].sign(fj);
          if (s != 0 && s != -aj.sign(fj)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        used_row[r] = true;
        seq.row_order.push_back(static_cast<int>(r));
        used_edge.insert(fj);
        seq.f.push_back(fj);
        if (rec()) return true;
        seq.f.pop_back();
        used_edge.erase(fj);
        seq.row_order.pop_back();
        used_row[r] = false;
      }
    }
    return false;
  };
  if (rec()) return seq;
  return std::nullopt;
}

}  // namespace

std::optional<PositiveSequence> find_positive_sequence(const TwistedGraph& t) {
  if (t.triples.size() == 1) return PositiveSequence{{0}, {}};
  if (is_cubic(t.digraph)) {
    auto seq = cubic_sequence(t);
    if (seq && validate_positive_sequence(t, *seq)) return seq;
  }
  auto seq = backtrack_sequence(t);
  if (seq && !validate_positive_sequence(t, *seq))
    throw SolverError("positive-sequence search returned an invalid sequence");
  return seq;
}

namespace {

std::vector<int> zero_based_columns(std::span<const int> labels) {
  std::vector<int> cols;
  cols.reserve(labels.size());
  for (int l : labels) cols.push_back(l - 1);
  return cols;
}

std::vector<int> complement_labels(const TwistedGraph& t, std::span<const int> f) {
  std::set<int> inside(f.begin(), f.end());
  std::vector<int> out;
  for (const Edge& e : t.digraph.edges())
    if (!inside.count(e.label)) out.push_back(e.label);
  return out;
}

}  // namespace

bool is_simplicial(const TwistedGraph& t, std::span<const int> f) {
  if (f.size() + 1 != t.triples.size())
    throw PreconditionError("simplicial test needs |F| = |A| - 1");
  std::vector<int> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end());
  ConstraintMatrix sigma = sigma_matrix(t);
  std::vector<int> rows(sigma.rows());
  for (int r = 0; r < sigma.rows(); ++r) rows[r] = r;
  return is_simplex(submatrix(sigma, rows, zero_based_columns(sorted)), t.order);
}

bool is_strictly_simplicial(const TwistedGraph& t, std::span<const int> f) {
  auto rest = complement_labels(t, f);
  return t.order.totally_ordered(rest) && is_simplicial(t, f);
}

std::vector<double> hat_row(const SignedSet& c, const ThetaVector& theta, int n) {
  return hat_circuit(c, theta, n);
}

SigmaSignResult sigma_sign(const TwistedGraph& t, std::span<const int> f, const SignedSet& c,
                           const ThetaVector& theta) {
  if (!is_strictly_simplicial(t, f))
    throw PreconditionError("sigma_sign requires a strictly simplicial twisted graph");
  auto rest = complement_labels(t, f);
  if (rest.size() != 3)
    throw PreconditionError("E \\ F must have exactly three elements");
  auto chain = t.order.sorted(rest);  // x1 < x2 < x3
  int x1 = chain[0], x2 = chain[1], x3 = chain[2];
  SignedSet plus({x1, x3}, {x2});
  if (c != plus && c != plus.opposite())
    throw PreconditionError("C must be the order circuit on E \\ F or its opposite");

  const int n = t.edge_count();
  ConstraintMatrix sigma = sigma_matrix(t);
  NumericMatrix sig = evaluate_matrix(sigma, theta);

  std::vector<int> dcols(f.begin(), f.end());
  dcols.push_back(x1);
  std::sort(dcols.begin(), dcols.end());

  const std::size_t m = t.triples.size();
  auto minor_det = [&](const std::vector<std::vector<double>>& rows) {
    // plain Gaussian elimination
    auto a = rows;
    const std::size_t k = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (a[piv][col] == 0.0) return 0.0;
      if (piv != col) {
        std::swap(a[piv], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (std::size_t r = col + 1; r < k; ++r) {
        double fac = a[r][col] / a[col][col];
        for (std::size_t cc = col; cc < k; ++cc) a[r][cc] -= fac * a[col][cc];
      }
    }
    return det;
  };

  std::vector<std::vector<double>> square(m, std::vector<double>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t ci = 0; ci < dcols.size(); ++ci)
      square[r][ci] = sig.at(static_cast<int>(r), dcols[static_cast<std::size_t>(ci)] - 1);
  double d = minor_det(square);

  double scale = 1.0;
  for (const auto& row : square) {
    double norm = 0.0;
    for (double v : row) norm += v * v;
    scale *= std::sqrt(std::max(norm, 1e-30));
  }
  const double tol = 1e-9 * std::max(scale, 1.0);

  SigmaSignResult out{};
  if (std::abs(d) <= tol) {
    out.sign = 0;
    out.predicted_soluble = false;
    out.sigma_c = 0;
    out.sigma_neg_c = 0;
    return out;
  }
  out.sign = d > 0 ? 1 : -1;

  // append hat(C) restricted to the same columns and test the extended
  // (m+1) x m matrix for the simplex alternation; a simplex means the full
  // system is insoluble at this theta
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  std::vector<double> crow_full(static_cast<std::size_t>(n), 0.0);
  for (int e : c.support()) {
    std::vector<int> others;
    for (int o : c.support())
      if (o != e) others.push_back(o);
    auto ch = t.order.sorted(others);
    crow_full[static_cast<std::size_t>(e - 1)] =
        c.sign(e) * std::sin((theta.at(ch[1]) - theta.at(ch[0])) * kDegToRad);
  }
  std::vector<std::vector<double>> ext = square;
  ext.emplace_back(m);
  for (std::size_t ci = 0; ci < dcols.size(); ++ci)
    ext.back()[ci] = crow_full[static_cast<std::size_t>(dcols[ci] - 1)];

  std::vector<int> signs;
  bool alternating = true;
  for (std::size_t drop = 0; drop <= m && alternating; ++drop) {
    std::vector<std::vector<double>> sub;
    for (std::size_t r = 0; r <= m; ++r)
      if (r != drop) sub.push_back(ext[r]);
    double sd = minor_det(sub);
    int s = std::abs(sd) <= tol ? 0 : (sd > 0 ? 1 : -1);
    if (s == 0) alternating = false;
    if (!signs.empty() && s == signs.back()) alternating = false;
    signs.push_back(s);
  }
  out.predicted_soluble = !alternating;
  out.sigma_c = out.predicted_soluble ? out.sign : -out.sign;
  out.sigma_neg_c = -out.sigma_c;
  return out;
}

TwistedGraph parse_twisted(std::string_view text) {
  // strip triple lines, feed the rest to the graph parser
  std::istringstream in{std::string(text)};
  std::string line, graph_part;
  struct TripleLine {
    int e1, e2, e3;
    char sign;
  };
  std::vector<TripleLine> triples;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string code = line;
    auto hash = code.find('#');
    if (hash != std::string::npos) code = code.substr(0, hash);
    std::istringstream ls(code);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "triple") {
      TripleLine t;
      std::string sgn;
      if (!(ls >> t.e1 >> t.e2 >> t.e3 >> sgn) || (sgn != "+" && sgn != "-"))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'triple <e1> <e2> <e3> <+|->'");
      t.sign = sgn[0];
      triples.push_back(t);
    } else {
      graph_part += code + "\n";
    }
  }
  GraphWithOrder base = parse_graph_text(graph_part);
  PartialOrder order = base.order();

  TwistedGraph t{base.graph, order, {}, {}};
  if (triples.empty()) return build_twisted(base.graph, order);

  for (const auto& tl : triples) {
    if (!order.less(tl.e1, tl.e2) || !order.less(tl.e2, tl.e3))
      throw ParseError("triple " + std::to_string(tl.e1) + " " + std::to_string(tl.e2) + " " +
                       std::to_string(tl.e3) + " is not an order chain");
    SignedSet a = tl.sign == '+' ? SignedSet({tl.e1, tl.e3}, {tl.e2})
                                 : SignedSet({tl.e2}, {tl.e1, tl.e3});
    // owning vertex: the one incident to all three edges
    std::string owner;
    for (const std::string& v : base.graph.vertices()) {
      auto labels = base.graph.incident_labels(v);
      std::set<int> ls(labels.begin(), labels.end());
      if (ls.count(tl.e1) && ls.count(tl.e2) && ls.count(tl.e3)) {
        owner = v;
        break;
      }
    }
    if (owner.empty())
      throw ParseError("triple " + to_string(a) + " has no common incident vertex");
    t.triples.push_back(std::move(a));
    t.triple_vertex.push_back(owner);
  }
  validate_twisted(t);
  return t;
}

std::string to_string(const TwistedGraph& t) {
  GraphWithOrder base{t.digraph, {}};
  // emit a transitive reduction of the order to keep the text readable
  const int n = t.order.size();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (!t.order.less(a, b)) continue;
      bool covered = false;
      for (int c = 1; c <= n && !covered; ++c)
        if (t.order.less(a, c) && t.order.less(c, b)) covered = true;
      if (!covered) base.order_relations.emplace_back(a, b);
    }
  std::string out = to_string(base);
  for (const SignedSet& a : t.triples) {
    std::vector<int> supp = a.support_sorted();
    auto chain = t.order.sorted(supp);
    bool plus = a.sign(chain[0]) > 0;
    out += "triple " + std::to_string(chain[0]) + " " + std::to_string(chain[1]) + " " +
           std::to_string(chain[2]) + " " + (plus ? "+" : "-") + "\n";
  }
  return out;
}

}  // namespace pappus
