#include "pappus/sines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pappus {

SineMonomial::SineMonomial(std::vector<AnglePair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
}

int SineMonomial::max_index() const {
  int m = 0;
  for (const auto& p : pairs_) m = std::max(m, p.hi);
  return m;
}

bool SineMonomial::contains(const AnglePair& p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

SineMonomial SineMonomial::times(const SineMonomial& other) const {
  std::vector<AnglePair> merged;
  merged.reserve(pairs_.size() + other.pairs_.size());
  std::merge(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
             std::back_inserter(merged));
  SineMonomial out;
  out.pairs_ = std::move(merged);
  return out;
}

SineMonomial SineMonomial::without(const AnglePair& a, const AnglePair& b) const {
  SineMonomial out = *this;
  for (const AnglePair& q : {a, b}) {
    auto it = std::find(out.pairs_.begin(), out.pairs_.end(), q);
    if (it == out.pairs_.end())
      throw PreconditionError("pair s(" + std::to_string(q.lo) + "," + std::to_string(q.hi) +
                              ") not present in monomial " + to_string(*this));
    out.pairs_.erase(it);
  }
  return out;
}

SineMonomial SineMonomial::with(const AnglePair& a, const AnglePair& b) const {
  SineMonomial out = *this;
  out.pairs_.push_back(a);
  out.pairs_.push_back(b);
  std::sort(out.pairs_.begin(), out.pairs_.end());
  return out;
}

ThetaVector::ThetaVector(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) set(static_cast<int>(i) + 1, values[i]);
}

void ThetaVector::set(int index, double degrees) {
  if (index < 1) throw PreconditionError("angle index must be >= 1");
  if (!std::isfinite(degrees)) throw PreconditionError("angle value must be finite");
  angles_[index] = degrees;
}

double ThetaVector::at(int index) const {
  auto it = angles_.find(index);
  if (it == angles_.end())
    throw PreconditionError("no angle assigned to index " + std::to_string(index));
  return it->second;
}

ThetaVector ThetaVector::with(int index, double degrees) const {
  ThetaVector out = *this;
  out.set(index, degrees);
  return out;
}

SineSum SineSum::monomial(SineMonomial m, Int coeff) {
  SineSum s;
  s.add_term(m, coeff);
  return s;
}

int SineSum::max_index() const {
  int m = 0;
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_index());
  return m;
}

void SineSum::add_term(const SineMonomial& m, const Int& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

SineSum SineSum::operator-() const {
  SineSum out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

SineSum SineSum::operator+(const SineSum& other) const {
  SineSum out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

SineSum SineSum::operator-(const SineSum& other) const { return *this + (-other); }

SineSum SineSum::operator*(const SineSum& other) const {
  SineSum out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : other.terms_) out.add_term(m1.times(m2), c1 * c2);
  return out;
}

namespace {

bool interleaved(const AnglePair& x, const AnglePair& y) {
  // x = {a,c}, y = {b,d} with a < b < c < d
  return x.lo < y.lo && y.lo < x.hi && x.hi < y.hi;
}

}  // namespace

std::vector<std::pair<AnglePair, AnglePair>> expandable_sites(const SineMonomial& m) {
  std::vector<std::pair<AnglePair, AnglePair>> sites;
  const auto& ps = m.pairs();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (interleaved(ps[i], ps[j])) sites.emplace_back(ps[i], ps[j]);
  return sites;
}

bool is_normal(const SineMonomial& m) {
  const auto& ps = m.pairs();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (interleaved(ps[i], ps[j])) return false;
  return true;
}

std::optional<std::pair<AnglePair, AnglePair>> find_expandable(const SineMonomial& m) {
  const auto& ps = m.pairs();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (interleaved(ps[i], ps[j])) return std::make_pair(ps[i], ps[j]);
  return std::nullopt;
}

SineSum expand_once(const SineMonomial& m, const std::pair<AnglePair, AnglePair>& target) {
  const auto& [x, y] = target;
  if (!interleaved(x, y))
    throw PreconditionError("pairs s(" + std::to_string(x.lo) + "," + std::to_string(x.hi) +
                            ") and s(" + std::to_string(y.lo) + "," + std::to_string(y.hi) +
                            ") do not interleave");
  const int a = x.lo, b = y.lo, c = x.hi, d = y.hi;
  SineMonomial rest = m.without(x, y);  // throws if either pair is missing
  SineSum out;
  out.add_term(rest.with(AnglePair(a, b), AnglePair(c, d)), 1);
  out.add_term(rest.with(AnglePair(a, d), AnglePair(b, c)), 1);
  return out;
}

namespace {

// Normal form of a single monomial: all coefficients in the result are
// positive multiplicities. Iterative post-order over the expansion DAG
// (chains can run thousands of steps deep, too far for native recursion);
// cached per thread, values immutable once inserted.
const SineSum& normal_form_of(const SineMonomial& m) {
  thread_local std::map<SineMonomial, SineSum> cache;
  std::vector<SineMonomial> stack{m};
  while (!stack.empty()) {
    const SineMonomial cur = stack.back();
    if (cache.count(cur)) {
      stack.pop_back();
      continue;
    }
    auto site = find_expandable(cur);
    if (!site) {
      cache.emplace(cur, SineSum::monomial(cur));
      stack.pop_back();
      continue;
    }
    SineSum children = expand_once(cur, *site);
    bool ready = true;
    for (const auto& [child, mult] : children.terms())
      if (!cache.count(child)) {
        stack.push_back(child);
        ready = false;
      }
    if (!ready) continue;
    SineSum result;
    for (const auto& [child, mult] : children.terms())
      for (const auto& [mono, c] : cache.at(child).terms()) result.add_term(mono, c * mult);
    cache.emplace(cur, std::move(result));
    stack.pop_back();
  }
  return cache.at(m);
}

}  // namespace

SineSum normalize(const SineSum& s) {
  SineSum out;
  for (const auto& [m, coeff] : s.terms()) {
    const SineSum& nf = normal_form_of(m);
    for (const auto& [mono, mult] : nf.terms()) out.add_term(mono, mult * coeff);
  }
  return out;
}

SineSum normalize_with_selector(const SineSum& s,
                                const std::function<std::size_t(std::size_t)>& pick) {
  SineSum cur = s;
  for (;;) {
    std::vector<const SineMonomial*> pending;
    for (const auto& [m, c] : cur.terms())
      if (!is_normal(m)) pending.push_back(&m);
    if (pending.empty()) return cur;

    std::size_t mi = pick(pending.size());
    if (mi >= pending.size()) throw PreconditionError("selector returned out-of-range index");
    SineMonomial m = *pending[mi];

    auto sites = expandable_sites(m);
    std::size_t si = pick(sites.size());
    if (si >= sites.size()) throw PreconditionError("selector returned out-of-range index");

    Int coeff = cur.terms().at(m);
    cur.add_term(m, -coeff);
    for (const auto& [child, mult] : expand_once(m, sites[si]).terms())
      cur.add_term(child, mult * coeff);
  }
}

bool equivalent(const SineSum& s1, const SineSum& s2) {
  return normalize(s1 - s2).is_zero();
}

double evaluate(const SineMonomial& m, const ThetaVector& theta) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  double prod = 1.0;
  for (const auto& p : m.pairs())
    prod *= std::sin((theta.at(p.hi) - theta.at(p.lo)) * kDegToRad);
  return prod;
}

double evaluate(const SineSum& s, const ThetaVector& theta) {
  double total = 0.0;
  for (const auto& [m, c] : s.terms()) total += static_cast<double>(c) * evaluate(m, theta);
  return total;
}

SineSum merge_indices(const SineSum& s, int from, int to) {
  if (from == to) throw PreconditionError("merge_indices requires from != to");
  SineSum out;
  for (const auto& [m, c] : s.terms()) {
    std::vector<AnglePair> mapped;
    mapped.reserve(m.pairs().size());
    bool vanished = false;
    for (const auto& p : m.pairs()) {
      int lo = p.lo == from ? to : p.lo;
      int hi = p.hi == from ? to : p.hi;
      if (lo == hi) {
        vanished = true;
        break;
      }
      mapped.push_back(AnglePair::of(lo, hi));
    }
    if (!vanished) out.add_term(SineMonomial(std::move(mapped)), c);
  }
  return out;
}

std::string to_string(const SineMonomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& p : m.pairs())
    out += "s(" + std::to_string(p.lo) + "," + std::to_string(p.hi) + ")";
  return out;
}

std::string to_string(const SineSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || m.is_one()) {
      out += mag.str();
      if (!m.is_one()) out += "*";
    }
    if (!m.is_one()) out += to_string(m);
  }
  return out;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  SineSum parse() {
    SineSum sum;
    skip_ws();
    bool negative = accept_sign();
    for (;;) {
      sum = sum + parse_term(negative);
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == '+' || c == '-') {
        ++pos_;
        negative = (c == '-');
        skip_ws();
      } else {
        fail("expected '+' or '-'");
      }
    }
    return sum;
  }

 private:
  SineSum parse_term(bool negative) {
    Int coeff = 1;
    bool saw_number = false, saw_factor = false;
    std::vector<AnglePair> pairs;
    skip_ws();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      coeff = parse_int();
      saw_number = true;
    }
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_ws();
      }
      if (pos_ < text_.size() && text_[pos_] == 's') {
        pairs.push_back(parse_factor());
        saw_factor = true;
      } else {
        break;
      }
    }
    if (!saw_number && !saw_factor) fail("expected a term");
    if (negative) coeff = -coeff;
    return SineSum::monomial(SineMonomial(std::move(pairs)), coeff);
  }

  AnglePair parse_factor() {
    expect('s');
    expect('(');
    int i = static_cast<int>(parse_int());
    skip_ws();
    expect(',');
    int j = static_cast<int>(parse_int());
    skip_ws();
    expect(')');
    if (i >= j) fail("sine factor needs i < j");
    return AnglePair(i, j);
  }

  Int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }

  bool accept_sign() {
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      bool neg = text_[pos_] == '-';
      ++pos_;
      skip_ws();
      return neg;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SineSum parse_sine_sum(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace pappus
