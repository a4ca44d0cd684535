#include "pappus/signed_set.hpp"

#include <algorithm>

namespace pappus {

SignedSet::SignedSet(std::set<int> positive, std::set<int> negative)
    : pos_(std::move(positive)), neg_(std::move(negative)) {
  for (int e : pos_)
    if (neg_.count(e))
      throw PreconditionError("element " + std::to_string(e) + " in both parts of a signed set");
}

std::set<int> SignedSet::support() const {
  std::set<int> s = pos_;
  s.insert(neg_.begin(), neg_.end());
  return s;
}

std::vector<int> SignedSet::support_sorted() const {
  std::vector<int> v(pos_.begin(), pos_.end());
  v.insert(v.end(), neg_.begin(), neg_.end());
  std::sort(v.begin(), v.end());
  return v;
}

int SignedSet::sign(int e) const {
  if (pos_.count(e)) return 1;
  if (neg_.count(e)) return -1;
  return 0;
}

SignedSet SignedSet::compose(const SignedSet& x, const SignedSet& y) {
  std::set<int> pos = x.positive(), neg = x.negative();
  for (int e : y.positive())
    if (!x.sign(e)) pos.insert(e);
  for (int e : y.negative())
    if (!x.sign(e)) neg.insert(e);
  return SignedSet(std::move(pos), std::move(neg));
}

bool SignedSet::conformal_with(const SignedSet& other) const {
  for (int e : pos_)
    if (other.sign(e) < 0) return false;
  for (int e : neg_)
    if (other.sign(e) > 0) return false;
  return true;
}

bool SignedSet::orthogonal_to(const SignedSet& other) const {
  bool agree = false, disagree = false, overlap = false;
  for (int e : support()) {
    int p = sign(e) * other.sign(e);
    if (p == 0) continue;
    overlap = true;
    (p > 0 ? agree : disagree) = true;
  }
  return !overlap || (agree && disagree);
}

std::string to_string(const SignedSet& s) {
  std::string out = "({";
  bool first = true;
  for (int e : s.positive()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  out += "},{";
  first = true;
  for (int e : s.negative()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "})";
}

}  // namespace pappus
