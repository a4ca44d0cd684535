#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "pappus/errors.hpp"

namespace pappus {

/// Disjoint pair (positive, negative) of element indices.
class SignedSet {
 public:
  SignedSet() = default;
  SignedSet(std::set<int> positive, std::set<int> negative);
  SignedSet(std::initializer_list<int> positive, std::initializer_list<int> negative)
      : SignedSet(std::set<int>(positive), std::set<int>(negative)) {}

  const std::set<int>& positive() const { return pos_; }
  const std::set<int>& negative() const { return neg_; }
  std::set<int> support() const;
  std::vector<int> support_sorted() const;
  bool empty() const { return pos_.empty() && neg_.empty(); }
  int size() const { return static_cast<int>(pos_.size() + neg_.size()); }

  int sign(int e) const;
  bool is_positive() const { return neg_.empty() && !pos_.empty(); }

  SignedSet opposite() const { return SignedSet(neg_, pos_); }

  /// First-argument-wins composition.
  static SignedSet compose(const SignedSet& x, const SignedSet& y);
  /// No element carries opposite signs in the two sets.
  bool conformal_with(const SignedSet& other) const;
  /// Supports disjoint, or the products of signs take both values somewhere.
  bool orthogonal_to(const SignedSet& other) const;

  auto operator<=>(const SignedSet&) const = default;

 private:
  std::set<int> pos_, neg_;
};

std::string to_string(const SignedSet& s);

}  // namespace pappus
