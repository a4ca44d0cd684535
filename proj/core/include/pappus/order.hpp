#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pappus/errors.hpp"

namespace pappus {

/// Strict partial order on {1..n}, stored transitively closed. Adding a
/// relation that would create a cycle is rejected (antisymmetry).
class PartialOrder {
 public:
  explicit PartialOrder(int n);

  /// The natural chain 1 < 2 < ... < n.
  static PartialOrder total(int n);
  /// Chain over the given labels in sequence order, on ground set {1..n}.
  static PartialOrder chain(int n, std::span<const int> labels);

  int size() const { return n_; }
  void add(int a, int b);
  bool less(int a, int b) const;
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }
  /// True when every two of the given elements are comparable.
  bool totally_ordered(std::span<const int> elements) const;
  /// The given elements sorted ascending by this order; they must be totally
  /// ordered among themselves.
  std::vector<int> sorted(std::span<const int> elements) const;

  /// All pairs (a, b) with a < b in this order, ascending.
  std::vector<std::pair<int, int>> relations() const;

  bool operator==(const PartialOrder&) const = default;

 private:
  void check_range(int a) const;

  int n_ = 0;
  std::vector<bool> less_;  // (n+1)*(n+1), row-major
};

/// Invokes the callback with each linear extension (labels 1..n in order).
/// Returning false from the callback stops the enumeration early.
void for_each_linear_extension(const PartialOrder& order,
                               const std::function<bool(const std::vector<int>&)>& fn);

/// Convenience: all linear extensions, materialized.
std::vector<std::vector<int>> linear_extensions(const PartialOrder& order);

}  // namespace pappus
