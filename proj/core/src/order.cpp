#include "pappus/order.hpp"

#include <algorithm>
#include <string>

namespace pappus {

PartialOrder::PartialOrder(int n) : n_(n), less_(static_cast<std::size_t>(n + 1) * (n + 1), false) {
  if (n < 0) throw PreconditionError("PartialOrder size must be nonnegative");
}

PartialOrder PartialOrder::total(int n) {
  PartialOrder o(n);
  for (int a = 1; a < n; ++a) o.add(a, a + 1);
  return o;
}

PartialOrder PartialOrder::chain(int n, std::span<const int> labels) {
  PartialOrder o(n);
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) o.add(labels[i], labels[i + 1]);
  return o;
}

void PartialOrder::check_range(int a) const {
  if (a < 1 || a > n_)
    throw PreconditionError("element " + std::to_string(a) + " outside 1.." + std::to_string(n_));
}

void PartialOrder::add(int a, int b) {
  check_range(a);
  check_range(b);
  if (a == b || less(b, a))
    throw PreconditionError("relation " + std::to_string(a) + " < " + std::to_string(b) +
                            " violates antisymmetry");
  if (less(a, b)) return;
  // close transitively: everything <= a precedes everything >= b
  std::vector<int> below{a}, above{b};
  for (int x = 1; x <= n_; ++x) {
    if (less(x, a)) below.push_back(x);
    if (less(b, x)) above.push_back(x);
  }
  for (int x : below)
    for (int y : above) less_[static_cast<std::size_t>(x) * (n_ + 1) + y] = true;
}

bool PartialOrder::less(int a, int b) const {
  check_range(a);
  check_range(b);
  return less_[static_cast<std::size_t>(a) * (n_ + 1) + b];
}

bool PartialOrder::totally_ordered(std::span<const int> elements) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (!comparable(elements[i], elements[j])) return false;
  return true;
}

std::vector<int> PartialOrder::sorted(std::span<const int> elements) const {
  if (!totally_ordered(elements))
    throw PreconditionError("elements are not totally ordered by the given order");
  std::vector<int> out(elements.begin(), elements.end());
  std::sort(out.begin(), out.end(), [&](int a, int b) { return less(a, b); });
  return out;
}

std::vector<std::pair<int, int>> PartialOrder::relations() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= n_; ++a)
    for (int b = 1; b <= n_; ++b)
      if (less(a, b)) out.emplace_back(a, b);
  return out;
}

namespace {

bool extend(const PartialOrder& order, std::vector<int>& prefix, std::vector<bool>& used,
            const std::function<bool(const std::vector<int>&)>& fn) {
  const int n = order.size();
  if (static_cast<int>(prefix.size()) == n) return fn(prefix);
  for (int x = 1; x <= n; ++x) {
    if (used[x]) continue;
    bool ready = true;  // all predecessors already placed
    for (int y = 1; y <= n && ready; ++y)
      if (!used[y] && y != x && order.less(y, x)) ready = false;
    if (!ready) continue;
    used[x] = true;
    prefix.push_back(x);
    bool keep_going = extend(order, prefix, used, fn);
    prefix.pop_back();
    used[x] = false;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_linear_extension(const PartialOrder& order,
                               const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> prefix;
  std::vector<bool> used(order.size() + 1, false);
  extend(order, prefix, used, fn);
}

std::vector<std::vector<int>> linear_extensions(const PartialOrder& order) {
  std::vector<std::vector<int>> out;
  for_each_linear_extension(order, [&](const std::vector<int>& ext) {
    out.push_back(ext);
    return true;
  });
  return out;
}

}  // namespace pappus
