#pragma once

// Subset enumeration in size-ascending, then lexicographic order.

#include <algorithm>
#include <vector>

namespace votecut::detail {

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early and returns true as soon as f returns true.
template <typename F>
bool for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (f(static_cast<const std::vector<int>&>(idx))) return true;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Subsets of size lo..hi, smaller sizes first.
template <typename F>
bool for_each_subset(int n, int lo, int hi, F&& f) {
  if (lo < 0) lo = 0;
  for (int k = lo; k <= hi && k <= n; ++k)
    if (for_each_combination(n, k, f)) return true;
  return false;
}

/// Vectors c with 0 <= c[i] <= cap[i] and sum(c) == total, earlier slots
/// filled first (lexicographically descending).
template <typename F>
bool for_each_count_vector(const std::vector<int>& cap, int total, F&& f) {
  const int n = static_cast<int>(cap.size());
  std::vector<int> suffix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = n - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i) + 1] + cap[static_cast<std::size_t>(i)];
  if (total < 0 || total > suffix[0]) return false;
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto& self, int i, int left) -> bool {
    if (i == n) return left == 0 && f(static_cast<const std::vector<int>&>(c));
    const int hi = std::min(left, cap[static_cast<std::size_t>(i)]);
    const int lo = std::max(0, left - suffix[static_cast<std::size_t>(i) + 1]);
    for (int v = hi; v >= lo; --v) {
      c[static_cast<std::size_t>(i)] = v;
      if (self(self, i + 1, left - v)) return true;
    }
    c[static_cast<std::size_t>(i)] = 0;
    return false;
  };
  return rec(rec, 0, total);
}

}  // namespace votecut::detail
