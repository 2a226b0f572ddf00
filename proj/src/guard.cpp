#include "votecut/guard.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "votecut/error.hpp"

namespace votecut {

std::uint64_t search_guard() {
  if (const char* env = std::getenv("VOTECUT_GUARD")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("VOTECUT_GUARD is not a number: ") + env);
    }
  }
  return kDefaultSearchGuard;
}

void enforce_guard(std::uint64_t estimate, bool force) {
  if (force) return;
  const auto guard = search_guard();
  if (estimate > guard) throw SearchRefused(estimate, guard);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > max / a) return max;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) / i stays integral at every step
    const auto num = static_cast<std::uint64_t>(n - k + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t subsets_up_to(int n, int k) {
  std::uint64_t total = 0;
  for (int i = 0; i <= k && i <= n; ++i) total = sat_add(total, binomial(n, i));
  return total;
}

}  // namespace votecut
