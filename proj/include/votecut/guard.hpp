#pragma once

#include <cstdint>

namespace votecut {

inline constexpr std::uint64_t kDefaultSearchGuard = 10'000'000;

/// Node budget for exhaustive searches: VOTECUT_GUARD if set, else 10^7.
std::uint64_t search_guard();

/// Throws SearchRefused when `estimate` exceeds the guard and `force` is off.
void enforce_guard(std::uint64_t estimate, bool force);

/// a*b and a+b clamped to UINT64_MAX.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b);
/// sum_{i=0}^{k} C(n, i), saturating.
std::uint64_t subsets_up_to(int n, int k);
std::uint64_t binomial(int n, int k);

}  // namespace votecut
