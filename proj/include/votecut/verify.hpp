#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "votecut/election.hpp"
#include "votecut/reductions.hpp"

namespace votecut {

struct SweepOptions {
  std::uint64_t seed = 20240607;
  std::uint64_t cases = 0;  // 0 picks the suite default
  int jobs = 1;
  /// reduction-faithfulness: every formula / RX3C instance instead of one
  /// representative per symmetry class.
  bool exhaustive = false;
};

struct SweepReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::uint64_t positives = 0;  // yes-instances seen (suite dependent)
  std::uint64_t failures = 0;
  std::vector<std::string> messages;  // first few failures
  double seconds = 0;
  double poly_ms_mean = 0;  // dcdc-equivalence only

  bool passed() const { return failures == 0; }
};

std::vector<std::string> sweep_names();
/// Throws InvalidArgument for an unknown suite.
SweepReport run_sweep(std::string_view suite, const SweepOptions& opt = {});

namespace sweep {

/// Random WMG with m in [2,6] and even margins in [-10,10].
WeightedMajorityGraph random_wmg(std::uint64_t seed);
/// Random election, m in [min_m, max_m], n in [1, max_n].
Election random_election(std::uint64_t seed, int min_m, int max_m, int max_n);

/// Every 3-CNF over at most 3 variables with one or two clauses, up to
/// renaming and negating variables and reordering clauses and literals.
std::vector<ThreeSatInstance> small_formulas();
/// Same without symmetry reduction (literal order inside a clause kept sorted).
std::vector<ThreeSatInstance> all_small_formulas();
bool satisfiable(const ThreeSatInstance& f);

/// RX3C instances with the given s, one per isomorphism class.
std::vector<Rx3cInstance> rx3c_classes(int s);
/// All RX3C instances with the given s (triples as sorted multisets).
std::vector<Rx3cInstance> rx3c_all(int s);
bool has_exact_cover(const Rx3cInstance& inst);

}  // namespace sweep

}  // namespace votecut
