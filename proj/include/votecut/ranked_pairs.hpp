#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "votecut/election.hpp"

namespace votecut {

/// Fixed tie-breaking among equal-margin pairs.
struct TieBreakPolicy {
  enum class Kind { lexicographic, favor_designated };
  Kind kind = Kind::lexicographic;
  std::string designee;  // only for favor_designated

  static TieBreakPolicy lexicographic() { return {}; }
  static TieBreakPolicy favor(std::string name) {
    return {Kind::favor_designated, std::move(name)};
  }
  bool operator==(const TieBreakPolicy&) const = default;
};

struct RankedPair {
  CandidateIndex winner;
  CandidateIndex loser;
  int margin;
  bool operator==(const RankedPair&) const = default;
};

struct SkippedPair {
  RankedPair pair;
  /// Locked path loser -> ... -> winner that the pair would close into a cycle.
  std::vector<CandidateIndex> cycle_witness;
};

struct LockGraph {
  int candidate_count = 0;
  std::vector<RankedPair> locked;
  std::vector<SkippedPair> skipped;

  /// Vertices with no locked incoming edge.
  std::vector<CandidateIndex> sources() const;
};

/// One directed pair per unordered pair, in processing order.
std::vector<RankedPair> pair_agenda(const WeightedMajorityGraph& g,
                                    const TieBreakPolicy& policy);

LockGraph lock_pairs(int candidate_count, const std::vector<RankedPair>& agenda);

CandidateIndex ranked_pairs_winner(const WeightedMajorityGraph& g,
                                   const TieBreakPolicy& policy);

namespace detail {
/// Agenda over a row-major m*m margin matrix; `favored` < 0 means
/// lexicographic tie-breaking.
std::vector<RankedPair> agenda_raw(std::span<const int> w, int m, int favored);
CandidateIndex ranked_pairs_winner_raw(std::span<const int> w, int m, int favored);
}  // namespace detail

}  // namespace votecut
