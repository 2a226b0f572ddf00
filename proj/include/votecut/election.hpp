#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace votecut {

/// Position of a candidate in an election's sorted candidate list.
using CandidateIndex = int;

/// Candidate names are nonempty tokens without whitespace, '>' or ','.
bool is_valid_candidate_name(std::string_view name);

/// A strict linear order (most preferred first) with a multiplicity.
struct Ballot {
  std::vector<CandidateIndex> ranking;
  int multiplicity = 1;

  bool operator==(const Ballot&) const = default;
};

/// Candidates plus a multiset of linear-order ballots.
///
/// Candidates are kept sorted byte-wise, so index order is the lexicographic
/// order used wherever a vote lists a set of candidates "in order".
class Election {
 public:
  Election() = default;
  explicit Election(std::vector<std::string> candidates);

  const std::vector<std::string>& candidates() const noexcept {
    return candidates_;
  }
  int candidate_count() const noexcept {
    return static_cast<int>(candidates_.size());
  }
  const std::string& name(CandidateIndex c) const { return candidates_.at(c); }

  std::optional<CandidateIndex> find(std::string_view name) const;
  /// Throws InvalidArgument for unknown names.
  CandidateIndex index_of(std::string_view name) const;

  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }
  /// Sum of multiplicities.
  std::int64_t ballot_count() const noexcept;

  void add_ballot(std::vector<CandidateIndex> ranking, int multiplicity = 1);
  void add_ballot(const std::vector<std::string>& ranking, int multiplicity = 1);

  /// Names of a ballot's ranking.
  std::vector<std::string> ranking_names(const Ballot& ballot) const;

  bool operator==(const Election&) const = default;

 private:
  void check_ranking(const std::vector<CandidateIndex>& ranking) const;

  std::vector<std::string> candidates_;
  std::vector<Ballot> ballots_;
};

/// Complete antisymmetric margin function D(c,d) over a sorted candidate set.
class WeightedMajorityGraph {
 public:
  WeightedMajorityGraph() = default;
  /// All margins zero.
  explicit WeightedMajorityGraph(std::vector<std::string> candidates);

  const std::vector<std::string>& candidates() const noexcept {
    return candidates_;
  }
  int candidate_count() const noexcept {
    return static_cast<int>(candidates_.size());
  }
  const std::string& name(CandidateIndex c) const { return candidates_.at(c); }
  std::optional<CandidateIndex> find(std::string_view name) const;
  CandidateIndex index_of(std::string_view name) const;

  int margin(CandidateIndex c, CandidateIndex d) const {
    return margins_[static_cast<std::size_t>(c) * candidates_.size() +
                    static_cast<std::size_t>(d)];
  }
  /// Sets margin(c,d) = value and margin(d,c) = -value.
  void set_margin(CandidateIndex c, CandidateIndex d, int value);
  void set_margin(std::string_view c, std::string_view d, int value);

  /// Row-major m*m matrix with a zero diagonal.
  std::span<const int> matrix() const noexcept { return margins_; }

  /// n mod 2 when the graph was built from an election with n ballots.
  std::optional<int> parity() const noexcept { return parity_; }
  void set_parity(std::optional<int> parity) { parity_ = parity; }

  /// Induced subgraph on `keep` (distinct indices, any order).
  WeightedMajorityGraph restricted(std::span<const CandidateIndex> keep) const;
  /// Induced subgraph without `removed`.
  WeightedMajorityGraph without(std::span<const CandidateIndex> removed) const;

  /// Equality of candidates and margins; the parity flag is ignored.
  bool operator==(const WeightedMajorityGraph& other) const {
    return candidates_ == other.candidates_ && margins_ == other.margins_;
  }

 private:
  std::vector<std::string> candidates_;
  std::vector<int> margins_;
  std::optional<int> parity_;
};

/// N_V(c,d): ballots ranking c above d, counting multiplicities.
std::int64_t pairwise_support(const Election& e, CandidateIndex c,
                              CandidateIndex d);
std::int64_t pairwise_support(const Election& e, std::string_view c,
                              std::string_view d);

/// D_V(c,d) = N_V(c,d) - N_V(d,c).
std::int64_t pairwise_margin(const Election& e, CandidateIndex c,
                             CandidateIndex d);
std::int64_t pairwise_margin(const Election& e, std::string_view c,
                             std::string_view d);

WeightedMajorityGraph build_wmg(const Election& e);

/// The two votes `c d ->rest` and `<-rest c d`. Together they add +2 to
/// D(c,d) and cancel on every other ordered pair.
std::pair<std::vector<CandidateIndex>, std::vector<CandidateIndex>> w_pair(
    int candidate_count, CandidateIndex c, CandidateIndex d);
std::pair<std::vector<std::string>, std::vector<std::string>> w_pair(
    const std::vector<std::string>& candidates, std::string_view c,
    std::string_view d);

/// Appends `copies` of W(c,d) to `e` (two ballots with multiplicity `copies`).
void append_w_pair(Election& e, CandidateIndex c, CandidateIndex d,
                   int copies);

/// Ballot profile whose WMG is exactly `target`, obtained by appending W pairs
/// to `base` (which must rank exactly the target's candidates). Throws
/// InvalidArgument naming the first pair whose residual margin is odd.
Election mcgarvey_realize(const WeightedMajorityGraph& target,
                          const Election& base);
Election mcgarvey_realize(const WeightedMajorityGraph& target);

/// Appends `newcomers` (in the given order) below every ballot.
Election pad_bottom(const Election& e, const std::vector<std::string>& newcomers);

WeightedMajorityGraph double_margins(const WeightedMajorityGraph& g);

/// Election restricted to `keep` (distinct indices); ballots keep their
/// relative order and multiplicity.
Election project(const Election& e, std::span<const CandidateIndex> keep);

}  // namespace votecut
