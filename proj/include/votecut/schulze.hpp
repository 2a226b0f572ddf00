#pragma once

#include <optional>
#include <span>
#include <vector>

#include "votecut/election.hpp"

namespace votecut {

/// P(c,d) for every ordered pair of distinct candidates. Diagonal entries
/// are stored as 0 and carry no meaning.
class StrongestPathMatrix {
 public:
  StrongestPathMatrix() = default;
  StrongestPathMatrix(int size, std::vector<int> strength)
      : size_(size), strength_(std::move(strength)) {}

  int size() const noexcept { return size_; }
  int operator()(CandidateIndex c, CandidateIndex d) const {
    return strength_[static_cast<std::size_t>(c) * static_cast<std::size_t>(size_) +
                     static_cast<std::size_t>(d)];
  }
  std::span<const int> raw() const noexcept { return strength_; }

  bool operator==(const StrongestPathMatrix&) const = default;

 private:
  int size_ = 0;
  std::vector<int> strength_;
};

/// Max-min closure over the complete margin digraph (every ordered pair is an
/// edge, whatever its sign). Throws InvalidArgument below 2 candidates.
StrongestPathMatrix strongest_paths(const WeightedMajorityGraph& g);

/// Candidates c with P(c,d) >= P(d,c) for every d, in index order.
std::vector<CandidateIndex> schulze_winners(const WeightedMajorityGraph& g);
std::vector<CandidateIndex> schulze_winners(const StrongestPathMatrix& p);

bool is_schulze_winner(const StrongestPathMatrix& p, CandidateIndex c);

std::optional<CandidateIndex> condorcet_winner(const WeightedMajorityGraph& g);
std::vector<CandidateIndex> weak_condorcet_winners(const WeightedMajorityGraph& g);

namespace detail {
/// In-place closure of an m*m row-major margin matrix.
void widest_path_closure(std::vector<int>& w, int m);
}  // namespace detail

}  // namespace votecut
