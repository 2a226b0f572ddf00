#include "votecut/schulze.hpp"

#include <algorithm>

#include "votecut/error.hpp"

namespace votecut {

namespace detail {

void widest_path_closure(std::vector<int>& w, int m) {
  const auto sm = static_cast<std::size_t>(m);
  for (std::size_t k = 0; k < sm; ++k) {
    for (std::size_t i = 0; i < sm; ++i) {
      if (i == k) continue;
      const int ik = w[i * sm + k];
      for (std::size_t j = 0; j < sm; ++j) {
        if (j == i || j == k) continue;
        const int via = std::min(ik, w[k * sm + j]);
        if (via > w[i * sm + j]) w[i * sm + j] = via;
      }
    }
  }
}

}  // namespace detail

StrongestPathMatrix strongest_paths(const WeightedMajorityGraph& g) {
  const int m = g.candidate_count();
  if (m < 2)
    throw InvalidArgument("strongest paths need at least 2 candidates");
  std::vector<int> w(g.matrix().begin(), g.matrix().end());
  detail::widest_path_closure(w, m);
  for (int c = 0; c < m; ++c) w[static_cast<std::size_t>(c * m + c)] = 0;
  return StrongestPathMatrix(m, std::move(w));
}

bool is_schulze_winner(const StrongestPathMatrix& p, CandidateIndex c) {
  for (int d = 0; d < p.size(); ++d)
    if (d != c && p(c, d) < p(d, c)) return false;
  return true;
}

std::vector<CandidateIndex> schulze_winners(const StrongestPathMatrix& p) {
  std::vector<CandidateIndex> out;
  for (int c = 0; c < p.size(); ++c)
    if (is_schulze_winner(p, c)) out.push_back(c);
  return out;
}

std::vector<CandidateIndex> schulze_winners(const WeightedMajorityGraph& g) {
  if (g.candidate_count() == 0)
    throw InvalidArgument("election has no candidates");
  if (g.candidate_count() == 1) return {0};
  return schulze_winners(strongest_paths(g));
}

std::optional<CandidateIndex> condorcet_winner(const WeightedMajorityGraph& g) {
  const int m = g.candidate_count();
  for (int c = 0; c < m; ++c) {
    bool all = true;
    for (int d = 0; d < m && all; ++d)
      if (d != c && g.margin(c, d) <= 0) all = false;
    if (all) return c;
  }
  return std::nullopt;
}

std::vector<CandidateIndex> weak_condorcet_winners(const WeightedMajorityGraph& g) {
  std::vector<CandidateIndex> out;
  const int m = g.candidate_count();
  for (int c = 0; c < m; ++c) {
    bool all = true;
    for (int d = 0; d < m && all; ++d)
      if (d != c && g.margin(c, d) < 0) all = false;
    if (all) out.push_back(c);
  }
  return out;
}

}  // namespace votecut
