#include "votecut/ranked_pairs.hpp"

#include <algorithm>
#include <tuple>

#include "votecut/error.hpp"

namespace votecut {

std::vector<CandidateIndex> LockGraph::sources() const {
  std::vector<char> has_in(static_cast<std::size_t>(candidate_count), 0);
  for (const auto& e : locked) has_in[static_cast<std::size_t>(e.loser)] = 1;
  std::vector<CandidateIndex> out;
  for (int c = 0; c < candidate_count; ++c)
    if (!has_in[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

namespace detail {

std::vector<RankedPair> agenda_raw(std::span<const int> w, int m, int favored) {
  std::vector<RankedPair> agenda;
  agenda.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (int c = 0; c < m; ++c) {
    for (int d = c + 1; d < m; ++d) {
      const int x = w[static_cast<std::size_t>(c * m + d)];
      if (x > 0) agenda.push_back({c, d, x});
      else if (x < 0) agenda.push_back({d, c, -x});
      else if (favored == d) agenda.push_back({d, c, 0});
      else agenda.push_back({c, d, 0});
    }
  }
  std::sort(agenda.begin(), agenda.end(),
            [&](const RankedPair& x, const RankedPair& y) {
              const bool fx = favored >= 0 && x.winner == favored;
              const bool fy = favored >= 0 && y.winner == favored;
              return std::make_tuple(-x.margin, !fx, x.winner, x.loser) <
                     std::make_tuple(-y.margin, !fy, y.winner, y.loser);
            });
  return agenda;
}

}  // namespace detail

namespace {

int favored_index(const WeightedMajorityGraph& g, const TieBreakPolicy& policy) {
  if (policy.kind != TieBreakPolicy::Kind::favor_designated) return -1;
  auto f = g.find(policy.designee);
  return f ? *f : -1;
}

}  // namespace

std::vector<RankedPair> pair_agenda(const WeightedMajorityGraph& g,
                                    const TieBreakPolicy& policy) {
  return detail::agenda_raw(g.matrix(), g.candidate_count(), favored_index(g, policy));
}

namespace {

// Path from `from` to `to` over locked edges, empty when unreachable.
std::vector<CandidateIndex> find_path(const std::vector<std::vector<CandidateIndex>>& adj,
                                      CandidateIndex from, CandidateIndex to) {
  std::vector<int> parent(adj.size(), -2);
  std::vector<CandidateIndex> queue{from};
  parent[static_cast<std::size_t>(from)] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    if (u == to) break;
    for (auto v : adj[static_cast<std::size_t>(u)]) {
      if (parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      queue.push_back(v);
    }
  }
  if (parent[static_cast<std::size_t>(to)] == -2) return {};
  std::vector<CandidateIndex> path;
  for (int v = to; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

LockGraph lock_pairs(int candidate_count, const std::vector<RankedPair>& agenda) {
  LockGraph out;
  out.candidate_count = candidate_count;
  std::vector<std::vector<CandidateIndex>> adj(static_cast<std::size_t>(candidate_count));
  for (const auto& pair : agenda) {
    auto back = find_path(adj, pair.loser, pair.winner);
    if (!back.empty()) {
      out.skipped.push_back({pair, std::move(back)});
      continue;
    }
    adj[static_cast<std::size_t>(pair.winner)].push_back(pair.loser);
    out.locked.push_back(pair);
  }
  return out;
}

CandidateIndex detail::ranked_pairs_winner_raw(std::span<const int> w, int m,
                                               int favored) {
  if (m == 0) throw InvalidArgument("election has no candidates");
  const auto lg = lock_pairs(m, agenda_raw(w, m, favored));
  const auto src = lg.sources();
  if (src.size() != 1) throw Error("lock graph does not have a unique source");
  return src.front();
}

CandidateIndex ranked_pairs_winner(const WeightedMajorityGraph& g,
                                   const TieBreakPolicy& policy) {
  return detail::ranked_pairs_winner_raw(g.matrix(), g.candidate_count(),
                                         favored_index(g, policy));
}

}  // namespace votecut
