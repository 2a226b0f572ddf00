#include "votecut/election.hpp"

#include <algorithm>
#include <cctype>

#include "votecut/error.hpp"

namespace votecut {

bool is_valid_candidate_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == '>' ||
           ch == ',';
  });
}

namespace {

std::vector<std::string> sorted_unique_names(std::vector<std::string> names) {
  for (const auto& n : names) {
    if (!is_valid_candidate_name(n))
      throw InvalidArgument("invalid candidate name '" + n + "'");
  }
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end())
    throw InvalidArgument("duplicate candidate '" + *dup + "'");
  return names;
}

std::optional<CandidateIndex> find_sorted(const std::vector<std::string>& v,
                                          std::string_view name) {
  auto it = std::lower_bound(v.begin(), v.end(), name);
  if (it == v.end() || *it != name) return std::nullopt;
  return static_cast<CandidateIndex>(it - v.begin());
}

}  // namespace

// ---------------------------------------------------------------------------
// Election

Election::Election(std::vector<std::string> candidates)
    : candidates_(sorted_unique_names(std::move(candidates))) {}

std::optional<CandidateIndex> Election::find(std::string_view name) const {
  return find_sorted(candidates_, name);
}

CandidateIndex Election::index_of(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw InvalidArgument("unknown candidate '" + std::string(name) + "'");
}

std::int64_t Election::ballot_count() const noexcept {
  std::int64_t n = 0;
  for (const auto& b : ballots_) n += b.multiplicity;
  return n;
}

void Election::check_ranking(const std::vector<CandidateIndex>& ranking) const {
  const int m = candidate_count();
  if (static_cast<int>(ranking.size()) != m)
    throw InvalidArgument("ballot ranks " + std::to_string(ranking.size()) +
                          " candidates, election has " + std::to_string(m));
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (CandidateIndex c : ranking) {
    if (c < 0 || c >= m)
      throw InvalidArgument("ballot references candidate index " +
                            std::to_string(c));
    if (seen[static_cast<std::size_t>(c)]++)
      throw InvalidArgument("ballot ranks '" + candidates_[c] + "' twice");
  }
}

void Election::add_ballot(std::vector<CandidateIndex> ranking,
                          int multiplicity) {
  if (multiplicity <= 0)
    throw InvalidArgument("ballot multiplicity must be positive");
  check_ranking(ranking);
  ballots_.push_back({std::move(ranking), multiplicity});
}

void Election::add_ballot(const std::vector<std::string>& ranking,
                          int multiplicity) {
  std::vector<CandidateIndex> idx;
  idx.reserve(ranking.size());
  for (const auto& n : ranking) idx.push_back(index_of(n));
  add_ballot(std::move(idx), multiplicity);
}

std::vector<std::string> Election::ranking_names(const Ballot& ballot) const {
  std::vector<std::string> out;
  out.reserve(ballot.ranking.size());
  for (CandidateIndex c : ballot.ranking) out.push_back(candidates_.at(c));
  return out;
}

// ---------------------------------------------------------------------------
// WeightedMajorityGraph

WeightedMajorityGraph::WeightedMajorityGraph(std::vector<std::string> candidates)
    : candidates_(sorted_unique_names(std::move(candidates))),
      margins_(candidates_.size() * candidates_.size(), 0) {}

std::optional<CandidateIndex> WeightedMajorityGraph::find(
    std::string_view name) const {
  return find_sorted(candidates_, name);
}

CandidateIndex WeightedMajorityGraph::index_of(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw InvalidArgument("unknown candidate '" + std::string(name) + "'");
}

void WeightedMajorityGraph::set_margin(CandidateIndex c, CandidateIndex d,
                                       int value) {
  const int m = candidate_count();
  if (c < 0 || d < 0 || c >= m || d >= m)
    throw InvalidArgument("candidate index out of range");
  if (c == d) throw InvalidArgument("margin of a candidate against itself");
  const auto sm = static_cast<std::size_t>(m);
  margins_[static_cast<std::size_t>(c) * sm + static_cast<std::size_t>(d)] =
      value;
  margins_[static_cast<std::size_t>(d) * sm + static_cast<std::size_t>(c)] =
      -value;
}

void WeightedMajorityGraph::set_margin(std::string_view c, std::string_view d,
                                       int value) {
  set_margin(index_of(c), index_of(d), value);
}

WeightedMajorityGraph WeightedMajorityGraph::restricted(
    std::span<const CandidateIndex> keep_in) const {
  std::vector<CandidateIndex> keep(keep_in.begin(), keep_in.end());
  std::sort(keep.begin(), keep.end());
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (CandidateIndex c : keep) names.push_back(candidates_.at(c));
  WeightedMajorityGraph out(std::move(names));
  const auto k = keep.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.margins_[i * k + j] = margin(keep[i], keep[j]);
  out.parity_ = parity_;
  return out;
}

WeightedMajorityGraph WeightedMajorityGraph::without(
    std::span<const CandidateIndex> removed) const {
  std::vector<char> gone(candidates_.size(), 0);
  for (CandidateIndex c : removed) gone.at(static_cast<std::size_t>(c)) = 1;
  std::vector<CandidateIndex> keep;
  for (int c = 0; c < candidate_count(); ++c)
    if (!gone[static_cast<std::size_t>(c)]) keep.push_back(c);
  return restricted(keep);
}

// ---------------------------------------------------------------------------
// Pairwise statistics

namespace {

void check_pair(const Election& e, CandidateIndex c, CandidateIndex d) {
  if (c < 0 || d < 0 || c >= e.candidate_count() || d >= e.candidate_count())
    throw InvalidArgument("candidate index out of range");
  if (c == d)
    throw InvalidArgument("pairwise comparison of '" + e.name(c) +
                          "' with itself");
}

}  // namespace

std::int64_t pairwise_support(const Election& e, CandidateIndex c,
                              CandidateIndex d) {
  check_pair(e, c, d);
  std::int64_t n = 0;
  for (const auto& b : e.ballots()) {
    for (CandidateIndex x : b.ranking) {
      if (x == c) {
        n += b.multiplicity;
        break;
      }
      if (x == d) break;
    }
  }
  return n;
}

std::int64_t pairwise_support(const Election& e, std::string_view c,
                              std::string_view d) {
  return pairwise_support(e, e.index_of(c), e.index_of(d));
}

std::int64_t pairwise_margin(const Election& e, CandidateIndex c,
                             CandidateIndex d) {
  return pairwise_support(e, c, d) - pairwise_support(e, d, c);
}

std::int64_t pairwise_margin(const Election& e, std::string_view c,
                             std::string_view d) {
  return pairwise_margin(e, e.index_of(c), e.index_of(d));
}

WeightedMajorityGraph build_wmg(const Election& e) {
  WeightedMajorityGraph g(e.candidates());
  const int m = e.candidate_count();
  std::vector<int> acc(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (const auto& b : e.ballots()) {
    for (std::size_t i = 0; i < b.ranking.size(); ++i) {
      for (std::size_t j = i + 1; j < b.ranking.size(); ++j) {
        acc[static_cast<std::size_t>(b.ranking[i]) * static_cast<std::size_t>(m) +
            static_cast<std::size_t>(b.ranking[j])] += b.multiplicity;
      }
    }
  }
  for (int c = 0; c < m; ++c)
    for (int d = c + 1; d < m; ++d)
      g.set_margin(c, d,
                   acc[static_cast<std::size_t>(c * m + d)] -
                       acc[static_cast<std::size_t>(d * m + c)]);
  g.set_parity(static_cast<int>(e.ballot_count() % 2));
  return g;
}

// ---------------------------------------------------------------------------
// Constructions

std::pair<std::vector<CandidateIndex>, std::vector<CandidateIndex>> w_pair(
    int candidate_count, CandidateIndex c, CandidateIndex d) {
  if (c < 0 || d < 0 || c >= candidate_count || d >= candidate_count)
    throw InvalidArgument("candidate index out of range");
  if (c == d) throw InvalidArgument("W pair needs two distinct candidates");
  std::vector<CandidateIndex> rest;
  for (int x = 0; x < candidate_count; ++x)
    if (x != c && x != d) rest.push_back(x);

  std::vector<CandidateIndex> first{c, d};
  first.insert(first.end(), rest.begin(), rest.end());
  std::vector<CandidateIndex> second(rest.rbegin(), rest.rend());
  second.push_back(c);
  second.push_back(d);
  return {std::move(first), std::move(second)};
}

std::pair<std::vector<std::string>, std::vector<std::string>> w_pair(
    const std::vector<std::string>& candidates, std::string_view c,
    std::string_view d) {
  Election e(candidates);
  auto [first, second] =
      w_pair(e.candidate_count(), e.index_of(c), e.index_of(d));
  Ballot b1{std::move(first), 1};
  Ballot b2{std::move(second), 1};
  return {e.ranking_names(b1), e.ranking_names(b2)};
}

void append_w_pair(Election& e, CandidateIndex c, CandidateIndex d,
                   int copies) {
  if (copies <= 0) return;
  auto [first, second] = w_pair(e.candidate_count(), c, d);
  e.add_ballot(std::move(first), copies);
  e.add_ballot(std::move(second), copies);
}

Election mcgarvey_realize(const WeightedMajorityGraph& target,
                          const Election& base) {
  if (base.candidates() != target.candidates())
    throw InvalidArgument("base election must rank exactly the target's candidates");
  const auto current = build_wmg(base);
  Election out = base;
  const int m = target.candidate_count();
  for (int c = 0; c < m; ++c) {
    for (int d = c + 1; d < m; ++d) {
      const long long residual =
          static_cast<long long>(target.margin(c, d)) - current.margin(c, d);
      if (residual % 2 != 0)
        throw InvalidArgument("odd residual margin " + std::to_string(residual) +
                              " on pair (" + target.name(c) + ", " +
                              target.name(d) + ")");
      if (residual > 0) append_w_pair(out, c, d, static_cast<int>(residual / 2));
      if (residual < 0) append_w_pair(out, d, c, static_cast<int>(-residual / 2));
    }
  }
  return out;
}

Election mcgarvey_realize(const WeightedMajorityGraph& target) {
  return mcgarvey_realize(target, Election(target.candidates()));
}

Election pad_bottom(const Election& e,
                    const std::vector<std::string>& newcomers) {
  std::vector<std::string> all = e.candidates();
  for (const auto& n : newcomers) {
    if (e.find(n))
      throw InvalidArgument("newcomer '" + n + "' collides with a candidate");
    all.push_back(n);
  }
  Election out(all);  // rejects duplicates among newcomers
  for (const auto& b : e.ballots()) {
    auto names = e.ranking_names(b);
    names.insert(names.end(), newcomers.begin(), newcomers.end());
    out.add_ballot(names, b.multiplicity);
  }
  return out;
}

WeightedMajorityGraph double_margins(const WeightedMajorityGraph& g) {
  WeightedMajorityGraph out(g.candidates());
  const int m = g.candidate_count();
  for (int c = 0; c < m; ++c)
    for (int d = c + 1; d < m; ++d) out.set_margin(c, d, 2 * g.margin(c, d));
  if (g.parity()) out.set_parity(0);
  return out;
}

Election project(const Election& e, std::span<const CandidateIndex> keep_in) {
  std::vector<CandidateIndex> keep(keep_in.begin(), keep_in.end());
  std::sort(keep.begin(), keep.end());
  std::vector<std::string> names;
  std::vector<int> remap(static_cast<std::size_t>(e.candidate_count()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    names.push_back(e.name(keep[i]));
    remap.at(static_cast<std::size_t>(keep[i])) = static_cast<int>(i);
  }
  Election out(std::move(names));
  for (const auto& b : e.ballots()) {
    std::vector<CandidateIndex> r;
    r.reserve(keep.size());
    for (CandidateIndex c : b.ranking)
      if (int k = remap[static_cast<std::size_t>(c)]; k >= 0) r.push_back(k);
    out.add_ballot(std::move(r), b.multiplicity);
  }
  return out;
}

}  // namespace votecut
