#include "votecut/dcdc.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "combinations.hpp"
#include "votecut/error.hpp"
#include "votecut/schulze.hpp"

namespace votecut {

namespace {

// Vertices that reach `target` over edges with margin > threshold.
std::vector<char> reaching_above(const WeightedMajorityGraph& g, CandidateIndex target,
                                 int threshold) {
  const int m = g.candidate_count();
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{target};
  seen[static_cast<std::size_t>(target)] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < m; ++u)
      if (u != v && !seen[static_cast<std::size_t>(u)] && g.margin(u, v) > threshold) {
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  return seen;
}

}  // namespace

StrongerPathSubgraph stronger_path_subgraph(const WeightedMajorityGraph& g, CandidateIndex d,
                                            CandidateIndex c, int threshold) {
  if (d == c) throw InvalidArgument("stronger paths need two distinct endpoints");
  const int m = g.candidate_count();
  const auto useful = reaching_above(g, c, threshold);
  std::vector<char> on_path(static_cast<std::size_t>(m), 0);
  std::vector<char> in_union(static_cast<std::size_t>(m), 0);
  std::vector<int> path;

  auto dfs = [&](auto& self, int u) -> void {
    if (u == c) {
      for (int v : path) in_union[static_cast<std::size_t>(v)] = 1;
      in_union[static_cast<std::size_t>(c)] = 1;
      return;
    }
    on_path[static_cast<std::size_t>(u)] = 1;
    path.push_back(u);
    for (int v = 0; v < m; ++v) {
      if (v == u || on_path[static_cast<std::size_t>(v)] || !useful[static_cast<std::size_t>(v)])
        continue;
      if (g.margin(u, v) > threshold) self(self, v);
    }
    path.pop_back();
    on_path[static_cast<std::size_t>(u)] = 0;
  };
  if (useful[static_cast<std::size_t>(d)]) dfs(dfs, d);

  StrongerPathSubgraph out;
  for (int v = 0; v < m; ++v)
    if (in_union[static_cast<std::size_t>(v)]) out.vertices.push_back(v);
  for (int u : out.vertices)
    for (int v : out.vertices)
      if (u != v && g.margin(u, v) > threshold) out.edges.emplace_back(u, v);
  return out;
}

namespace {

// u != d, c with margin(u,c) >= threshold, reachable from d over edges >=
// threshold avoiding c.
std::vector<CandidateIndex> in_neighbors_at_least(const WeightedMajorityGraph& g, CandidateIndex d,
                                                  CandidateIndex c, int threshold) {
  const int m = g.candidate_count();
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{d};
  seen[static_cast<std::size_t>(d)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < m; ++v)
      if (v != u && v != c && !seen[static_cast<std::size_t>(v)] && g.margin(u, v) >= threshold) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
  }
  std::vector<CandidateIndex> out;
  for (int u = 0; u < m; ++u)
    if (u != c && u != d && seen[static_cast<std::size_t>(u)] && g.margin(u, c) >= threshold)
      out.push_back(u);
  return out;
}

}  // namespace

std::vector<CandidateIndex> stronger_in_neighbors(const WeightedMajorityGraph& g,
                                                  CandidateIndex d, CandidateIndex c,
                                                  int threshold) {
  const int m = g.candidate_count();
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{d};
  seen[static_cast<std::size_t>(d)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < m; ++v)
      if (v != u && v != c && !seen[static_cast<std::size_t>(v)] && g.margin(u, v) > threshold) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
  }
  std::vector<CandidateIndex> out;
  for (int u = 0; u < m; ++u)
    if (u != c && seen[static_cast<std::size_t>(u)] && g.margin(u, c) > threshold) out.push_back(u);
  return out;
}

std::vector<CandidateIndex> blocking_in_neighbors(const WeightedMajorityGraph& g, CandidateIndex d,
                                                  CandidateIndex c, int threshold) {
  const int m = g.candidate_count();
  auto feeds_c = [&](int u) { return u != c && g.margin(u, c) >= threshold; };
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{d};
  seen[static_cast<std::size_t>(d)] = 1;
  std::vector<CandidateIndex> out;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (feeds_c(u)) {
      out.push_back(u);
      continue;  // paths are cut here, so do not look past u
    }
    for (int v = 0; v < m; ++v)
      if (v != u && v != c && !seen[static_cast<std::size_t>(v)] && g.margin(u, v) >= threshold) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DcdcResult solve_dcdc_nonunique(const WeightedMajorityGraph& g, CandidateIndex d, int limit,
                                DcdcStrategy strategy) {
  const int m = g.candidate_count();
  if (d < 0 || d >= m) throw InvalidArgument("despised candidate out of range");
  if (limit < 0) throw InvalidArgument("deletion limit must be nonnegative");
  DcdcResult res;
  if (m == 1) return res;
  auto cube = [](int k) { return static_cast<std::uint64_t>(k) * k * k; };

  const auto p = strongest_paths(g);
  res.closure_ops += cube(m);
  if (!is_schulze_winner(p, d)) {
    res.decision = true;
    return res;
  }
  const auto& dname = g.name(d);
  for (int c = 0; c < m; ++c) {
    if (c == d) continue;
    if (g.margin(d, c) >= p(c, d) || p(c, d) <= 0) continue;
    const auto& cname = g.name(c);
    WeightedMajorityGraph cur = g;
    auto pc = p;
    int ctr = 0;
    std::vector<std::string> deleted;
    while (true) {
      const int dl = cur.index_of(dname);
      const int cl = cur.index_of(cname);
      const int threshold = pc(cl, dl);
      auto n = strategy == DcdcStrategy::blocking ? blocking_in_neighbors(cur, dl, cl, threshold)
                                                   : stronger_in_neighbors(cur, dl, cl, threshold);
      res.closure_ops += static_cast<std::uint64_t>(cur.candidate_count()) * cur.candidate_count();
      if (n.empty() || std::find(n.begin(), n.end(), dl) != n.end()) break;
      ctr += static_cast<int>(n.size());
      if (ctr > limit) break;
      for (int v : n) deleted.push_back(cur.name(v));
      cur = cur.without(n);
      ++res.rounds;
      pc = strongest_paths(cur);
      res.closure_ops += cube(cur.candidate_count());
      if (!is_schulze_winner(pc, cur.index_of(dname))) {
        res.decision = true;
        std::sort(deleted.begin(), deleted.end());
        res.deleted = std::move(deleted);
        res.rival = cname;
        return res;
      }
    }
  }
  return res;
}

DcdcResult solve_dcdc_nonunique(const Election& e, std::string_view d, int limit,
                                DcdcStrategy strategy) {
  const auto g = build_wmg(e);
  return solve_dcdc_nonunique(g, g.index_of(d), limit, strategy);
}

std::optional<InNeighborWitness> in_neighbor_witness(const WeightedMajorityGraph& g,
                                                     CandidateIndex d, int limit) {
  const int m = g.candidate_count();
  if (m < 2) return std::nullopt;
  const auto p = strongest_paths(g);
  for (int c = 0; c < m; ++c)
    if (c != d && p(c, d) > p(d, c)) return InNeighborWitness{g.name(c), {}};

  const auto& dname = g.name(d);
  for (int c = 0; c < m; ++c) {
    if (c == d) continue;
    auto n = in_neighbors_at_least(g, d, c, p(c, d));
    const auto& cname = g.name(c);
    std::optional<InNeighborWitness> found;
    detail::for_each_subset(static_cast<int>(n.size()), 1, limit, [&](const std::vector<int>& pick) {
      std::vector<CandidateIndex> del;
      for (int i : pick) del.push_back(n[static_cast<std::size_t>(i)]);
      const auto h = g.without(del);
      const auto ph = strongest_paths(h);
      const int dl = h.index_of(dname);
      const int cl = h.index_of(cname);
      if (ph(cl, dl) <= ph(dl, cl)) return false;
      InNeighborWitness w{cname, {}};
      for (int v : del) w.deleted.push_back(g.name(v));
      found = std::move(w);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

CutDecision default_cut_oracle(const DiGraph& g, const CutQuery& q) { return decide(g, q); }

namespace {

void require_schulze_destructive(const ControlInstance& inst) {
  inst.validate();
  if (inst.rule.rule != Rule::schulze) throw InvalidArgument("cut drivers are Schulze-only");
  if (inst.mode != Mode::destructive || inst.model != WinnerModel::nonunique)
    throw InvalidArgument("cut drivers need destructive control in the nonunique model");
  if (inst.exact) throw InvalidArgument("cut drivers do not handle exact control");
}

std::vector<int> distinct_margins(const WeightedMajorityGraph& g) {
  std::set<int> s;
  for (int c = 0; c < g.candidate_count(); ++c)
    for (int d = 0; d < g.candidate_count(); ++d)
      if (c != d) s.insert(g.margin(c, d));
  return {s.rbegin(), s.rend()};
}

DiGraph threshold_graph(const WeightedMajorityGraph& g, int threshold) {
  DiGraph h(g.candidates());
  for (int u = 0; u < g.candidate_count(); ++u)
    for (int v = 0; v < g.candidate_count(); ++v)
      if (u != v && g.margin(u, v) >= threshold) h.add_edge(u, v);
  return h;
}

bool p_wins_registered(const ControlInstance& inst) {
  const auto reg = inst.registered_candidates();
  std::vector<CandidateIndex> keep;
  for (const auto& c : reg) keep.push_back(inst.election.index_of(c));
  const auto g = build_wmg(project(inst.election, keep));
  const auto w = schulze_winners(g);
  return std::find(w.begin(), w.end(), g.index_of(inst.distinguished)) != w.end();
}

template <typename MakeQuery>
CutDriverResult iterate_rivals(const WeightedMajorityGraph& g, int p, const CutOracle& oracle,
                               MakeQuery&& make_query) {
  CutDriverResult res;
  const auto thresholds = distinct_margins(g);
  for (int c = 0; c < g.candidate_count(); ++c) {
    if (c == p) continue;
    for (int theta : thresholds) {
      auto q = make_query(c);
      if (!q) break;
      const auto h = threshold_graph(g, theta);
      ++res.queries;
      const auto ans = oracle(h, *q);
      if (!ans.decision) continue;
      res.decision = true;
      res.rival = g.name(c);
      res.threshold = theta;
      for (int v : ans.witness) res.cut.push_back(g.name(v));
      return res;
    }
  }
  return res;
}

}  // namespace

CutDriverResult dcac_dc_via_cut(const ControlInstance& inst, const CutOracle& oracle) {
  require_schulze_destructive(inst);
  int l_ac = 0, l_dc = 0;
  switch (inst.type) {
    case ControlType::AC: l_ac = inst.limits.ac; break;
    case ControlType::DC: l_dc = inst.limits.dc; break;
    case ControlType::AC_DC: l_ac = inst.limits.ac; l_dc = inst.limits.dc; break;
    default: throw InvalidArgument("cut driver handles AC, DC and AC_DC only");
  }
  CutDriverResult res;
  if (!p_wins_registered(inst)) {
    res.decision = true;
    return res;
  }
  const auto g = build_wmg(inst.election);
  const int p = g.index_of(inst.distinguished);
  if (condorcet_winner(g) == p) return res;

  const int nd = static_cast<int>(inst.spare_candidates.size());
  return iterate_rivals(g, p, oracle, [&](int c) -> std::optional<CutQuery> {
    const bool c_spare = inst.is_spare(g.name(c));
    if (c_spare && l_ac == 0) return std::nullopt;
    CutQuery q;
    q.problem = CutQuery::Problem::mippvc;
    q.s = p;
    q.t = c;
    for (const auto& dn : inst.spare_candidates)
      if (dn != g.name(c)) q.labeled.push_back(g.index_of(dn));
    q.x = l_dc;
    q.y = std::max(0, nd - l_ac);
    return q;
  });
}

CutDriverResult group_control_via_cut(const ControlInstance& inst, const CutOracle& oracle) {
  require_schulze_destructive(inst);
  if (inst.type != ControlType::DCG && inst.type != ControlType::ACG)
    throw InvalidArgument("group driver handles DCG and ACG only");
  CutDriverResult res;
  if (!p_wins_registered(inst)) {
    res.decision = true;
    return res;
  }
  const bool adding = inst.type == ControlType::ACG;
  // deleting groups only ever touches registered candidates
  WeightedMajorityGraph g;
  if (adding) {
    g = build_wmg(inst.election);
  } else {
    std::vector<CandidateIndex> keep;
    for (const auto& c : inst.registered_candidates()) keep.push_back(inst.election.index_of(c));
    g = build_wmg(project(inst.election, keep));
  }
  const int p = g.index_of(inst.distinguished);

  std::map<std::string, int> colour_of_label;
  std::vector<int> colour(static_cast<std::size_t>(g.candidate_count()), 0);
  const int registered_colour = 0;
  for (int v = 0; v < g.candidate_count(); ++v) {
    const auto& name = g.name(v);
    if (adding && !inst.is_spare(name)) {
      colour[static_cast<std::size_t>(v)] = registered_colour;
      continue;
    }
    const auto& label = inst.groups.at(name);
    auto [it, fresh] = colour_of_label.emplace(label, static_cast<int>(colour_of_label.size()) + 1);
    colour[static_cast<std::size_t>(v)] = it->second;
  }
  const int nd = static_cast<int>(inst.spare_candidates.size());
  return iterate_rivals(g, p, oracle, [&](int c) -> std::optional<CutQuery> {
    CutQuery q;
    q.problem = CutQuery::Problem::cppvc;
    q.s = p;
    q.t = c;
    q.colour = colour;
    if (adding) {
      q.k = nd;
      q.min_size = std::max(0, nd - inst.limits.ac);
    } else {
      q.k = inst.limits.dc;
    }
    return q;
  });
}

}  // namespace votecut
