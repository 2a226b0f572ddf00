#include "votecut/control.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "combinations.hpp"
#include "votecut/error.hpp"
#include "votecut/guard.hpp"
#include "votecut/schulze.hpp"

namespace votecut {

// ---------------------------------------------------------------------------
// Names

std::string to_string(ControlType t, bool exact) {
  std::string base;
  switch (t) {
    case ControlType::AC: base = "AC"; break;
    case ControlType::DC: base = "DC"; break;
    case ControlType::RC: base = "RC"; break;
    case ControlType::AV: base = "AV"; break;
    case ControlType::DV: base = "DV"; break;
    case ControlType::RV: base = "RV"; break;
    case ControlType::B: base = "B"; break;
    case ControlType::AC_DC: base = "AC_DC"; break;
    case ControlType::AV_DV: base = "AV_DV"; break;
    case ControlType::MULTIMODE: base = "MULTIMODE"; break;
    case ControlType::DCG: base = "DCG"; break;
    case ControlType::ACG: base = "ACG"; break;
  }
  return exact ? "E_" + base : base;
}

std::string to_string(Mode m) {
  return m == Mode::constructive ? "constructive" : "destructive";
}

std::string to_string(WinnerModel m) {
  return m == WinnerModel::unique ? "unique" : "nonunique";
}

std::string to_string(const RuleSpec& r) {
  if (r.rule == Rule::schulze) return "schulze";
  if (r.policy.kind == TieBreakPolicy::Kind::favor_designated)
    return "ranked-pairs:favor=" + r.policy.designee;
  return "ranked-pairs";
}

// ---------------------------------------------------------------------------
// Instance helpers

std::vector<std::string> ControlInstance::registered_candidates() const {
  std::vector<std::string> out;
  for (const auto& c : election.candidates())
    if (!is_spare(c)) out.push_back(c);
  return out;
}

bool ControlInstance::is_spare(std::string_view candidate) const {
  return std::find(spare_candidates.begin(), spare_candidates.end(), candidate) !=
         spare_candidates.end();
}

namespace {

bool uses_groups(ControlType t) { return t == ControlType::DCG || t == ControlType::ACG; }

void check_permutation(const std::vector<CandidateIndex>& r, int m, const std::string& what) {
  if (static_cast<int>(r.size()) != m)
    throw InvalidArgument(what + " does not rank every candidate");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (auto c : r) {
    if (c < 0 || c >= m || seen[static_cast<std::size_t>(c)]++)
      throw InvalidArgument(what + " is not a permutation of the candidates");
  }
}

}  // namespace

void ControlInstance::validate() const {
  const int m = election.candidate_count();
  std::set<std::string> spare_set;
  for (const auto& d : spare_candidates) {
    if (!election.find(d)) throw InvalidArgument("spare candidate '" + d + "' is not ranked");
    if (!spare_set.insert(d).second)
      throw InvalidArgument("spare candidate '" + d + "' listed twice");
  }
  if (!election.find(distinguished))
    throw InvalidArgument("distinguished candidate '" + distinguished + "' is unknown");
  if (spare_set.count(distinguished))
    throw InvalidArgument("distinguished candidate must be registered");
  for (std::size_t i = 0; i < spare_ballots.size(); ++i) {
    check_permutation(spare_ballots[i].ranking, m, "spare ballot " + std::to_string(i + 1));
    if (spare_ballots[i].multiplicity <= 0)
      throw InvalidArgument("spare ballot multiplicity must be positive");
  }
  for (int v : {limits.ac, limits.dc, limits.rc, limits.av, limits.dv, limits.rv, limits.b})
    if (v < 0) throw InvalidArgument("limits must be nonnegative");
  if (!groups.empty() && !uses_groups(type))
    throw InvalidArgument("groups are only meaningful for DCG and ACG");
  for (const auto& [c, label] : groups)
    if (!election.find(c)) throw InvalidArgument("group entry for unknown candidate '" + c + "'");
  if (type == ControlType::DCG) {
    for (const auto& c : registered_candidates())
      if (!groups.count(c)) throw InvalidArgument("candidate '" + c + "' has no group");
  }
  if (type == ControlType::ACG) {
    for (const auto& c : spare_candidates)
      if (!groups.count(c)) throw InvalidArgument("spare candidate '" + c + "' has no group");
  }
}

std::vector<std::vector<CandidateIndex>> expand_ballots(const std::vector<Ballot>& ballots) {
  std::vector<std::vector<CandidateIndex>> out;
  for (const auto& b : ballots)
    for (int i = 0; i < b.multiplicity; ++i) out.push_back(b.ranking);
  return out;
}

// ---------------------------------------------------------------------------
// Goals

namespace {

std::vector<CandidateIndex> winners_raw(const RuleSpec& rule, std::vector<int> w, int m,
                                        int favored) {
  if (m == 1) return {0};
  if (rule.rule == Rule::ranked_pairs)
    return {detail::ranked_pairs_winner_raw(w, m, favored)};
  detail::widest_path_closure(w, m);
  std::vector<CandidateIndex> out;
  for (int c = 0; c < m; ++c) {
    bool wins = true;
    for (int d = 0; d < m && wins; ++d)
      if (d != c && w[static_cast<std::size_t>(c * m + d)] < w[static_cast<std::size_t>(d * m + c)])
        wins = false;
    if (wins) out.push_back(c);
  }
  return out;
}

int favored_in(const RuleSpec& rule, const std::vector<std::string>& names) {
  if (rule.rule != Rule::ranked_pairs ||
      rule.policy.kind != TieBreakPolicy::Kind::favor_designated)
    return -1;
  auto it = std::lower_bound(names.begin(), names.end(), rule.policy.designee);
  if (it == names.end() || *it != rule.policy.designee) return -1;
  return static_cast<int>(it - names.begin());
}

}  // namespace

std::vector<CandidateIndex> rule_winners(const RuleSpec& rule,
                                         const WeightedMajorityGraph& g) {
  if (g.candidate_count() == 0) throw InvalidArgument("election has no candidates");
  const auto m = g.matrix();
  return winners_raw(rule, std::vector<int>(m.begin(), m.end()), g.candidate_count(),
                     favored_in(rule, g.candidates()));
}

bool goal_met(Mode mode, WinnerModel model, int p,
              const std::vector<CandidateIndex>& winners) {
  const bool in = p >= 0 && std::find(winners.begin(), winners.end(), p) != winners.end();
  const bool sole = in && winners.size() == 1;
  if (mode == Mode::constructive) return model == WinnerModel::unique ? sole : in;
  return model == WinnerModel::unique ? !sole : !in;
}

bool goal_met(const RuleSpec& rule, Mode mode, WinnerModel model, std::string_view p,
              const Election& e) {
  auto idx = e.find(p);
  if (!idx) return mode == Mode::destructive;
  return goal_met(mode, model, *idx, rule_winners(rule, build_wmg(e)));
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Range {
  int lo = 0;
  int hi = 0;
};

struct Prongs {
  Range cdel, cadd, vdel, vadd, bribe;
  bool cand_paired = false;
  bool vote_paired = false;
};

Prongs prongs_for(const ControlInstance& inst) {
  Prongs p;
  auto set = [&](Range& r, int limit) { r = {inst.exact ? limit : 0, limit}; };
  const auto& l = inst.limits;
  switch (inst.type) {
    case ControlType::AC: set(p.cadd, l.ac); break;
    case ControlType::DC: set(p.cdel, l.dc); break;
    case ControlType::AC_DC: set(p.cadd, l.ac); set(p.cdel, l.dc); break;
    case ControlType::RC: set(p.cdel, l.rc); set(p.cadd, l.rc); p.cand_paired = true; break;
    case ControlType::AV: set(p.vadd, l.av); break;
    case ControlType::DV: set(p.vdel, l.dv); break;
    case ControlType::AV_DV: set(p.vadd, l.av); set(p.vdel, l.dv); break;
    case ControlType::RV: set(p.vdel, l.rv); set(p.vadd, l.rv); p.vote_paired = true; break;
    case ControlType::B: set(p.bribe, l.b); break;
    case ControlType::MULTIMODE:
      set(p.cadd, l.ac); set(p.cdel, l.dc); set(p.vadd, l.av); set(p.vdel, l.dv);
      set(p.bribe, l.b);
      break;
    case ControlType::DCG: set(p.cdel, l.dc); break;
    case ControlType::ACG: set(p.cadd, l.ac); break;
  }
  return p;
}

struct Universe {
  std::vector<int> deletable;  // C \ {p}
  std::vector<int> addable;    // D
  std::vector<std::vector<int>> delete_groups;  // DCG
  std::vector<std::vector<int>> add_groups;     // ACG
  int p = 0;
  std::vector<std::vector<CandidateIndex>> v;  // expanded V
  std::vector<std::vector<CandidateIndex>> u;  // expanded U
};

std::vector<std::vector<int>> groups_of(const ControlInstance& inst,
                                        const std::vector<int>& members, int exclude_with) {
  std::map<std::string, std::vector<int>> by_label;
  for (int c : members) by_label[inst.groups.at(inst.election.name(c))].push_back(c);
  std::vector<std::vector<int>> out;
  for (auto& [label, cs] : by_label) {
    if (exclude_with >= 0) {
      const auto& pl = inst.groups.find(inst.election.name(exclude_with));
      if (pl != inst.groups.end() && pl->second == label) continue;
    }
    out.push_back(cs);
  }
  return out;
}

Universe make_universe(const ControlInstance& inst) {
  Universe u;
  u.p = inst.election.index_of(inst.distinguished);
  for (int c = 0; c < inst.election.candidate_count(); ++c) {
    if (inst.is_spare(inst.election.name(c))) u.addable.push_back(c);
    else if (c != u.p) u.deletable.push_back(c);
  }
  if (inst.type == ControlType::DCG) u.delete_groups = groups_of(inst, u.deletable, u.p);
  if (inst.type == ControlType::ACG) u.add_groups = groups_of(inst, u.addable, -1);
  u.v = expand_ballots(inst.election.ballots());
  u.u = expand_ballots(inst.spare_ballots);
  return u;
}

// Number of count vectors (caps) per total, saturating.
std::vector<std::uint64_t> count_vectors(const std::vector<int>& caps, int max_total) {
  std::vector<std::uint64_t> dp(static_cast<std::size_t>(max_total) + 1, 0);
  dp[0] = 1;
  for (int cap : caps) {
    std::vector<std::uint64_t> next(dp.size(), 0);
    for (int t = 0; t <= max_total; ++t) {
      if (!dp[static_cast<std::size_t>(t)]) continue;
      for (int x = 0; x <= cap && t + x <= max_total; ++x)
        next[static_cast<std::size_t>(t + x)] =
            sat_add(next[static_cast<std::size_t>(t + x)], dp[static_cast<std::size_t>(t)]);
    }
    dp = std::move(next);
  }
  return dp;
}

std::vector<int> raw_group_caps(const std::vector<Ballot>& ballots) {
  std::map<std::vector<CandidateIndex>, int> g;
  for (const auto& b : ballots) g[b.ranking] += b.multiplicity;
  std::vector<int> caps;
  for (auto& [r, n] : g) caps.push_back(n);
  return caps;
}

std::uint64_t factorial_sat(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f = sat_mul(f, static_cast<std::uint64_t>(i));
  return f;
}

// C(n + b - 1, b) with n possibly saturated
std::uint64_t multichoose(std::uint64_t n, int b) {
  std::uint64_t r = 1;
  for (int i = 0; i < b; ++i) r = sat_mul(r, sat_add(n, static_cast<std::uint64_t>(i)));
  return r;
}

std::uint64_t group_subset_count(const std::vector<std::vector<int>>& groups, Range r) {
  std::uint64_t n = 0;
  detail::for_each_subset(static_cast<int>(groups.size()), 0, static_cast<int>(groups.size()),
                          [&](const std::vector<int>& pick) {
                            int size = 0;
                            for (int i : pick) size += static_cast<int>(groups[static_cast<std::size_t>(i)].size());
                            if (size >= r.lo && size <= r.hi) ++n;
                            return false;
                          });
  return n;
}

}  // namespace

std::uint64_t estimate_search(const ControlInstance& inst) {
  const auto pr = prongs_for(inst);
  const auto u = make_universe(inst);
  const int nd = static_cast<int>(u.deletable.size());
  const int na = static_cast<int>(u.addable.size());

  std::uint64_t cand = 0;
  if (inst.type == ControlType::DCG) {
    cand = group_subset_count(u.delete_groups, pr.cdel);
  } else if (inst.type == ControlType::ACG) {
    cand = group_subset_count(u.add_groups, pr.cadd);
  } else if (pr.cand_paired) {
    for (int r = pr.cdel.lo; r <= pr.cdel.hi; ++r)
      cand = sat_add(cand, sat_mul(binomial(nd, r), binomial(na, r)));
  } else {
    std::uint64_t del = 0, add = 0;
    for (int r = pr.cdel.lo; r <= pr.cdel.hi; ++r) del = sat_add(del, binomial(nd, r));
    for (int r = pr.cadd.lo; r <= pr.cadd.hi; ++r) add = sat_add(add, binomial(na, r));
    cand = sat_mul(del, add);
  }

  const auto caps_v = raw_group_caps(inst.election.ballots());
  const auto caps_u = raw_group_caps(inst.spare_ballots);
  const int top = std::max({pr.vdel.hi, pr.vadd.hi, pr.bribe.hi});
  const auto cv = count_vectors(caps_v, top);
  const auto cu = count_vectors(caps_u, top);
  std::uint64_t votes = 0;
  if (pr.vote_paired) {
    for (int r = pr.vdel.lo; r <= pr.vdel.hi; ++r)
      votes = sat_add(votes, sat_mul(cv[static_cast<std::size_t>(r)], cu[static_cast<std::size_t>(r)]));
  } else {
    std::uint64_t del = 0, add = 0;
    for (int r = pr.vdel.lo; r <= pr.vdel.hi; ++r) del = sat_add(del, cv[static_cast<std::size_t>(r)]);
    for (int r = pr.vadd.lo; r <= pr.vadd.hi; ++r) add = sat_add(add, cu[static_cast<std::size_t>(r)]);
    votes = sat_mul(del, add);
  }
  if (pr.bribe.hi > 0) {
    auto all_caps = caps_v;
    all_caps.insert(all_caps.end(), caps_u.begin(), caps_u.end());
    const auto cb = count_vectors(all_caps, pr.bribe.hi);
    const int kmax = static_cast<int>(inst.election.candidate_count());
    const auto orders = factorial_sat(kmax);
    std::uint64_t br = 0;
    for (int r = pr.bribe.lo; r <= pr.bribe.hi; ++r)
      br = sat_add(br, sat_mul(cb[static_cast<std::size_t>(r)], multichoose(orders, r)));
    votes = sat_mul(votes, br);
  }
  return sat_mul(cand, votes);
}

namespace {

struct VoteGroup {
  std::vector<int> members;  // expanded indices in ballot order
  std::vector<int> matrix;   // k*k pairwise contribution of one ballot
  std::vector<CandidateIndex> ranking;  // projected, local indices
};

class Searcher {
 public:
  Searcher(const ControlInstance& inst, const Universe& u, const Prongs& pr)
      : inst_(inst), u_(u), pr_(pr) {}

  ControlResult run() {
    ControlResult res;
    const bool found = for_each_candidate_action([&](const std::vector<int>& added,
                                                      const std::vector<int>& deleted) {
      return search_votes(added, deleted);
    });
    res.decision = found;
    if (found) res.witness = witness_;
    res.evaluated = evaluated_;
    return res;
  }

 private:
  template <typename F>
  bool for_each_candidate_action(F&& f) {
    if (inst_.type == ControlType::DCG || inst_.type == ControlType::ACG) {
      const bool del = inst_.type == ControlType::DCG;
      const auto& groups = del ? u_.delete_groups : u_.add_groups;
      const Range r = del ? pr_.cdel : pr_.cadd;
      const int ng = static_cast<int>(groups.size());
      return detail::for_each_subset(ng, 0, ng, [&](const std::vector<int>& pick) {
        std::vector<int> chosen;
        for (int i : pick) {
          const auto& g = groups[static_cast<std::size_t>(i)];
          chosen.insert(chosen.end(), g.begin(), g.end());
        }
        const int size = static_cast<int>(chosen.size());
        if (size < r.lo || size > r.hi) return false;
        std::sort(chosen.begin(), chosen.end());
        return del ? f(std::vector<int>{}, chosen) : f(chosen, std::vector<int>{});
      });
    }
    const int nd = static_cast<int>(u_.deletable.size());
    const int na = static_cast<int>(u_.addable.size());
    std::vector<int> deleted, added;
    for (int ds = pr_.cdel.lo; ds <= pr_.cdel.hi && ds <= nd; ++ds) {
      const bool hit = detail::for_each_combination(nd, ds, [&](const std::vector<int>& dp) {
        deleted.clear();
        for (int i : dp) deleted.push_back(u_.deletable[static_cast<std::size_t>(i)]);
        const int alo = pr_.cand_paired ? ds : pr_.cadd.lo;
        const int ahi = pr_.cand_paired ? ds : pr_.cadd.hi;
        for (int as = alo; as <= ahi && as <= na; ++as) {
          const bool inner = detail::for_each_combination(na, as, [&](const std::vector<int>& ap) {
            added.clear();
            for (int i : ap) added.push_back(u_.addable[static_cast<std::size_t>(i)]);
            return f(added, deleted);
          });
          if (inner) return true;
        }
        return false;
      });
      if (hit) return true;
    }
    return false;
  }

  static std::vector<VoteGroup> group_ballots(const std::vector<std::vector<CandidateIndex>>& expanded,
                                              const std::vector<int>& local, int k) {
    std::map<std::vector<CandidateIndex>, std::size_t> index;
    std::vector<VoteGroup> groups;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      std::vector<CandidateIndex> r;
      r.reserve(static_cast<std::size_t>(k));
      for (auto c : expanded[i])
        if (int l = local[static_cast<std::size_t>(c)]; l >= 0) r.push_back(l);
      auto [it, fresh] = index.emplace(r, groups.size());
      if (fresh) {
        VoteGroup g;
        g.matrix = ballot_matrix(r, k);
        g.ranking = r;
        groups.push_back(std::move(g));
      }
      groups[it->second].members.push_back(static_cast<int>(i));
    }
    return groups;
  }

  static std::vector<int> ballot_matrix(const std::vector<CandidateIndex>& r, int k) {
    std::vector<int> m(static_cast<std::size_t>(k * k), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        m[static_cast<std::size_t>(r[i] * k + r[j])] += 1;
        m[static_cast<std::size_t>(r[j] * k + r[i])] -= 1;
      }
    return m;
  }

  static void axpy(std::vector<int>& acc, int a, const std::vector<int>& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * x[i];
  }

  bool evaluate(const std::vector<int>& margins) {
    ++evaluated_;
    return goal_met(inst_.mode, inst_.model, p_local_,
                    winners_raw(inst_.rule, margins, k_, favored_local_));
  }

  bool search_votes(const std::vector<int>& added, const std::vector<int>& deleted) {
    const int m = inst_.election.candidate_count();
    std::vector<char> active(static_cast<std::size_t>(m), 0);
    for (int c = 0; c < m; ++c)
      active[static_cast<std::size_t>(c)] = !inst_.is_spare(inst_.election.name(c));
    for (int c : deleted) active[static_cast<std::size_t>(c)] = 0;
    for (int c : added) active[static_cast<std::size_t>(c)] = 1;
    std::vector<int> local(static_cast<std::size_t>(m), -1);
    active_names_.clear();
    k_ = 0;
    for (int c = 0; c < m; ++c)
      if (active[static_cast<std::size_t>(c)]) {
        local[static_cast<std::size_t>(c)] = k_++;
        active_names_.push_back(inst_.election.name(c));
      }
    p_local_ = local[static_cast<std::size_t>(u_.p)];
    favored_local_ = favored_in(inst_.rule, active_names_);

    const auto vg = group_ballots(u_.v, local, k_);
    const auto ug = group_ballots(u_.u, local, k_);
    std::vector<int> base(static_cast<std::size_t>(k_ * k_), 0);
    for (const auto& g : vg) axpy(base, static_cast<int>(g.members.size()), g.matrix);

    std::vector<int> cap_v, cap_u;
    for (const auto& g : vg) cap_v.push_back(static_cast<int>(g.members.size()));
    for (const auto& g : ug) cap_u.push_back(static_cast<int>(g.members.size()));

    std::vector<std::vector<CandidateIndex>> perms;
    std::vector<std::vector<int>> perm_mats;
    if (pr_.bribe.hi > 0) {
      std::vector<CandidateIndex> p(static_cast<std::size_t>(k_));
      std::iota(p.begin(), p.end(), 0);
      do {
        perms.push_back(p);
        perm_mats.push_back(ballot_matrix(p, k_));
      } while (std::next_permutation(p.begin(), p.end()));
    }

    const int nv = static_cast<int>(u_.v.size());
    const int nu = static_cast<int>(u_.u.size());
    std::vector<int> after_del, after_add, after_bribe, final_margins;
    for (int vd = pr_.vdel.lo; vd <= pr_.vdel.hi && vd <= nv; ++vd) {
      const bool hit = detail::for_each_count_vector(cap_v, vd, [&](const std::vector<int>& cv) {
        after_del = base;
        for (std::size_t g = 0; g < vg.size(); ++g) axpy(after_del, -cv[g], vg[g].matrix);
        const int alo = pr_.vote_paired ? vd : pr_.vadd.lo;
        const int ahi = pr_.vote_paired ? vd : pr_.vadd.hi;
        for (int va = alo; va <= ahi && va <= nu; ++va) {
          const bool inner = detail::for_each_count_vector(cap_u, va, [&](const std::vector<int>& cu) {
            after_add = after_del;
            for (std::size_t g = 0; g < ug.size(); ++g) axpy(after_add, cu[g], ug[g].matrix);
            // bribable: remaining V slots, then added U slots
            std::vector<int> cap_b;
            for (std::size_t g = 0; g < vg.size(); ++g) cap_b.push_back(cap_v[g] - cv[g]);
            for (std::size_t g = 0; g < ug.size(); ++g) cap_b.push_back(cu[g]);
            const int avail = std::accumulate(cap_b.begin(), cap_b.end(), 0);
            for (int b = pr_.bribe.lo; b <= pr_.bribe.hi && b <= avail; ++b) {
              const bool deep = detail::for_each_count_vector(cap_b, b, [&](const std::vector<int>& cb) {
                after_bribe = after_add;
                for (std::size_t g = 0; g < cb.size(); ++g) {
                  const auto& mat = g < vg.size() ? vg[g].matrix : ug[g - vg.size()].matrix;
                  axpy(after_bribe, -cb[g], mat);
                }
                // multisets of b replacement orders, nondecreasing indices
                std::vector<int> choice(static_cast<std::size_t>(b), 0);
                const int np = static_cast<int>(perms.size());
                while (true) {
                  final_margins = after_bribe;
                  for (int c : choice) axpy(final_margins, 1, perm_mats[static_cast<std::size_t>(c)]);
                  if (evaluate(final_margins)) {
                    record(added, deleted, vg, ug, cv, cu, cb, choice, perms);
                    return true;
                  }
                  int i = b - 1;
                  while (i >= 0 && choice[static_cast<std::size_t>(i)] == np - 1) --i;
                  if (i < 0) return false;
                  const int v = choice[static_cast<std::size_t>(i)] + 1;
                  for (int j = i; j < b; ++j) choice[static_cast<std::size_t>(j)] = v;
                }
              });
              if (deep) return true;
            }
            return false;
          });
          if (inner) return true;
        }
        return false;
      });
      if (hit) return true;
    }
    return false;
  }

  void record(const std::vector<int>& added, const std::vector<int>& deleted,
              const std::vector<VoteGroup>& vg, const std::vector<VoteGroup>& ug,
              const std::vector<int>& cv, const std::vector<int>& cu,
              const std::vector<int>& cb, const std::vector<int>& choice,
              const std::vector<std::vector<CandidateIndex>>& perms) {
    ControlWitness w;
    for (int c : added) w.added_candidates.push_back(inst_.election.name(c));
    for (int c : deleted) w.deleted_candidates.push_back(inst_.election.name(c));
    for (std::size_t g = 0; g < vg.size(); ++g)
      for (int i = 0; i < cv[g]; ++i) w.deleted_ballots.push_back(vg[g].members[static_cast<std::size_t>(i)]);
    for (std::size_t g = 0; g < ug.size(); ++g)
      for (int i = 0; i < cu[g]; ++i) w.added_ballots.push_back(ug[g].members[static_cast<std::size_t>(i)]);
    std::sort(w.deleted_ballots.begin(), w.deleted_ballots.end());
    std::sort(w.added_ballots.begin(), w.added_ballots.end());
    std::size_t next = 0;
    for (std::size_t g = 0; g < cb.size(); ++g) {
      for (int i = 0; i < cb[g]; ++i) {
        BribedBallot bb;
        if (g < vg.size()) {
          bb.from_spare = false;
          bb.index = vg[g].members[static_cast<std::size_t>(cv[g] + i)];
        } else {
          bb.from_spare = true;
          bb.index = ug[g - vg.size()].members[static_cast<std::size_t>(i)];
        }
        for (auto c : perms[static_cast<std::size_t>(choice[next])])
          bb.ranking.push_back(active_names_[static_cast<std::size_t>(c)]);
        ++next;
        w.bribed.push_back(std::move(bb));
      }
    }
    witness_ = std::move(w);
  }

  const ControlInstance& inst_;
  const Universe& u_;
  const Prongs& pr_;
  ControlWitness witness_;
  std::uint64_t evaluated_ = 0;
  int k_ = 0;
  int p_local_ = -1;
  int favored_local_ = -1;
  std::vector<std::string> active_names_;
};

}  // namespace

ControlResult solve_control(const ControlInstance& inst, const SolveOptions& opt) {
  inst.validate();
  enforce_guard(estimate_search(inst), opt.force);
  const auto u = make_universe(inst);
  const auto pr = prongs_for(inst);
  return Searcher(inst, u, pr).run();
}

Election apply_witness(const ControlInstance& inst, const ControlWitness& w) {
  const auto& e = inst.election;
  std::vector<char> active(static_cast<std::size_t>(e.candidate_count()), 0);
  for (int c = 0; c < e.candidate_count(); ++c)
    active[static_cast<std::size_t>(c)] = !inst.is_spare(e.name(c));
  for (const auto& n : w.deleted_candidates) {
    const int c = e.index_of(n);
    if (inst.is_spare(n) || n == inst.distinguished)
      throw InvalidArgument("witness deletes '" + n + "', which is not deletable");
    active[static_cast<std::size_t>(c)] = 0;
  }
  for (const auto& n : w.added_candidates) {
    if (!inst.is_spare(n)) throw InvalidArgument("witness adds non-spare '" + n + "'");
    active[static_cast<std::size_t>(e.index_of(n))] = 1;
  }
  std::vector<std::string> names;
  for (int c = 0; c < e.candidate_count(); ++c)
    if (active[static_cast<std::size_t>(c)]) names.push_back(e.name(c));

  const auto v = expand_ballots(e.ballots());
  const auto u = expand_ballots(inst.spare_ballots);
  std::vector<char> v_live(v.size(), 1), u_live(u.size(), 0);
  for (int i : w.deleted_ballots) v_live.at(static_cast<std::size_t>(i)) = 0;
  for (int i : w.added_ballots) u_live.at(static_cast<std::size_t>(i)) = 1;
  std::map<std::pair<bool, int>, std::vector<std::string>> bribes;
  for (const auto& b : w.bribed) {
    const bool live = b.from_spare ? u_live.at(static_cast<std::size_t>(b.index))
                                   : v_live.at(static_cast<std::size_t>(b.index));
    if (!live) throw InvalidArgument("witness bribes a ballot that is not in the election");
    bribes[{b.from_spare, b.index}] = b.ranking;
  }

  Election out(names);
  auto emit = [&](bool spare, int i, const std::vector<CandidateIndex>& r) {
    if (auto it = bribes.find({spare, i}); it != bribes.end()) {
      out.add_ballot(it->second);
      return;
    }
    std::vector<std::string> ranking;
    for (auto c : r)
      if (active[static_cast<std::size_t>(c)]) ranking.push_back(e.name(c));
    out.add_ballot(ranking);
  };
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v_live[i]) emit(false, static_cast<int>(i), v[i]);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u_live[i]) emit(true, static_cast<int>(i), u[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Lifting

namespace {

std::string padded(const std::string& prefix, int i, int count) {
  const int width = std::max(2, static_cast<int>(std::to_string(count).size()));
  auto s = std::to_string(i);
  return prefix + std::string(static_cast<std::size_t>(width) - s.size(), '0') + s;
}

ControlInstance lift_one(const ControlInstance& src, int l_ac, int spare_count,
                         ControlType type) {
  const int k = src.limits.dc;
  std::vector<std::string> x, d;
  for (int i = 1; i <= k; ++i) x.push_back(padded("pad_x", i, k));
  for (int i = 1; i <= spare_count; ++i) d.push_back(padded("pad_d", i, spare_count));
  std::vector<std::string> bottom = x;
  bottom.insert(bottom.end(), d.begin(), d.end());

  ControlInstance out;
  out.rule = src.rule;
  out.mode = src.mode;
  out.model = src.model;
  out.type = type;
  out.exact = true;
  out.election = pad_bottom(src.election, bottom);
  out.spare_candidates = d;
  out.distinguished = src.distinguished;
  if (type == ControlType::AC_DC) {
    out.limits.ac = l_ac;
    out.limits.dc = k;
  } else {
    out.limits.rc = k;
  }
  return out;
}

std::pair<ControlInstance, ControlInstance> lift(const ControlInstance& src, int l_ac,
                                                 Mode expected) {
  src.validate();
  if (src.type != ControlType::DC || src.exact || !src.spare_candidates.empty() ||
      !src.spare_ballots.empty())
    throw InvalidArgument("lifting needs a plain candidate-deletion instance");
  if (src.mode != expected)
    throw InvalidArgument("lifting expects a " + to_string(expected) + " instance");
  if (l_ac < 0) throw InvalidArgument("l_ac must be nonnegative");
  const int k = src.limits.dc;
  return {lift_one(src, l_ac, l_ac, ControlType::AC_DC),
          lift_one(src, l_ac, std::max(l_ac, k), ControlType::RC)};
}

}  // namespace

std::pair<ControlInstance, ControlInstance> lift_ccdc_to_exact(const ControlInstance& ccdc,
                                                               int l_ac) {
  return lift(ccdc, l_ac, Mode::constructive);
}

std::pair<ControlInstance, ControlInstance> lift_dcdc_to_exact(const ControlInstance& dcdc,
                                                               int l_ac) {
  return lift(dcdc, l_ac, Mode::destructive);
}

}  // namespace votecut
