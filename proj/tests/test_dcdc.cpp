#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "votecut/control.hpp"
#include "votecut/dcdc.hpp"
#include "votecut/error.hpp"
#include "votecut/reductions.hpp"
#include "votecut/schulze.hpp"
#include "votecut/verify.hpp"

using namespace votecut;

namespace {

// Vertices on some simple d -> c path whose edges all exceed `threshold`.
std::vector<int> path_union(const WeightedMajorityGraph& g, int d, int c, int threshold) {
  const int m = g.candidate_count();
  std::set<int> on;
  std::vector<int> path{d};
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  used[static_cast<std::size_t>(d)] = 1;
  std::function<void(int)> dfs = [&](int u) {
    for (int v = 0; v < m; ++v) {
      if (v == u || used[static_cast<std::size_t>(v)] || g.margin(u, v) <= threshold) continue;
      path.push_back(v);
      if (v == c) {
        on.insert(path.begin(), path.end());
      } else {
        used[static_cast<std::size_t>(v)] = 1;
        dfs(v);
        used[static_cast<std::size_t>(v)] = 0;
      }
      path.pop_back();
    }
  };
  dfs(d);
  return {on.begin(), on.end()};
}

std::vector<std::string> names_of(const WeightedMajorityGraph& g, const std::vector<int>& v) {
  std::vector<std::string> out;
  for (int x : v) out.push_back(g.name(x));
  return out;
}

bool deletion_dethrones(const WeightedMajorityGraph& g, int d, const std::vector<std::string>& del) {
  std::vector<int> idx;
  for (const auto& n : del) idx.push_back(g.index_of(n));
  return !oracle::is_winner(g.without(idx), g.name(d));
}

// Destructive nonunique AC+DC by enumeration over the full margin graph.
bool brute_acdc(const WeightedMajorityGraph& g, const std::set<std::string>& spare, const std::string& p,
                int l_ac, int l_dc) {
  std::vector<int> reg, sp;
  for (int c = 0; c < g.candidate_count(); ++c) {
    if (spare.count(g.name(c))) sp.push_back(c);
    else if (g.name(c) != p) reg.push_back(c);
  }
  bool found = false;
  oracle::for_each_subset(sp, [&](const std::vector<int>& add) {
    if (static_cast<int>(add.size()) > l_ac) return;
    oracle::for_each_subset(reg, [&](const std::vector<int>& del) {
      if (found || static_cast<int>(del.size()) > l_dc) return;
      std::set<std::string> keep{p};
      for (int c : reg)
        if (!std::count(del.begin(), del.end(), c)) keep.insert(g.name(c));
      for (int c : add) keep.insert(g.name(c));
      if (!oracle::is_winner(oracle::keep_only(g, keep), p)) found = true;
    });
  });
  return found;
}

// Destructive nonunique group control by enumerating label sets.
bool brute_groups(const WeightedMajorityGraph& g, const std::set<std::string>& spare,
                  const std::map<std::string, std::string>& groups, const std::string& p, bool adding,
                  int limit) {
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& [c, label] : groups)
    if (adding == (spare.count(c) > 0)) members[label].push_back(c);
  if (!adding) members.erase(groups.at(p));
  std::vector<int> ids(members.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<std::vector<std::string>> by_id;
  for (auto& [label, cs] : members) by_id.push_back(cs);
  bool found = false;
  oracle::for_each_subset(ids, [&](const std::vector<int>& pick) {
    std::set<std::string> chosen;
    for (int i : pick)
      for (const auto& c : by_id[static_cast<std::size_t>(i)]) chosen.insert(c);
    if (found || static_cast<int>(chosen.size()) > limit) return;
    std::set<std::string> keep;
    for (const auto& c : g.candidates()) {
      const bool is_spare = spare.count(c) > 0;
      if (adding ? (!is_spare || chosen.count(c)) : (!is_spare && !chosen.count(c))) keep.insert(c);
    }
    if (!oracle::is_winner(oracle::keep_only(g, keep), p)) found = true;
  });
  return found;
}

ControlInstance destructive_instance(const WeightedMajorityGraph& g, const std::string& p) {
  ControlInstance inst;
  inst.mode = Mode::destructive;
  inst.model = WinnerModel::nonunique;
  inst.election = mcgarvey_realize(g);
  inst.distinguished = p;
  return inst;
}

}  // namespace

TEST(Dcdc, StrongerPathSubgraphMatchesPathEnumeration) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto g = sweep::random_wmg(seed);
    const int m = g.candidate_count();
    for (int d = 0; d < m; ++d)
      for (int c = 0; c < m; ++c) {
        if (c == d) continue;
        for (int theta : {-2, 0, 2, 4}) {
          const auto sub = stronger_path_subgraph(g, d, c, theta);
          ASSERT_EQ(sub.vertices, path_union(g, d, c, theta)) << seed;
          for (const auto& [u, v] : sub.edges) {
            EXPECT_GT(g.margin(u, v), theta);
            EXPECT_TRUE(std::binary_search(sub.vertices.begin(), sub.vertices.end(), u));
            EXPECT_TRUE(std::binary_search(sub.vertices.begin(), sub.vertices.end(), v));
          }
        }
      }
  }
}

TEST(Dcdc, StrongerPathSubgraphOnConstructedGraph) {
  const auto art = threesat_to_ccdc(fixture::counterexample_formula(), SatVariant::fixed_nonunique);
  const auto& g = art.target;
  const auto sub = stronger_path_subgraph(g, g.index_of("c01_1"), g.index_of("p"), 2);
  EXPECT_EQ(names_of(g, sub.vertices),
            (std::vector<std::string>{"c01_1", "p", "x01_1", "x01_2", "x01_3"}));
  int top = 0;
  for (int x : g.matrix()) top = std::max(top, x);
  EXPECT_TRUE(stronger_path_subgraph(g, g.index_of("c01_1"), g.index_of("p"), top).vertices.empty());
}

TEST(Dcdc, BlockingNeighboursSeparateStrongPaths) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto g = sweep::random_wmg(seed + 50);
    const int m = g.candidate_count();
    for (int d = 0; d < m; ++d)
      for (int c = 0; c < m; ++c) {
        if (c == d) continue;
        const auto block = blocking_in_neighbors(g, d, c, 2);
        if (std::count(block.begin(), block.end(), d)) continue;
        // removing them leaves no d -> c path over edges >= 2
        DiGraph h(g.candidates());
        for (int u = 0; u < m; ++u)
          for (int v = 0; v < m; ++v)
            if (u != v && g.margin(u, v) >= 2) h.add_edge(u, v);
        for (int u : block) EXPECT_GE(g.margin(u, c), 2);
        EXPECT_FALSE(oracle::reaches(h, d, c, block)) << seed;
      }
  }
}

TEST(Dcdc, PolyMatchesExhaustiveDeletion) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto g = sweep::random_wmg(seed + 100'000);
    const int d = static_cast<int>(seed % static_cast<std::uint64_t>(g.candidate_count()));
    for (int limit = 0; limit <= 3; ++limit) {
      const auto r = solve_dcdc_nonunique(g, d, limit);
      ASSERT_EQ(r.decision, oracle::dcdc(g, d, limit)) << seed << " limit=" << limit;
      if (r.decision) {
        EXPECT_LE(static_cast<int>(r.deleted.size()), limit);
        EXPECT_TRUE(deletion_dethrones(g, d, r.deleted));
      }
    }
  }
}

TEST(Dcdc, TieByDeletionIsNotEnough) {
  const auto g = fixture::tie_by_deletion();
  const int d = g.index_of("d");
  EXPECT_FALSE(solve_dcdc_nonunique(g, d, 2).decision);
  EXPECT_FALSE(solve_control(fixture::tie_by_deletion_instance(WinnerModel::nonunique)).decision);
  // the two deletions pull c level with d without dethroning it
  const auto h = g.without(std::vector<int>{g.index_of("xa1"), g.index_of("xb1")});
  EXPECT_TRUE(oracle::is_winner(h, "c"));
  EXPECT_TRUE(oracle::is_winner(h, "d"));
}

TEST(Dcdc, AllStrongerStrategyMissesTiedPath) {
  const auto g = fixture::wmg({"a", "b", "c"}, {{"a", "b", 10}, {"b", "c", 6}, {"c", "a", 6}});
  EXPECT_TRUE(oracle::dcdc(g, 0, 3));
  EXPECT_TRUE(solve_dcdc_nonunique(g, 0, 3).decision);
  EXPECT_FALSE(solve_dcdc_nonunique(g, 0, 3, DcdcStrategy::all_stronger).decision);
}

TEST(Dcdc, ElectionOverloadAgreesWithGraph) {
  const auto e = fixture::worked_example();
  for (int limit = 0; limit <= 2; ++limit)
    EXPECT_EQ(solve_dcdc_nonunique(e, "d", limit).decision,
              oracle::dcdc(build_wmg(e), 3, limit));
}

TEST(Dcdc, InNeighbourWitnessExistsExactlyWhenDeletionWorks) {
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    const auto g = sweep::random_wmg(seed + 200'000);
    const int d = static_cast<int>(seed % static_cast<std::uint64_t>(g.candidate_count()));
    for (int limit = 0; limit <= 2; ++limit) {
      const auto w = in_neighbor_witness(g, d, limit);
      ASSERT_EQ(w.has_value(), oracle::dcdc(g, d, limit)) << seed << " limit=" << limit;
      if (!w) continue;
      EXPECT_LE(static_cast<int>(w->deleted.size()), limit);
      std::vector<int> idx;
      for (const auto& n : w->deleted) idx.push_back(g.index_of(n));
      const auto h = g.without(idx);
      const auto p = strongest_paths(h);
      const int hd = h.index_of(g.name(d)), hc = h.index_of(w->rival);
      EXPECT_GT(p(hc, hd), p(hd, hc));
    }
  }
}

TEST(Dcdc, CutDriverMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    std::mt19937_64 rng(seed);
    const auto g = sweep::random_wmg(seed + 300'000);
    const int m = g.candidate_count();
    const std::string p = g.name(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    auto inst = destructive_instance(g, p);
    std::set<std::string> spare;
    for (const auto& c : g.candidates())
      if (c != p && rng() % 3 == 0) spare.insert(c);
    inst.spare_candidates.assign(spare.begin(), spare.end());
    inst.limits.ac = static_cast<int>(rng() % 3);
    inst.limits.dc = static_cast<int>(rng() % 3);
    inst.type = spare.empty() ? ControlType::DC : (rng() % 2 ? ControlType::AC_DC : ControlType::AC);
    const int l_ac = inst.type == ControlType::DC ? 0 : inst.limits.ac;
    const int l_dc = inst.type == ControlType::AC ? 0 : inst.limits.dc;
    const auto r = dcac_dc_via_cut(inst);
    ASSERT_EQ(r.decision, brute_acdc(g, spare, p, l_ac, l_dc)) << seed;
    if (inst.type == ControlType::DC)
      EXPECT_EQ(r.decision, solve_dcdc_nonunique(g, g.index_of(p), l_dc).decision);
  }
}

TEST(Dcdc, GroupDriverMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    std::mt19937_64 rng(seed + 17);
    const auto g = sweep::random_wmg(seed + 400'000);
    const int m = g.candidate_count();
    const std::string p = g.name(static_cast<int>(rng() % static_cast<std::uint64_t>(m)));
    auto inst = destructive_instance(g, p);
    const bool adding = rng() % 2;
    inst.type = adding ? ControlType::ACG : ControlType::DCG;
    std::set<std::string> spare;
    if (adding)
      for (const auto& c : g.candidates())
        if (c != p && rng() % 2) spare.insert(c);
    inst.spare_candidates.assign(spare.begin(), spare.end());
    for (const auto& c : g.candidates())
      if (adding ? spare.count(c) > 0 : true) inst.groups[c] = "g" + std::to_string(rng() % 3);
    const int limit = static_cast<int>(rng() % 4);
    (adding ? inst.limits.ac : inst.limits.dc) = limit;
    const auto r = group_control_via_cut(inst);
    ASSERT_EQ(r.decision, brute_groups(g, spare, inst.groups, p, adding, limit)) << seed;
  }
}

TEST(Dcdc, SingletonGroupsReduceToPlainDeletion) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto g = sweep::random_wmg(seed + 500'000);
    const int d = static_cast<int>(seed % static_cast<std::uint64_t>(g.candidate_count()));
    auto inst = destructive_instance(g, g.name(d));
    inst.type = ControlType::DCG;
    for (const auto& c : g.candidates()) inst.groups[c] = "g_" + c;
    for (int limit = 0; limit <= 2; ++limit) {
      inst.limits.dc = limit;
      EXPECT_EQ(group_control_via_cut(inst).decision, solve_dcdc_nonunique(g, d, limit).decision) << seed;
    }
  }
}

TEST(Dcdc, GroupStraddlingTheOnlyCutIsTooLarge) {
  const auto g = fixture::wmg({"c", "d", "x", "y"},
                              {{"d", "x", 4}, {"x", "c", 4}, {"c", "d", 2}, {"d", "y", 2}, {"x", "y", 2}, {"c", "y", 2}});
  auto inst = destructive_instance(g, "d");
  inst.type = ControlType::DC;
  inst.limits.dc = 1;
  const auto plain = dcac_dc_via_cut(inst);
  ASSERT_TRUE(plain.decision);
  EXPECT_EQ(plain.cut, std::vector<std::string>{"x"});
  inst.type = ControlType::DCG;
  inst.groups = {{"c", "gc"}, {"d", "gd"}, {"x", "gxy"}, {"y", "gxy"}};
  EXPECT_FALSE(group_control_via_cut(inst).decision);
  EXPECT_FALSE(solve_control(inst).decision);
  inst.groups["y"] = "gy";
  EXPECT_TRUE(group_control_via_cut(inst).decision);
  EXPECT_TRUE(solve_control(inst).decision);
}

TEST(Dcdc, DriversRejectUnsupportedInstances) {
  auto inst = fixture::tie_by_deletion_instance(WinnerModel::unique);
  EXPECT_THROW(dcac_dc_via_cut(inst), InvalidArgument);
  inst.model = WinnerModel::nonunique;
  inst.exact = true;
  EXPECT_THROW(dcac_dc_via_cut(inst), InvalidArgument);
  inst.exact = false;
  inst.rule = RuleSpec::ranked_pairs();
  EXPECT_THROW(dcac_dc_via_cut(inst), InvalidArgument);
  inst.rule = RuleSpec::schulze();
  EXPECT_THROW(group_control_via_cut(inst), InvalidArgument);
  inst.type = ControlType::RV;
  EXPECT_THROW(dcac_dc_via_cut(inst), InvalidArgument);
}

TEST(Dcdc, CustomOracleIsUsed) {
  auto inst = fixture::tie_by_deletion_instance(WinnerModel::nonunique);
  int calls = 0;
  const auto r = dcac_dc_via_cut(inst, [&](const DiGraph& h, const CutQuery& q) {
    ++calls;
    return default_cut_oracle(h, q);
  });
  EXPECT_FALSE(r.decision);
  EXPECT_EQ(calls, r.queries);
  EXPECT_GT(calls, 0);
}
