#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "votecut/control.hpp"
#include "votecut/error.hpp"
#include "votecut/reductions.hpp"
#include "votecut/schulze.hpp"
#include "votecut/verify.hpp"

using namespace votecut;

namespace {

WeightedMajorityGraph after_deleting(const WeightedMajorityGraph& g, const std::vector<std::string>& del) {
  std::vector<int> idx;
  for (const auto& n : del) idx.push_back(g.index_of(n));
  return g.without(idx);
}

std::vector<std::string> winner_names(const WeightedMajorityGraph& g) {
  std::vector<std::string> out;
  for (int c : oracle::schulze_winners(g)) out.push_back(g.name(c));
  return out;
}

// Deletes the first s fixed ballots and adds the spare ballots `chosen`.
ControlWitness voter_witness(int s, const std::vector<int>& chosen, bool replace) {
  ControlWitness w;
  for (int i = 0; i < s; ++i) w.deleted_ballots.push_back(i);
  w.added_ballots = chosen;
  (void)replace;
  return w;
}

Rx3cInstance two_block_cover() {
  return {{"e1", "e2", "e3", "e4", "e5", "e6"},
          {{"e1", "e2", "e3"}, {"e4", "e5", "e6"}, {"e1", "e2", "e4"},
           {"e3", "e5", "e6"}, {"e1", "e3", "e5"}, {"e2", "e4", "e6"}}};
}

}  // namespace

TEST(Reductions, CounterexampleShape) {
  const auto f = fixture::counterexample_formula();
  for (auto v : {SatVariant::flawed_original, SatVariant::fixed_nonunique, SatVariant::fixed_unique}) {
    const auto art = threesat_to_ccdc(f, v);
    const auto& inst = art.instance("ccdc");
    EXPECT_EQ(inst.election.candidate_count(), 20);
    EXPECT_EQ(inst.limits.dc, 2);
    EXPECT_EQ(inst.type, ControlType::DC);
    EXPECT_EQ(inst.mode, Mode::constructive);
    EXPECT_EQ(inst.model, v == SatVariant::fixed_unique ? WinnerModel::unique : WinnerModel::nonunique);
    EXPECT_EQ(art.constants.at("negation_groups"), 2);
    EXPECT_EQ(build_wmg(inst.election), art.target);
    EXPECT_TRUE(inst.election.find("n01_1_02_1__3"));
    EXPECT_FALSE(oracle::is_winner(art.target, "p"));
  }
}

TEST(Reductions, FlawedVariantRejectsSatisfiableFormula) {
  const auto f = fixture::counterexample_formula();
  ASSERT_TRUE(oracle::satisfiable(f.variables, f.clauses));
  EXPECT_FALSE(solve_control(threesat_to_ccdc(f, SatVariant::flawed_original).instance("ccdc")).decision);
  EXPECT_TRUE(solve_control(threesat_to_ccdc(f, SatVariant::fixed_nonunique).instance("ccdc")).decision);
  EXPECT_TRUE(solve_control(threesat_to_ccdc(f, SatVariant::fixed_unique).instance("ccdc")).decision);
}

TEST(Reductions, SatisfyingLiteralsFormAWitness) {
  // x2 true satisfies both clauses through their second literal
  const std::vector<std::string> del{"x01_2", "x02_2"};
  const auto nonunique = threesat_to_ccdc(fixture::counterexample_formula(), SatVariant::fixed_nonunique);
  EXPECT_TRUE(oracle::is_winner(after_deleting(nonunique.target, del), "p"));
  const auto unique = threesat_to_ccdc(fixture::counterexample_formula(), SatVariant::fixed_unique);
  EXPECT_EQ(winner_names(after_deleting(unique.target, del)), std::vector<std::string>{"p"});
}

TEST(Reductions, FlawedVariantLeavesAClauseCandidateAhead) {
  const auto art = threesat_to_ccdc(fixture::counterexample_formula(), SatVariant::flawed_original);
  const auto h = after_deleting(art.target, {"x01_2", "x02_2"});
  EXPECT_FALSE(oracle::is_winner(h, "p"));
  const auto p = strongest_paths(h);
  const int ip = h.index_of("p");
  bool clause_ahead = false;
  for (const auto& w : winner_names(h)) {
    const int c = h.index_of(w);
    if (w.rfind("c0", 0) == 0 && p(c, ip) > p(ip, c)) clause_ahead = true;
  }
  EXPECT_TRUE(clause_ahead);
}

TEST(Reductions, FixedVariantMarginsAreTwoOrFour) {
  const auto art = threesat_to_ccdc(fixture::counterexample_formula(), SatVariant::fixed_nonunique);
  const auto& g = art.target;
  EXPECT_EQ(g.margin(g.index_of("c01_1"), g.index_of("x01_1")), 4);
  EXPECT_EQ(g.margin(g.index_of("x01_3"), g.index_of("p")), 4);
  EXPECT_EQ(g.margin(g.index_of("p"), g.index_of("a")), 4);
  EXPECT_EQ(g.margin(g.index_of("n01_1_02_1__1"), g.index_of("p")), 2);
  EXPECT_EQ(g.margin(g.index_of("a"), g.index_of("c02_3")), 2);
  for (int x : g.matrix()) EXPECT_TRUE(x == 0 || std::abs(x) == 2 || std::abs(x) == 4);
}

TEST(Reductions, SmallFormulasMatchSatisfiability) {
  int checked = 0;
  for (const auto& f : sweep::small_formulas()) {
    if (f.clauses.size() != 1 && checked > 20) continue;
    const bool sat = oracle::satisfiable(f.variables, f.clauses);
    EXPECT_EQ(solve_control(threesat_to_ccdc(f, SatVariant::fixed_nonunique).instance("ccdc")).decision, sat)
        << serialize_cnf(f);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Reductions, SingleCoverVoterConstruction) {
  const auto art = rx3c_to_schulze_voter(fixture::single_cover(), WinnerModel::nonunique);
  const int s = 1;
  const int big = 4 * s + 4;
  EXPECT_EQ(art.constants.at("L"), big);
  EXPECT_EQ(art.instances.size(), 4u);
  const auto& inst = art.instance("E_AV_DV-constructive");
  EXPECT_EQ(build_wmg(inst.election), art.target);
  EXPECT_EQ(winner_names(art.target), std::vector<std::string>{"w"});
  for (bool replace : {false, true}) {
    const auto& ci = art.instance(replace ? "RV-constructive" : "E_AV_DV-constructive");
    const auto after = build_wmg(apply_witness(ci, voter_witness(s, {0}, replace)));
    const int p = after.index_of("p"), w = after.index_of("w");
    EXPECT_EQ(after.margin(p, w), 2 * big + 2 * s);
    for (int j = 1; j <= 3; ++j)
      EXPECT_EQ(after.margin(after.index_of(base_candidate(j, 3)), p), 2 * big + 2 * s);
    EXPECT_TRUE(oracle::is_winner(after, "p"));
  }
  for (const auto& [label, ci] : art.instances) EXPECT_TRUE(solve_control(ci).decision) << label;
}

TEST(Reductions, RankedPairsVoterConstruction) {
  const auto art = rx3c_to_rankedpairs_voter(fixture::single_cover(), WinnerModel::unique);
  const auto& ci = art.instance("E_AV_DV-constructive");
  EXPECT_EQ(ci.rule, RuleSpec::ranked_pairs(TieBreakPolicy::favor("p")));
  const auto& g = art.target;
  EXPECT_EQ(g.name(oracle::ranked_pairs_winner(g, g.index_of("p"))), "w");
  const auto after = build_wmg(apply_witness(ci, voter_witness(1, {0}, false)));
  EXPECT_EQ(after.name(oracle::ranked_pairs_winner(after, after.index_of("p"))), "p");
  EXPECT_GT(g.margin(g.index_of(base_candidate(1, 3)), g.index_of(base_candidate(2, 3))), 0);
  for (const auto& [label, inst] : art.instances) EXPECT_TRUE(solve_control(inst).decision) << label;
}

TEST(Reductions, OverlappingSpareBallotsDoNotHelp) {
  const auto src = two_block_cover();
  ASSERT_TRUE(oracle::exact_cover(src.base, src.triples));
  const auto art = rx3c_to_schulze_voter(src, WinnerModel::nonunique);
  const auto& ci = art.instance("E_AV_DV-constructive");
  // triples 1 and 3 share e1, e2
  const auto bad = build_wmg(apply_witness(ci, voter_witness(2, {0, 2}, false)));
  EXPECT_FALSE(oracle::is_winner(bad, "p"));
  const auto good = build_wmg(apply_witness(ci, voter_witness(2, {0, 1}, false)));
  EXPECT_TRUE(oracle::is_winner(good, "p"));
}

TEST(Reductions, InstancesWithoutCoverAreRejected) {
  const auto all = sweep::rx3c_all(2);
  const Rx3cInstance* no = nullptr;
  for (const auto& inst : all)
    if (!oracle::exact_cover(inst.base, inst.triples)) {
      no = &inst;
      break;
    }
  ASSERT_NE(no, nullptr);
  EXPECT_FALSE(sweep::has_exact_cover(*no));
  for (auto model : {WinnerModel::nonunique, WinnerModel::unique}) {
    for (const auto& art : {rx3c_to_schulze_voter(*no, model), rx3c_to_rankedpairs_voter(*no, model)})
      for (const auto& [label, inst] : art.instances)
        EXPECT_FALSE(solve_control(inst).decision) << art.variant << " " << label;
  }
}

TEST(Reductions, CnfParsingAndValidation) {
  const auto f = parse_cnf("c comment\np cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
  EXPECT_EQ(f, fixture::counterexample_formula());
  EXPECT_EQ(parse_cnf(serialize_cnf(f)), f);
  EXPECT_THROW(parse_cnf("1 2 3 0\n"), ParseError);
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(parse_cnf("p cnf 2 1\n1 2 3 0\n"), ParseError);
  EXPECT_THROW(parse_cnf("p cnf 3 2\n1 2 3 0\n"), ParseError);
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 2 3\n"), ParseError);
  EXPECT_THROW(validate_cnf(ThreeSatInstance{2, {{1, 2, 3}}}), InvalidArgument);
  EXPECT_THROW(validate_cnf(ThreeSatInstance{2, {}}), InvalidArgument);
  EXPECT_THROW(threesat_to_ccdc(ThreeSatInstance{1, {{1, 0, 1}}}, SatVariant::fixed_unique), InvalidArgument);
  EXPECT_EQ(parse_sat_variant(to_string(SatVariant::fixed_unique)), SatVariant::fixed_unique);
  EXPECT_THROW(parse_sat_variant("bogus"), Error);
}

TEST(Reductions, Rx3cParsingAndValidation) {
  const auto inst = parse_rx3c("base: e1 e2 e3\ntriple: e1 e2 e3\ntriple: e1 e2 e3\ntriple: e1 e2 e3\n");
  EXPECT_EQ(inst, fixture::single_cover());
  EXPECT_EQ(parse_rx3c(serialize_rx3c(inst)), inst);
  EXPECT_TRUE(validate_rx3c(inst));
  EXPECT_THROW(parse_rx3c("triple: a b c\n"), ParseError);
  EXPECT_THROW(parse_rx3c("base: a b c\ntriple: a b\n"), ParseError);
  auto bad = fixture::single_cover();
  bad.triples.pop_back();
  EXPECT_TRUE(rx3c_violation(bad));
  bad = fixture::single_cover();
  bad.triples[0] = {"e1", "e1", "e2"};
  EXPECT_TRUE(rx3c_violation(bad));
  bad = fixture::single_cover();
  bad.base.push_back("e4");
  EXPECT_TRUE(rx3c_violation(bad));
  EXPECT_THROW(rx3c_to_schulze_voter(bad, WinnerModel::unique), InvalidArgument);
}

TEST(Reductions, ProvenanceListsRolesAndConstants) {
  const auto art = rx3c_to_schulze_voter(fixture::single_cover(), WinnerModel::unique);
  const auto text = art.provenance();
  EXPECT_NE(text.find("role.p=distinguished"), std::string::npos);
  EXPECT_NE(text.find("L=8"), std::string::npos);
  EXPECT_EQ(art.instance("RV-destructive").distinguished, "w");
  EXPECT_EQ(art.instance("RV-destructive").model, WinnerModel::nonunique);
  EXPECT_THROW(art.instance("missing"), Error);
}
