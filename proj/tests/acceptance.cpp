// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "votecut/control.hpp"
#include "votecut/dcdc.hpp"
#include "votecut/ranked_pairs.hpp"
#include "votecut/reductions.hpp"
#include "votecut/schulze.hpp"
#include "votecut/verify.hpp"
#include "votecut/vertex_cut.hpp"

using namespace votecut;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  if (out.ok && secs > budget_seconds) out.fail("took longer than " + std::to_string(budget_seconds) + " s");
  if (!out.ok) ++failures;
  std::printf("%s %2d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", number, title.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

Outcome worked_schulze() {
  Outcome o;
  const auto g = build_wmg(fixture::worked_example());
  const std::tuple<const char*, const char*, int> positive[] = {
      {"a", "b", 7}, {"a", "c", 5}, {"c", "b", 7}, {"d", "a", 3}, {"d", "c", 3}, {"b", "d", 1}};
  int count = 0;
  for (int x : g.matrix()) count += x > 0;
  if (count != 6) o.fail("expected six positive margins");
  for (const auto& [c, d, m] : positive)
    if (g.margin(g.index_of(c), g.index_of(d)) != m) o.fail(std::string("margin ") + c + d);
  const auto p = strongest_paths(g);
  const int expected[4][4] = {{0, 7, 5, 1}, {1, 0, 1, 1}, {1, 7, 0, 1}, {3, 3, 3, 0}};
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d)
      if (c != d && p(c, d) != expected[c][d]) o.fail("strongest path matrix differs");
  if (schulze_winners(g) != std::vector<CandidateIndex>{g.index_of("d")}) o.fail("winner set is not {d}");
  return o;
}

Outcome worked_ranked_pairs() {
  Outcome o;
  const auto g = build_wmg(fixture::worked_example());
  const auto agenda = pair_agenda(g, TieBreakPolicy::lexicographic());
  const std::vector<RankedPair> expected{{0, 1, 7}, {2, 1, 7}, {0, 2, 5}, {3, 0, 3}, {3, 2, 3}, {1, 3, 1}};
  if (agenda != expected) o.fail("agenda order differs");
  const auto lg = lock_pairs(4, agenda);
  if (lg.skipped.size() != 1 || !(lg.skipped[0].pair == RankedPair{1, 3, 1})) o.fail("skipped pairs differ");
  if (ranked_pairs_winner(g, TieBreakPolicy::lexicographic()) != 3) o.fail("winner is not d");
  return o;
}

Outcome counterexample() {
  Outcome o;
  const auto f = fixture::counterexample_formula();
  if (!oracle::satisfiable(f.variables, f.clauses)) o.fail("formula should be satisfiable");
  const auto flawed = solve_control(threesat_to_ccdc(f, SatVariant::flawed_original).instance("ccdc"));
  if (flawed.decision) o.fail("flawed construction answered yes");
  const auto fixed_art = threesat_to_ccdc(f, SatVariant::fixed_nonunique);
  const auto fixed = solve_control(fixed_art.instance("ccdc"));
  if (!fixed.decision || !fixed.witness) return o.fail("fixed construction answered no"), o;
  // one deleted literal candidate per clause, no variable set both ways
  std::map<int, int> per_clause;
  std::map<int, int> value;
  for (const auto& name : fixed.witness->deleted_candidates) {
    if (name.size() != 5 || name[0] != 'x') return o.fail("witness deletes non-literal " + name), o;
    const int clause = std::stoi(name.substr(1, 2));
    const int pos = name[4] - '0';
    ++per_clause[clause];
    const int lit = f.clauses[static_cast<std::size_t>(clause - 1)][static_cast<std::size_t>(pos - 1)];
    const int var = std::abs(lit), val = lit > 0 ? 1 : -1;
    if (value.count(var) && value[var] != val) o.fail("witness sets x" + std::to_string(var) + " both ways");
    value[var] = val;
  }
  if (per_clause.size() != f.clauses.size()) o.fail("witness misses a clause");
  for (const auto& [c, n] : per_clause)
    if (n != 1) o.fail("witness deletes two literals of one clause");
  o.detail = "flawed=no fixed=yes, evaluated " + std::to_string(flawed.evaluated) + " deletion sets";
  return o;
}

Outcome threesat_sweep(const std::vector<ThreeSatInstance>& formulas) {
  Outcome o;
  int yes = 0;
  for (const auto& f : formulas) {
    const bool sat = oracle::satisfiable(f.variables, f.clauses);
    yes += sat;
    for (auto v : {SatVariant::fixed_nonunique, SatVariant::fixed_unique})
      if (solve_control(threesat_to_ccdc(f, v).instance("ccdc")).decision != sat)
        o.fail(to_string(v) + " disagrees on " + serialize_cnf(f));
  }
  if (o.ok)
    o.detail = std::to_string(formulas.size()) + " formulas, " + std::to_string(yes) + " satisfiable";
  return o;
}

Outcome rx3c_sweep() {
  Outcome o;
  std::size_t total = 0, yes = 0;
  for (int s : {1, 2})
    for (const auto& x : sweep::rx3c_all(s)) {
      ++total;
      const bool cover = oracle::exact_cover(x.base, x.triples);
      yes += cover;
      for (auto model : {WinnerModel::nonunique, WinnerModel::unique})
        for (const auto& art : {rx3c_to_schulze_voter(x, model), rx3c_to_rankedpairs_voter(x, model)})
          for (const auto& [label, inst] : art.instances)
            if (solve_control(inst).decision != cover) o.fail(art.variant + " " + label + " disagrees");
    }
  if (o.ok) o.detail = std::to_string(total) + " instances, " + std::to_string(yes) + " with a cover";
  return o;
}

// Criteria 6 and 7 share one sweep.
struct DcdcSweep {
  std::uint64_t cases = 0, yes = 0, disagreements = 0, witness_failures = 0;
  double poly_ms_mean = 0;
};

DcdcSweep dcdc_sweep() {
  DcdcSweep r;
  double poly_ms = 0;
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
    const auto g = sweep::random_wmg(seed * 7919 + 1);
    const int d = static_cast<int>(seed % static_cast<std::uint64_t>(g.candidate_count()));
    const int limit = static_cast<int>(seed % 4);
    const auto t0 = Clock::now();
    const bool poly = solve_dcdc_nonunique(g, d, limit).decision;
    poly_ms += seconds_since(t0) * 1e3;
    const bool brute = oracle::dcdc(g, d, limit);
    ++r.cases;
    if (poly != brute) ++r.disagreements;
    if (brute) {
      ++r.yes;
      if (!in_neighbor_witness(g, d, limit)) ++r.witness_failures;
    }
  }
  r.poly_ms_mean = poly_ms / static_cast<double>(r.cases);
  return r;
}

Outcome tie_by_deletion_regression() {
  Outcome o;
  const auto g = fixture::tie_by_deletion();
  if (solve_dcdc_nonunique(g, g.index_of("d"), 2).decision) o.fail("poly answered yes");
  if (solve_control(fixture::tie_by_deletion_instance(WinnerModel::nonunique)).decision)
    o.fail("brute force (nonunique) answered yes");
  const auto r = solve_control(fixture::tie_by_deletion_instance(WinnerModel::unique));
  if (!r.decision || !r.witness) return o.fail("brute force (unique) answered no"), o;
  if (r.witness->deleted_candidates != std::vector<std::string>{"xa1", "xb1"}) o.fail("unexpected witness");
  const auto h = g.without(std::vector<int>{g.index_of("xa1"), g.index_of("xb1")});
  if (!oracle::is_winner(h, "c") || !oracle::is_winner(h, "d")) o.fail("c does not tie d after the deletions");
  return o;
}

Outcome small_examples() {
  Outcome o;
  const auto add = solve_control(fixture::add_candidates(false));
  if (!add.decision || add.witness->added_candidates != std::vector<std::string>{"a"}) o.fail("adding a should work");
  if (solve_control(fixture::add_candidates(true)).decision) o.fail("exact addition of two answered yes");
  if (solve_control(fixture::delete_added()).decision) o.fail("exact AC+DC answered yes");
  return o;
}

Outcome from_report(const SweepReport& rep) {
  Outcome o;
  std::ostringstream s;
  s << rep.cases << " cases, " << rep.positives << " yes, " << rep.failures << " failures";
  if (!rep.passed()) o.fail(s.str() + (rep.messages.empty() ? "" : "; " + rep.messages.front()));
  else o.detail = s.str();
  return o;
}

DiGraph random_digraph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(3, 8)(rng);
  std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.15, 0.5)(rng));
  DiGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !(u == 0 && v == 1) && edge(rng)) g.add_edge(u, v);
  return g;
}

Outcome cut_soundness() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = random_digraph(seed);
    const auto cut = min_st_vertex_cut(g, 0, 1);
    if (cut.size != *oracle::min_cut_size(g, 0, 1) || cut.size != oracle::menger_packing(g, 0, 1))
      o.fail("min cut differs on digraph " + std::to_string(seed));
    std::mt19937_64 rng(seed + 1);
    std::vector<int> colour(static_cast<std::size_t>(g.size()));
    for (auto& c : colour) c = static_cast<int>(rng() % 4);
    std::vector<int> labeled;
    for (int v = 2; v < g.size(); ++v)
      if (rng() % 2) labeled.push_back(v);
    for (int k = 0; k <= 3; ++k) {
      if (ppvc_decide(g, 0, 1, k).decision != oracle::ppvc(g, 0, 1, k)) o.fail("ppvc differs");
      if (cppvc_decide(g, 0, 1, colour, k).decision != oracle::cppvc(g, 0, 1, colour, k)) o.fail("cppvc differs");
      for (int y = 0; y <= 2; ++y)
        if (mippvc_decide(g, 0, 1, labeled, k, y).decision != oracle::mippvc(g, 0, 1, labeled, k, y))
          o.fail("mippvc differs");
    }
  }
  int driver_cases = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(seed + 77);
    const auto g = sweep::random_wmg(seed + 900'000);
    ControlInstance inst;
    inst.mode = Mode::destructive;
    inst.model = WinnerModel::nonunique;
    inst.election = mcgarvey_realize(g);
    inst.distinguished = g.name(static_cast<int>(rng() % static_cast<std::uint64_t>(g.candidate_count())));
    const int kind = static_cast<int>(rng() % 3);
    for (const auto& c : g.candidates())
      if (c != inst.distinguished && kind != 1 && rng() % 3 == 0) inst.spare_candidates.push_back(c);
    if (kind == 0) {
      inst.type = ControlType::AC_DC;
      inst.limits.ac = static_cast<int>(rng() % 3);
      inst.limits.dc = static_cast<int>(rng() % 3);
    } else {
      inst.type = kind == 1 ? ControlType::DCG : ControlType::ACG;
      for (const auto& c : g.candidates())
        if (kind == 1 || inst.is_spare(c)) inst.groups[c] = "g" + std::to_string(rng() % 3);
      (kind == 1 ? inst.limits.dc : inst.limits.ac) = static_cast<int>(rng() % 4);
    }
    const bool via_cut = kind == 0 ? dcac_dc_via_cut(inst).decision : group_control_via_cut(inst).decision;
    if (via_cut != solve_control(inst).decision)
      o.fail(to_string(inst.type, false) + " driver differs on case " + std::to_string(seed));
    ++driver_cases;
  }
  if (o.ok) o.detail = "1000 digraphs, " + std::to_string(driver_cases) + " driver instances";
  return o;
}

}  // namespace

int main() {
  criterion(1, "worked Schulze example", 1, worked_schulze);
  criterion(2, "worked ranked pairs example", 1, worked_ranked_pairs);
  criterion(3, "counterexample to the original candidate-deletion construction", 30, counterexample);
  criterion(4, "3-SAT construction faithfulness over all small formulas", 600,
            [] { return threesat_sweep(sweep::all_small_formulas()); });
  criterion(5, "RX3C voter-control construction faithfulness for s in {1,2}", 900, rx3c_sweep);
  const auto t0 = Clock::now();
  const auto dcdc = dcdc_sweep();
  const double dcdc_secs = seconds_since(t0);
  criterion(6, "polynomial destructive deletion agrees with brute force", dcdc_secs + 1, [&] {
    Outcome o;
    std::ostringstream s;
    s << dcdc.cases << " graphs, " << dcdc.yes << " yes, " << dcdc.disagreements
      << " disagreements, poly mean " << dcdc.poly_ms_mean << " ms";
    o.detail = s.str();
    if (dcdc.disagreements || dcdc.poly_ms_mean >= 1.0) o.fail(s.str());
    return o;
  });
  criterion(7, "in-neighbour witnesses exist on every yes-instance", 1, [&] {
    Outcome o;
    o.detail = std::to_string(dcdc.yes) + " yes-instances, " + std::to_string(dcdc.witness_failures) + " failures";
    if (dcdc.witness_failures) o.fail(o.detail);
    return o;
  });
  criterion(8, "tie-by-deletion regression", 10, tie_by_deletion_regression);
  criterion(9, "candidate addition regressions", 5, small_examples);
  criterion(10, "padding lifts preserve decisions", 600, [] {
    SweepOptions opt;
    opt.cases = 500;
    return from_report(run_sweep("padding-lift", opt));
  });
  criterion(11, "bottom padding leaves winners unchanged", 600, [] {
    SweepOptions opt;
    opt.cases = 1000;
    return from_report(run_sweep("ibc", opt));
  });
  criterion(12, "cut solvers and cut drivers agree with enumeration", 600, cut_soundness);
  return failures == 0 ? 0 : 1;
}
