#include "votecut/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "combinations.hpp"
#include "votecut/control.hpp"
#include "votecut/dcdc.hpp"
#include "votecut/error.hpp"
#include "votecut/ranked_pairs.hpp"
#include "votecut/schulze.hpp"

namespace votecut {

namespace {

using Clock = std::chrono::steady_clock;

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<std::string> letters(int m) {
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

// Outcome of one case.
struct CaseResult {
  bool positive = false;
  bool failed = false;
  std::string message;
  double poly_ms = 0;
  bool counted = true;
};

// Runs fn(i) for i < count on up to `jobs` threads; results land by index.
std::vector<CaseResult> run_cases(std::uint64_t count, int jobs,
                                  const std::function<CaseResult(std::uint64_t)>& fn) {
  std::vector<CaseResult> out(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void fold(SweepReport& rep, const std::vector<CaseResult>& results) {
  double poly = 0;
  std::uint64_t timed = 0;
  for (const auto& r : results) {
    if (!r.counted) continue;
    ++rep.cases;
    if (r.positive) ++rep.positives;
    if (r.poly_ms > 0) {
      poly += r.poly_ms;
      ++timed;
    }
    if (r.failed) {
      ++rep.failures;
      if (rep.messages.size() < 10) rep.messages.push_back(r.message);
    }
  }
  if (timed) rep.poly_ms_mean = poly / static_cast<double>(timed);
}

std::string names_of(const std::vector<std::string>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "}";
}

std::string describe(const WeightedMajorityGraph& g) {
  std::string s;
  for (int c = 0; c < g.candidate_count(); ++c)
    for (int d = 0; d < g.candidate_count(); ++d)
      if (g.margin(c, d) > 0) s += g.name(c) + ">" + g.name(d) + ":" + std::to_string(g.margin(c, d)) + " ";
  return s;
}

// ---------------------------------------------------------------- DCDC cases

struct DcdcCase {
  WeightedMajorityGraph g;
  int d = 0;
  int limit = 0;
};

DcdcCase make_dcdc_case(std::uint64_t seed, std::uint64_t i) {
  auto rng = case_rng(seed, i);
  DcdcCase c;
  c.g = sweep::random_wmg(rng());
  c.d = uniform(rng, 0, c.g.candidate_count() - 1);
  c.limit = uniform(rng, 0, 3);
  return c;
}

bool brute_dcdc(const DcdcCase& c) {
  ControlInstance inst;
  inst.mode = Mode::destructive;
  inst.model = WinnerModel::nonunique;
  inst.type = ControlType::DC;
  inst.election = mcgarvey_realize(c.g);
  inst.distinguished = c.g.name(c.d);
  inst.limits.dc = c.limit;
  return solve_control(inst).decision;
}

bool dethrones(const WeightedMajorityGraph& g, int d, const std::vector<std::string>& deleted) {
  std::vector<CandidateIndex> del;
  for (const auto& n : deleted) del.push_back(g.index_of(n));
  const auto h = g.without(del);
  return !is_schulze_winner(strongest_paths(h), h.index_of(g.name(d)));
}

std::string case_text(const DcdcCase& c) {
  return "d=" + c.g.name(c.d) + " l=" + std::to_string(c.limit) + " " + describe(c.g);
}

SweepReport dcdc_equivalence(const SweepOptions& opt) {
  SweepReport rep;
  const auto n = opt.cases ? opt.cases : 10000;
  auto results = run_cases(n, opt.jobs, [&](std::uint64_t i) {
    CaseResult r;
    const auto c = make_dcdc_case(opt.seed, i);
    const bool brute = brute_dcdc(c);
    const auto t0 = Clock::now();
    const auto poly = solve_dcdc_nonunique(c.g, c.d, c.limit);
    r.poly_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r.positive = brute;
    if (poly.decision != brute) {
      r.failed = true;
      r.message = "poly=" + std::string(poly.decision ? "yes" : "no") + " brute=" +
                  (brute ? "yes" : "no") + " " + case_text(c);
    } else if (poly.decision &&
               (static_cast<int>(poly.deleted.size()) > c.limit || !dethrones(c.g, c.d, poly.deleted))) {
      r.failed = true;
      r.message = "invalid poly witness " + names_of(poly.deleted) + " " + case_text(c);
    }
    return r;
  });
  fold(rep, results);
  return rep;
}

SweepReport in_neighbour_witness(const SweepOptions& opt) {
  SweepReport rep;
  const auto n = opt.cases ? opt.cases : 10000;
  auto results = run_cases(n, opt.jobs, [&](std::uint64_t i) {
    CaseResult r;
    const auto c = make_dcdc_case(opt.seed, i);
    if (!brute_dcdc(c)) {
      r.counted = false;
      return r;
    }
    r.positive = true;
    const auto w = in_neighbor_witness(c.g, c.d, c.limit);
    if (!w) {
      r.failed = true;
      r.message = "no in-neighbour witness: " + case_text(c);
    } else if (static_cast<int>(w->deleted.size()) > c.limit || !dethrones(c.g, c.d, w->deleted)) {
      r.failed = true;
      r.message = "invalid in-neighbour witness " + names_of(w->deleted) + " " + case_text(c);
    }
    return r;
  });
  fold(rep, results);
  return rep;
}

// ---------------------------------------------------------------- lifts

SweepReport padding_lift(const SweepOptions& opt) {
  SweepReport rep;
  const auto n = opt.cases ? opt.cases : 500;
  auto results = run_cases(n, opt.jobs, [&](std::uint64_t i) {
    CaseResult r;
    auto rng = case_rng(opt.seed, i);
    const auto e = sweep::random_election(rng(), 2, 6, 9);
    const int p = uniform(rng, 0, e.candidate_count() - 1);
    const int k = uniform(rng, 0, 2);
    const int l_ac = uniform(rng, 0, 2);
    const Mode mode = uniform(rng, 0, 1) ? Mode::constructive : Mode::destructive;
    for (auto model : {WinnerModel::nonunique, WinnerModel::unique}) {
      ControlInstance src;
      src.mode = mode;
      src.model = model;
      src.type = ControlType::DC;
      src.election = e;
      src.distinguished = e.name(p);
      src.limits.dc = k;
      const bool base = solve_control(src).decision;
      r.positive = r.positive || base;
      const auto [acdc, rc] = mode == Mode::constructive ? lift_ccdc_to_exact(src, l_ac)
                                                         : lift_dcdc_to_exact(src, l_ac);
      const bool a = solve_control(acdc).decision;
      const bool b = solve_control(rc).decision;
      if (a != base || b != base) {
        r.failed = true;
        r.message = to_string(mode) + "/" + to_string(model) + " k=" + std::to_string(k) +
                    " l_ac=" + std::to_string(l_ac) + " source=" + (base ? "yes" : "no") +
                    " E_AC_DC=" + (a ? "yes" : "no") + " E_RC=" + (b ? "yes" : "no");
      }
    }
    return r;
  });
  fold(rep, results);
  return rep;
}

// ---------------------------------------------------------------- IBC

SweepReport ibc(const SweepOptions& opt) {
  SweepReport rep;
  const auto n = opt.cases ? opt.cases : 1000;
  auto results = run_cases(n, opt.jobs, [&](std::uint64_t i) {
    CaseResult r;
    auto rng = case_rng(opt.seed, i);
    const auto e = sweep::random_election(rng(), 1, 5, 9);
    const auto padded = pad_bottom(e, {"zpad"});
    const auto g = build_wmg(e);
    const auto h = build_wmg(padded);
    auto winner_names = [](const WeightedMajorityGraph& w, const std::vector<CandidateIndex>& idx) {
      std::vector<std::string> out;
      for (int c : idx) out.push_back(w.name(c));
      return out;
    };
    const auto s0 = winner_names(g, schulze_winners(g));
    const auto s1 = winner_names(h, schulze_winners(h));
    if (s0 != s1) {
      r.failed = true;
      r.message = "schulze " + names_of(s0) + " vs " + names_of(s1);
      return r;
    }
    const auto favoured = e.name(uniform(rng, 0, e.candidate_count() - 1));
    for (const auto& pol : {TieBreakPolicy::lexicographic(), TieBreakPolicy::favor(favoured)}) {
      const auto a = g.name(ranked_pairs_winner(g, pol));
      const auto b = h.name(ranked_pairs_winner(h, pol));
      if (a != b) {
        r.failed = true;
        r.message = "ranked pairs " + a + " vs " + b;
      }
    }
    return r;
  });
  fold(rep, results);
  return rep;
}

// ---------------------------------------------------------------- reductions

SweepReport reduction_faithfulness(const SweepOptions& opt) {
  SweepReport rep;
  std::vector<std::function<CaseResult()>> jobs;

  auto shape_ok = [](const ReductionArtifact& art) {
    for (const auto& [label, inst] : art.instances) {
      std::vector<CandidateIndex> keep;
      for (const auto& c : inst.registered_candidates()) keep.push_back(inst.election.index_of(c));
      if (!(build_wmg(project(inst.election, keep)) == art.target)) return false;
    }
    return true;
  };

  const auto formulas = opt.exhaustive ? sweep::all_small_formulas() : sweep::small_formulas();
  for (const auto& f : formulas) {
    jobs.emplace_back([f, shape_ok] {
      CaseResult r;
      const bool sat = sweep::satisfiable(f);
      r.positive = sat;
      for (auto v : {SatVariant::fixed_nonunique, SatVariant::fixed_unique}) {
        const auto art = threesat_to_ccdc(f, v);
        const bool got = solve_control(art.instance("ccdc")).decision;
        if (got != sat || !shape_ok(art)) {
          r.failed = true;
          r.message = to_string(v) + " on " + serialize_cnf(f) + " sat=" + (sat ? "yes" : "no") +
                      " control=" + (got ? "yes" : "no");
        }
      }
      return r;
    });
  }
  jobs.emplace_back([] {
    CaseResult r;
    const ThreeSatInstance phi{3, {{1, 2, -3}, {-1, 2, 3}}};
    const bool flawed = solve_control(threesat_to_ccdc(phi, SatVariant::flawed_original).instance("ccdc")).decision;
    const bool fixed = solve_control(threesat_to_ccdc(phi, SatVariant::fixed_nonunique).instance("ccdc")).decision;
    if (flawed || !fixed) {
      r.failed = true;
      r.message = "counterexample: flawed=" + std::string(flawed ? "yes" : "no") +
                  " fixed=" + (fixed ? "yes" : "no");
    }
    return r;
  });
  for (int s : {1, 2}) {
    for (const auto& x : opt.exhaustive ? sweep::rx3c_all(s) : sweep::rx3c_classes(s)) {
      for (int variant = 0; variant < 4; ++variant) {
        jobs.emplace_back([x, variant, shape_ok] {
          CaseResult r;
          const bool cover = sweep::has_exact_cover(x);
          r.positive = cover;
          const auto model = variant % 2 ? WinnerModel::unique : WinnerModel::nonunique;
          const auto art = variant < 2 ? rx3c_to_schulze_voter(x, model)
                                       : rx3c_to_rankedpairs_voter(x, model);
          if (!shape_ok(art)) {
            r.failed = true;
            r.message = art.variant + ": margins differ from target";
          }
          for (const auto& [label, inst] : art.instances) {
            const bool got = solve_control(inst).decision;
            if (got != cover) {
              r.failed = true;
              r.message = art.variant + " " + label + " cover=" + (cover ? "yes" : "no") +
                          " control=" + (got ? "yes" : "no") + " on " + serialize_rx3c(x);
            }
          }
          return r;
        });
      }
    }
  }
  fold(rep, run_cases(jobs.size(), opt.jobs, [&](std::uint64_t i) { return jobs[i](); }));
  return rep;
}

}  // namespace

// ---------------------------------------------------------------- generators

namespace sweep {

WeightedMajorityGraph random_wmg(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int m = uniform(rng, 2, 6);
  WeightedMajorityGraph g(letters(m));
  for (int c = 0; c < m; ++c)
    for (int d = c + 1; d < m; ++d) g.set_margin(c, d, 2 * uniform(rng, -5, 5));
  g.set_parity(0);
  return g;
}

Election random_election(std::uint64_t seed, int min_m, int max_m, int max_n) {
  std::mt19937_64 rng(seed);
  const int m = uniform(rng, min_m, max_m);
  const int n = uniform(rng, 1, max_n);
  Election e(letters(m));
  std::vector<CandidateIndex> r(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    std::iota(r.begin(), r.end(), 0);
    std::shuffle(r.begin(), r.end(), rng);
    e.add_ballot(r);
  }
  return e;
}

namespace {

using Clause = std::array<int, 3>;

Clause sorted_clause(Clause c) {
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<Clause> canonical(const std::vector<Clause>& clauses) {
  std::vector<Clause> best;
  std::array<int, 3> perm{1, 2, 3};
  do {
    for (int flips = 0; flips < 8; ++flips) {
      std::vector<Clause> t;
      for (const auto& c : clauses) {
        Clause m{};
        for (int j = 0; j < 3; ++j) {
          const int v = std::abs(c[static_cast<std::size_t>(j)]);
          const int sign = (c[static_cast<std::size_t>(j)] > 0 ? 1 : -1) * ((flips >> (v - 1)) & 1 ? -1 : 1);
          m[static_cast<std::size_t>(j)] = sign * perm[static_cast<std::size_t>(v - 1)];
        }
        t.push_back(sorted_clause(m));
      }
      std::sort(t.begin(), t.end());
      if (best.empty() || t < best) best = t;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<ThreeSatInstance> small_formulas() {
  const std::vector<int> lits{-3, -2, -1, 1, 2, 3};
  std::vector<Clause> clauses;
  for (std::size_t a = 0; a < lits.size(); ++a)
    for (std::size_t b = a; b < lits.size(); ++b)
      for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
  std::set<std::vector<Clause>> seen;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    seen.insert(canonical({clauses[i]}));
    for (std::size_t j = i + 1; j < clauses.size(); ++j) seen.insert(canonical({clauses[i], clauses[j]}));
  }
  std::vector<ThreeSatInstance> out;
  for (const auto& cl : seen) out.push_back({3, cl});
  return out;
}

std::vector<ThreeSatInstance> all_small_formulas() {
  const std::vector<int> lits{-3, -2, -1, 1, 2, 3};
  std::vector<Clause> clauses;
  for (std::size_t a = 0; a < lits.size(); ++a)
    for (std::size_t b = a; b < lits.size(); ++b)
      for (std::size_t c = b; c < lits.size(); ++c) clauses.push_back({lits[a], lits[b], lits[c]});
  std::vector<ThreeSatInstance> out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    out.push_back({3, {clauses[i]}});
    for (std::size_t j = i + 1; j < clauses.size(); ++j) out.push_back({3, {clauses[i], clauses[j]}});
  }
  return out;
}

bool satisfiable(const ThreeSatInstance& f) {
  for (int mask = 0; mask < (1 << f.variables); ++mask) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int x : c) {
        const bool value = (mask >> (std::abs(x) - 1)) & 1;
        if ((x > 0) == value) any = true;
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

namespace {

using Triple = std::array<int, 3>;

std::vector<std::vector<Triple>> raw_rx3c(int s) {
  const int n = 3 * s;
  std::vector<Triple> triples;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) triples.push_back({a, b, c});
  std::vector<std::vector<Triple>> out;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<Triple> pick;
  auto rec = [&](auto& self, std::size_t from) -> void {
    if (static_cast<int>(pick.size()) == n) {
      out.push_back(pick);
      return;
    }
    for (std::size_t t = from; t < triples.size(); ++t) {
      const auto& tr = triples[t];
      if (degree[static_cast<std::size_t>(tr[0])] == 3 || degree[static_cast<std::size_t>(tr[1])] == 3 ||
          degree[static_cast<std::size_t>(tr[2])] == 3)
        continue;
      for (int x : tr) ++degree[static_cast<std::size_t>(x)];
      pick.push_back(tr);
      self(self, t);
      pick.pop_back();
      for (int x : tr) --degree[static_cast<std::size_t>(x)];
    }
  };
  rec(rec, 0);
  return out;
}

Rx3cInstance to_instance(const std::vector<Triple>& ts, int n) {
  Rx3cInstance inst;
  for (int i = 0; i < n; ++i) inst.base.push_back("u" + std::to_string(i + 1));
  for (const auto& t : ts)
    inst.triples.push_back({inst.base[static_cast<std::size_t>(t[0])], inst.base[static_cast<std::size_t>(t[1])],
                            inst.base[static_cast<std::size_t>(t[2])]});
  return inst;
}

}  // namespace

std::vector<Rx3cInstance> rx3c_all(int s) {
  std::vector<Rx3cInstance> out;
  for (const auto& ts : raw_rx3c(s)) out.push_back(to_instance(ts, 3 * s));
  return out;
}

std::vector<Rx3cInstance> rx3c_classes(int s) {
  const int n = 3 * s;
  std::set<std::vector<Triple>> seen;
  std::vector<Rx3cInstance> out;
  for (const auto& ts : raw_rx3c(s)) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Triple> best;
    do {
      std::vector<Triple> t;
      for (const auto& tr : ts) {
        Triple m{perm[static_cast<std::size_t>(tr[0])], perm[static_cast<std::size_t>(tr[1])],
                 perm[static_cast<std::size_t>(tr[2])]};
        std::sort(m.begin(), m.end());
        t.push_back(m);
      }
      std::sort(t.begin(), t.end());
      if (best.empty() || t < best) best = t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(to_instance(best, n));
  }
  return out;
}

bool has_exact_cover(const Rx3cInstance& inst) {
  const int n = static_cast<int>(inst.base.size());
  const int s = n / 3;
  bool found = false;
  detail::for_each_combination(static_cast<int>(inst.triples.size()), s, [&](const std::vector<int>& pick) {
    std::set<std::string> covered;
    for (int i : pick)
      for (const auto& x : inst.triples[static_cast<std::size_t>(i)]) covered.insert(x);
    found = static_cast<int>(covered.size()) == n;
    return found;
  });
  return found;
}

}  // namespace sweep

std::vector<std::string> sweep_names() {
  return {"in-neighbour-witness", "dcdc-equivalence", "padding-lift", "reduction-faithfulness", "ibc"};
}

SweepReport run_sweep(std::string_view suite, const SweepOptions& opt) {
  const auto t0 = Clock::now();
  SweepReport rep;
  if (suite == "in-neighbour-witness") rep = in_neighbour_witness(opt);
  else if (suite == "dcdc-equivalence") rep = dcdc_equivalence(opt);
  else if (suite == "padding-lift") rep = padding_lift(opt);
  else if (suite == "reduction-faithfulness") rep = reduction_faithfulness(opt);
  else if (suite == "ibc") rep = ibc(opt);
  else throw InvalidArgument("unknown suite '" + std::string(suite) + "'");
  rep.suite = std::string(suite);
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace votecut
