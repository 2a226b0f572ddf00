// votecut command-line front end.
//
// Exit codes: 0 computed, 1 input error, 2 search refused by the guard,
// 3 a verification sweep failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "votecut/control.hpp"
#include "votecut/control_format.hpp"
#include "votecut/dcdc.hpp"
#include "votecut/error.hpp"
#include "votecut/formats.hpp"
#include "votecut/ranked_pairs.hpp"
#include "votecut/reductions.hpp"
#include "votecut/schulze.hpp"
#include "votecut/verify.hpp"
#include "votecut/vertex_cut.hpp"

using namespace votecut;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitRefused = 2;
constexpr int kExitSweepFailed = 3;

struct Global {
  bool json = false;
  bool no_timing = false;
  bool force = false;
  bool verbose = false;
  std::uint64_t seed = SweepOptions{}.seed;
  int jobs = 1;
};

std::string scalar_text(const Json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void render(std::ostream& out, const Json& obj, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : obj.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      render(out, v, indent + 2);
    } else if (v.is_array()) {
      bool flat = true;
      for (const auto& x : v) flat = flat && !x.is_structured();
      if (flat) {
        out << pad << key << ":";
        if (v.empty()) out << " -";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << scalar_text(v[i]);
        out << '\n';
      } else {
        out << pad << key << ":\n";
        for (const auto& x : v) {
          if (x.is_object()) {
            std::string line;
            for (const auto& [k2, v2] : x.items()) {
              std::string val;
              if (v2.is_array()) {
                for (std::size_t i = 0; i < v2.size(); ++i) val += (i ? " " : "") + scalar_text(v2[i]);
              } else {
                val = scalar_text(v2);
              }
              line += (line.empty() ? "" : " ") + k2 + "=" + val;
            }
            out << pad << "  " << line << '\n';
          } else {
            out << pad << "  " << x.dump() << '\n';
          }
        }
      }
    } else {
      out << pad << key << ": " << scalar_text(v) << '\n';
    }
  }
}

void emit(const Global& g, const Json& report) {
  if (g.json)
    std::cout << report.dump(2) << '\n';
  else
    render(std::cout, report, 0);
}

Json names_json(const std::vector<std::string>& v) { return Json(v); }

template <typename Names>
Json index_names(const Names& holder, const std::vector<int>& idx) {
  Json a = Json::array();
  for (int i : idx) a.push_back(holder.name(i));
  return a;
}

WeightedMajorityGraph load_profile(const std::string& path) {
  const auto text = read_file(path);
  try {
    return build_wmg(parse_election(text));
  } catch (const ParseError& first) {
    try {
      return parse_wmg(text);
    } catch (const ParseError&) {
      throw first;
    }
  }
}

TieBreakPolicy parse_tiebreak(const std::string& s) {
  if (s == "lexicographic") return TieBreakPolicy::lexicographic();
  if (s.rfind("favor:", 0) == 0 || s.rfind("favor=", 0) == 0) {
    const auto name = s.substr(6);
    if (name.empty()) throw InvalidArgument("favor needs a candidate name");
    return TieBreakPolicy::favor(name);
  }
  throw InvalidArgument("unknown tie-break '" + s + "' (lexicographic or favor:NAME)");
}

Json pair_json(const WeightedMajorityGraph& g, const RankedPair& p) {
  return Json{{"winner", g.name(p.winner)}, {"loser", g.name(p.loser)}, {"margin", p.margin}};
}

// ---------------------------------------------------------------- winners

int cmd_winners(const Global& gl, const std::string& file, const std::string& rule,
                const std::string& tiebreak) {
  const auto g = load_profile(file);
  if (g.candidate_count() == 0) throw InvalidArgument("no candidates");
  Json r;
  if (rule == "schulze") {
    r["rule"] = "schulze";
    r["winners"] = index_names(g, schulze_winners(g));
    if (gl.verbose && g.candidate_count() >= 2) {
      const auto p = strongest_paths(g);
      Json margins = Json::array();
      for (int c = 0; c < g.candidate_count(); ++c)
        for (int d = 0; d < g.candidate_count(); ++d)
          if (g.margin(c, d) > 0) margins.push_back(Json{{"from", g.name(c)}, {"to", g.name(d)}, {"margin", g.margin(c, d)}});
      r["margins"] = margins;
      Json rows = Json::object();
      for (int c = 0; c < g.candidate_count(); ++c) {
        Json row = Json::object();
        for (int d = 0; d < g.candidate_count(); ++d)
          if (c != d) row[g.name(d)] = p(c, d);
        rows[g.name(c)] = row;
      }
      r["strongest-paths"] = rows;
    }
  } else if (rule == "ranked-pairs") {
    const auto pol = parse_tiebreak(tiebreak);
    if (pol.kind == TieBreakPolicy::Kind::favor_designated) g.index_of(pol.designee);
    r["rule"] = "ranked-pairs";
    r["tiebreak"] = tiebreak;
    r["winner"] = g.name(ranked_pairs_winner(g, pol));
    if (gl.verbose) {
      const auto agenda = pair_agenda(g, pol);
      const auto lg = lock_pairs(g.candidate_count(), agenda);
      Json trace = Json::array();
      std::size_t li = 0, si = 0;
      for (const auto& pr : agenda) {
        Json step = pair_json(g, pr);
        if (si < lg.skipped.size() && lg.skipped[si].pair == pr) {
          step["action"] = "skip";
          step["cycle"] = index_names(g, lg.skipped[si].cycle_witness);
          ++si;
        } else {
          step["action"] = "lock";
          ++li;
        }
        trace.push_back(step);
      }
      r["lock-trace"] = trace;
    }
  } else {
    throw InvalidArgument("unknown rule '" + rule + "'");
  }
  emit(gl, r);
  return 0;
}

// ---------------------------------------------------------------- control

Json witness_json(const ControlInstance& inst, const ControlWitness& w) {
  Json j;
  j["added-candidates"] = w.added_candidates;
  j["deleted-candidates"] = w.deleted_candidates;
  j["deleted-ballots"] = w.deleted_ballots;
  j["added-ballots"] = w.added_ballots;
  Json bribed = Json::array();
  for (const auto& b : w.bribed)
    bribed.push_back(Json{{"source", b.from_spare ? "spare" : "registered"}, {"index", b.index}, {"ranking", b.ranking}});
  j["bribed"] = bribed;
  (void)inst;
  return j;
}

int cmd_control(const Global& gl, const std::string& file, const std::string& solver) {
  const auto inst = parse_instance(read_file(file));
  inst.validate();
  Json r;
  r["instance"] = to_string(inst.type, inst.exact);
  r["mode"] = to_string(inst.mode);
  r["model"] = to_string(inst.model);
  r["rule"] = to_string(inst.rule);
  r["solver"] = solver;
  const auto t0 = std::chrono::steady_clock::now();
  if (solver == "brute") {
    const auto res = solve_control(inst, SolveOptions{gl.force});
    r["decision"] = res.decision;
    if (res.witness) r["witness"] = witness_json(inst, *res.witness);
    r["evaluated"] = res.evaluated;
  } else if (solver == "poly") {
    if (inst.rule.rule != Rule::schulze || inst.type != ControlType::DC || inst.exact ||
        inst.mode != Mode::destructive || inst.model != WinnerModel::nonunique ||
        !inst.spare_candidates.empty())
      throw InvalidArgument("--solver poly handles Schulze destructive DC in the nonunique model only");
    const auto res = solve_dcdc_nonunique(inst.election, inst.distinguished, inst.limits.dc);
    r["decision"] = res.decision;
    if (res.decision) r["witness"] = Json{{"deleted-candidates", res.deleted}};
    if (res.rival) r["rival"] = *res.rival;
    r["rounds"] = res.rounds;
  } else if (solver == "cut") {
    CutDriverResult res;
    if (inst.type == ControlType::DCG || inst.type == ControlType::ACG)
      res = group_control_via_cut(inst);
    else
      res = dcac_dc_via_cut(inst);
    r["decision"] = res.decision;
    if (res.decision) r["cut"] = res.cut;
    if (res.rival) r["rival"] = *res.rival;
    if (res.threshold) r["threshold"] = *res.threshold;
    r["queries"] = res.queries;
  } else {
    throw InvalidArgument("unknown solver '" + solver + "'");
  }
  if (!gl.no_timing)
    r["time-ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(gl, r);
  return 0;
}

// ---------------------------------------------------------------- reduce

int cmd_reduce(const Global& gl, const std::string& from, const std::string& file,
               const std::string& variant, const std::string& out_dir, std::string prefix) {
  const auto text = read_file(file);
  if (prefix.empty()) prefix = fs::path(file).stem().string();
  ReductionArtifact art;
  if (from == "3sat") {
    art = threesat_to_ccdc(parse_cnf(text), parse_sat_variant(variant.empty() ? "fixed-nonunique" : variant));
  } else if (from == "rx3c") {
    const auto inst = parse_rx3c(text);
    const std::string v = variant.empty() ? "schulze-nonunique" : variant;
    if (v == "schulze-nonunique") art = rx3c_to_schulze_voter(inst, WinnerModel::nonunique);
    else if (v == "schulze-unique") art = rx3c_to_schulze_voter(inst, WinnerModel::unique);
    else if (v == "ranked-pairs-nonunique") art = rx3c_to_rankedpairs_voter(inst, WinnerModel::nonunique);
    else if (v == "ranked-pairs-unique") art = rx3c_to_rankedpairs_voter(inst, WinnerModel::unique);
    else throw InvalidArgument("unknown rx3c variant '" + v + "'");
  } else {
    throw InvalidArgument("--from must be 3sat or rx3c");
  }
  fs::create_directories(out_dir);
  Json r;
  r["variant"] = art.variant;
  Json files = Json::array();
  for (const auto& [label, inst] : art.instances) {
    const auto path = (fs::path(out_dir) / (prefix + "." + label + ".instance")).string();
    write_file(path, serialize_instance(inst));
    files.push_back(path);
  }
  const auto prov = (fs::path(out_dir) / (prefix + ".provenance")).string();
  write_file(prov, art.provenance());
  files.push_back(prov);
  r["candidates"] = art.target.candidate_count();
  r["files"] = files;
  emit(gl, r);
  return 0;
}

// ---------------------------------------------------------------- cut

std::vector<int> vertex_list(const DiGraph& g, const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(g.index_of(item.substr(b, item.find_last_not_of(' ') - b + 1)));
  }
  return out;
}

int cmd_cut(const Global& gl, const std::string& file, const std::string& problem,
            const std::string& s, const std::string& t, int k, const std::string& labeled,
            int x, int y, const std::string& colours, int min_size) {
  const auto g = parse_digraph(read_file(file));
  CutQuery q;
  q.s = g.index_of(s);
  q.t = g.index_of(t);
  q.k = k;
  q.x = x;
  q.y = y;
  q.min_size = min_size;
  Json r;
  r["problem"] = problem;
  if (problem == "min") {
    q.problem = CutQuery::Problem::min_cut;
    const auto c = min_st_vertex_cut(g, q.s, q.t);
    r["size"] = c.size;
    r["cut"] = index_names(g, c.vertices);
    emit(gl, r);
    return 0;
  }
  if (problem == "ppvc") {
    q.problem = CutQuery::Problem::ppvc;
  } else if (problem == "mippvc") {
    q.problem = CutQuery::Problem::mippvc;
    q.labeled = vertex_list(g, labeled);
  } else if (problem == "cppvc") {
    q.problem = CutQuery::Problem::cppvc;
    // name=colour pairs; unlisted vertices get a colour of their own
    std::map<std::string, std::string> given;
    std::stringstream ss(colours);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidArgument("colours are name=colour pairs");
      auto trim = [](std::string v) {
        const auto b = v.find_first_not_of(' ');
        return b == std::string::npos ? std::string() : v.substr(b, v.find_last_not_of(' ') - b + 1);
      };
      given[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    std::map<std::string, int> ids;
    for (int v = 0; v < g.size(); ++v) {
      auto it = given.find(g.name(v));
      const std::string key = it == given.end() ? "\x01" + g.name(v) : it->second;
      auto [pos, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
      q.colour.push_back(pos->second);
    }
    for (const auto& [name, c] : given) g.index_of(name);
  } else {
    throw InvalidArgument("unknown problem '" + problem + "'");
  }
  const auto d = decide(g, q);
  r["decision"] = d.decision;
  if (d.decision) r["cut"] = index_names(g, d.witness);
  emit(gl, r);
  return 0;
}

// ---------------------------------------------------------------- realize, verify

int cmd_realize(const std::string& file, const std::string& out) {
  const auto g = parse_wmg(read_file(file));
  const auto text = serialize_election(mcgarvey_realize(g));
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int cmd_verify(const Global& gl, const std::string& suite, std::uint64_t cases, bool exhaustive) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = sweep_names();
  else
    suites = {suite};
  bool ok = true;
  Json all = Json::array();
  for (const auto& name : suites) {
    SweepOptions opt;
    opt.seed = gl.seed;
    opt.cases = cases;
    opt.jobs = gl.jobs;
    opt.exhaustive = exhaustive;
    const auto rep = run_sweep(name, opt);
    Json r;
    r["suite"] = rep.suite;
    r["seed"] = opt.seed;
    r["cases"] = rep.cases;
    r["positives"] = rep.positives;
    r["failures"] = rep.failures;
    if (!rep.messages.empty()) r["messages"] = rep.messages;
    if (!gl.no_timing) {
      r["seconds"] = rep.seconds;
      if (rep.poly_ms_mean > 0) r["poly-ms-mean"] = rep.poly_ms_mean;
    }
    r["result"] = rep.passed() ? "pass" : "fail";
    ok = ok && rep.passed();
    if (gl.json)
      all.push_back(r);
    else
      emit(gl, r);
  }
  if (gl.json) std::cout << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  return ok ? 0 : kExitSweepFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schulze and ranked pairs winners, election control and reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_flag("--json", gl.json, "structured JSON output");
  app.add_flag("--no-timing", gl.no_timing, "omit timings from reports");
  app.add_flag("--force", gl.force, "ignore the search guard");
  app.add_option("--seed", gl.seed, "seed for randomized sweeps");
  app.add_option("--jobs", gl.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", gl.verbose, "extra detail");

  std::string file, rule = "schulze", tiebreak = "lexicographic";
  auto* win = app.add_subcommand("winners", "winner set of an election or WMG file");
  win->add_option("file", file)->required();
  win->add_option("--rule", rule)->check(CLI::IsMember({"schulze", "ranked-pairs"}));
  win->add_option("--tiebreak", tiebreak, "lexicographic or favor:NAME");

  std::string solver = "brute";
  auto* ctl = app.add_subcommand("control", "decide a control instance");
  ctl->add_option("file", file)->required();
  ctl->add_option("--solver", solver)->check(CLI::IsMember({"brute", "poly", "cut"}));

  std::string from, variant, out_dir = ".", prefix;
  auto* red = app.add_subcommand("reduce", "generate a reduction artifact");
  red->add_option("--from", from)->required()->check(CLI::IsMember({"3sat", "rx3c"}));
  red->add_option("file", file)->required();
  red->add_option("--variant", variant);
  red->add_option("--out-dir", out_dir);
  red->add_option("--prefix", prefix);

  std::string problem = "ppvc", s, t, labeled, colours;
  int k = 0, x = 0, y = 0, min_size = 0;
  auto* cut = app.add_subcommand("cut", "vertex cut queries on a digraph file");
  cut->add_option("file", file)->required();
  cut->add_option("--problem", problem)->check(CLI::IsMember({"min", "ppvc", "mippvc", "cppvc"}));
  cut->add_option("-s,--source", s)->required();
  cut->add_option("-t,--target", t)->required();
  cut->add_option("-k", k);
  cut->add_option("--labeled", labeled, "comma separated labelled vertices");
  cut->add_option("-x", x, "max unlabelled vertices in the cut");
  cut->add_option("-y", y, "min labelled vertices in the cut");
  cut->add_option("--colours", colours, "name=colour pairs");
  cut->add_option("--min-size", min_size);

  std::string out;
  auto* rea = app.add_subcommand("realize", "election realizing a WMG");
  rea->add_option("file", file)->required();
  rea->add_option("-o,--output", out);

  std::string suite;
  std::uint64_t cases = 0;
  auto* ver = app.add_subcommand("verify", "run a property sweep");
  ver->add_option("--suite", suite)->required();
  ver->add_option("--cases", cases, "case count (0 = suite default)");
  bool exhaustive = false;
  ver->add_flag("--exhaustive", exhaustive, "no symmetry reduction in reduction-faithfulness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*win) return cmd_winners(gl, file, rule, tiebreak);
    if (*ctl) return cmd_control(gl, file, solver);
    if (*red) return cmd_reduce(gl, from, file, variant, out_dir, prefix);
    if (*cut) return cmd_cut(gl, file, problem, s, t, k, labeled, x, y, colours, min_size);
    if (*rea) return cmd_realize(file, out);
    if (*ver) return cmd_verify(gl, suite, cases, exhaustive);
  } catch (const SearchRefused& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
