#include "votecut/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "text_util.hpp"
#include "votecut/error.hpp"

namespace votecut {

namespace {

std::string padded(int value, int count) {
  const int width = std::max<int>(2, static_cast<int>(std::to_string(count).size()));
  auto s = std::to_string(value);
  return std::string(static_cast<std::size_t>(std::max<int>(0, width - static_cast<int>(s.size()))), '0') + s;
}

std::string negation_candidate(int i, int j, int m, int n, int l, int clauses) {
  return "n" + padded(i, clauses) + "_" + std::to_string(j) + "_" + padded(m, clauses) + "_" +
         std::to_string(n) + "__" + std::to_string(l);
}

}  // namespace

std::string clause_candidate(int clause, int copy, int clauses) {
  return "c" + padded(clause, clauses) + "_" + std::to_string(copy);
}

std::string literal_candidate(int clause, int position, int clauses) {
  return "x" + padded(clause, clauses) + "_" + std::to_string(position);
}

std::string base_candidate(int element, int elements) { return "b" + padded(element, elements); }

// ---------------------------------------------------------------- 3-CNF

ThreeSatInstance parse_cnf(std::string_view text) {
  ThreeSatInstance f;
  std::optional<int> declared_clauses;
  bool header = false;
  for (const auto& line : text::content_lines(text)) {
    const auto t = line.text;
    if (t.front() == 'c' && (t.size() == 1 || t[1] == ' ' || t[1] == '\t')) continue;
    const auto tok = text::split_ws(t);
    if (tok.front() == "p") {
      if (header) throw ParseError("duplicate problem line", line.number);
      if (tok.size() != 4 || tok[1] != "cnf") throw ParseError("expected 'p cnf <vars> <clauses>'", line.number);
      const auto v = text::parse_int<int>(tok[2]);
      const auto c = text::parse_int<int>(tok[3]);
      if (!v || !c || *v < 1 || *c < 1) throw ParseError("bad problem line counts", line.number);
      f.variables = *v;
      declared_clauses = *c;
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before 'p cnf' line", line.number);
    std::vector<int> lits;
    for (auto s : tok) {
      const auto x = text::parse_int<int>(s);
      if (!x) throw ParseError("bad literal '" + std::string(s) + "'", line.number);
      lits.push_back(*x);
    }
    if (lits.empty() || lits.back() != 0) throw ParseError("clause must end with 0", line.number);
    lits.pop_back();
    if (std::find(lits.begin(), lits.end(), 0) != lits.end())
      throw ParseError("one clause per line", line.number);
    if (lits.size() != 3)
      throw ParseError("clause has " + std::to_string(lits.size()) + " literals, expected exactly 3",
                       line.number);
    for (int x : lits)
      if (std::abs(x) > f.variables)
        throw ParseError("literal " + std::to_string(x) + " exceeds declared variables", line.number);
    f.clauses.push_back({lits[0], lits[1], lits[2]});
  }
  if (!header) throw ParseError("missing 'p cnf' line");
  if (static_cast<int>(f.clauses.size()) != *declared_clauses)
    throw ParseError("declared " + std::to_string(*declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  return f;
}

std::string serialize_cnf(const ThreeSatInstance& f) {
  std::ostringstream out;
  out << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

void validate_cnf(const ThreeSatInstance& f) {
  if (f.clauses.empty()) throw InvalidArgument("formula has no clauses");
  for (const auto& c : f.clauses)
    for (int x : c)
      if (x == 0 || std::abs(x) > f.variables)
        throw InvalidArgument("literal " + std::to_string(x) + " out of range");
}

// ---------------------------------------------------------------- RX3C

Rx3cInstance parse_rx3c(std::string_view text) {
  Rx3cInstance inst;
  bool have_base = false;
  for (const auto& line : text::content_lines(text)) {
    if (text::starts_with_key(line.text, "base")) {
      if (have_base) throw ParseError("duplicate base line", line.number);
      const auto body = line.text.substr(line.text.find(':') + 1);
      for (auto s : text::split_ws(body)) inst.base.emplace_back(s);
      have_base = true;
    } else if (text::starts_with_key(line.text, "triple")) {
      const auto body = line.text.substr(line.text.find(':') + 1);
      const auto tok = text::split_ws(body);
      if (tok.size() != 3) throw ParseError("a triple lists exactly 3 elements", line.number);
      inst.triples.push_back({std::string(tok[0]), std::string(tok[1]), std::string(tok[2])});
    } else {
      throw ParseError("expected 'base:' or 'triple:'", line.number);
    }
  }
  if (!have_base) throw ParseError("missing base line");
  return inst;
}

std::string serialize_rx3c(const Rx3cInstance& inst) {
  std::ostringstream out;
  out << "base:";
  for (const auto& b : inst.base) out << ' ' << b;
  out << '\n';
  for (const auto& t : inst.triples) out << "triple: " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

std::optional<std::string> rx3c_violation(const Rx3cInstance& inst) {
  const auto n = inst.base.size();
  if (n == 0 || n % 3 != 0) return "base set size " + std::to_string(n) + " is not a positive multiple of 3";
  std::set<std::string> base(inst.base.begin(), inst.base.end());
  if (base.size() != n) return std::string("base set has duplicate elements");
  for (const auto& b : inst.base)
    if (!is_valid_candidate_name(b)) return "element '" + b + "' is not a valid name";
  if (inst.triples.size() != n)
    return "expected " + std::to_string(n) + " triples, found " + std::to_string(inst.triples.size());
  std::map<std::string, int> occurrences;
  for (std::size_t i = 0; i < inst.triples.size(); ++i) {
    const auto& t = inst.triples[i];
    for (const auto& x : t)
      if (!base.count(x)) return "triple " + std::to_string(i + 1) + " uses unknown element '" + x + "'";
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
      return "triple " + std::to_string(i + 1) + " repeats an element";
    for (const auto& x : t) ++occurrences[x];
  }
  for (const auto& b : inst.base)
    if (occurrences[b] != 3)
      return "element '" + b + "' occurs in " + std::to_string(occurrences[b]) + " triples, expected 3";
  return std::nullopt;
}

bool validate_rx3c(const Rx3cInstance& inst) { return !rx3c_violation(inst); }

// ---------------------------------------------------------------- artifacts

std::string to_string(SatVariant v) {
  switch (v) {
    case SatVariant::flawed_original: return "flawed-original";
    case SatVariant::fixed_nonunique: return "fixed-nonunique";
    case SatVariant::fixed_unique: return "fixed-unique";
  }
  return {};
}

SatVariant parse_sat_variant(std::string_view token) {
  std::string t(token);
  std::replace(t.begin(), t.end(), '_', '-');
  if (t == "flawed-original") return SatVariant::flawed_original;
  if (t == "fixed-nonunique") return SatVariant::fixed_nonunique;
  if (t == "fixed-unique") return SatVariant::fixed_unique;
  throw InvalidArgument("unknown variant '" + std::string(token) + "'");
}

const ControlInstance& ReductionArtifact::instance(std::string_view label) const {
  for (const auto& [l, inst] : instances)
    if (l == label) return inst;
  throw InvalidArgument("artifact has no instance '" + std::string(label) + "'");
}

std::string ReductionArtifact::provenance() const {
  std::ostringstream out;
  out << "variant=" << variant << '\n';
  for (const auto& [k, v] : constants) out << k << '=' << v << '\n';
  for (const auto& [label, inst] : instances)
    out << "instance." << label << '=' << to_string(inst.type, inst.exact) << ' '
        << to_string(inst.mode) << ' ' << to_string(inst.model) << ' ' << to_string(inst.rule)
        << ' ' << inst.distinguished << '\n';
  for (const auto& [c, r] : roles) out << "role." << c << '=' << r << '\n';
  return out.str();
}

// ---------------------------------------------------------------- 3SAT -> CCDC

ReductionArtifact threesat_to_ccdc(const ThreeSatInstance& f, SatVariant variant) {
  validate_cnf(f);
  const int k = static_cast<int>(f.clauses.size());
  ReductionArtifact art;
  art.variant = to_string(variant);

  struct NegGroup {
    int i, j, m, n;
  };
  std::vector<NegGroup> neg;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int m = i; m <= k; ++m)
        for (int n = (m == i ? j + 1 : 1); n <= 3; ++n)
          if (f.clauses[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] ==
              -f.clauses[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)])
            neg.push_back({i, j, m, n});

  std::vector<std::string> names{"p", "a"};
  art.roles["p"] = "distinguished";
  art.roles["a"] = "special";
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k + 1; ++j) {
      names.push_back(clause_candidate(i, j, k));
      art.roles[names.back()] = "clause " + std::to_string(i);
    }
    for (int j = 1; j <= 3; ++j) {
      names.push_back(literal_candidate(i, j, k));
      art.roles[names.back()] =
          "literal " + std::to_string(f.clauses[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]) +
          " of clause " + std::to_string(i);
    }
  }
  for (const auto& g : neg)
    for (int l = 1; l <= k + 1; ++l) {
      names.push_back(negation_candidate(g.i, g.j, g.m, g.n, l, k));
      art.roles[names.back()] = "negation " + literal_candidate(g.i, g.j, k) + " " +
                                literal_candidate(g.m, g.n, k);
    }

  Election e(names);
  WeightedMajorityGraph target(names);
  auto w = [&](const std::string& c, const std::string& d, int copies) {
    if (copies == 0) return;
    append_w_pair(e, e.index_of(c), e.index_of(d), copies);
    target.set_margin(c, d, target.margin(target.index_of(c), target.index_of(d)) + 2 * copies);
  };

  // Vote counts per row of the construction table.
  struct Counts {
    int clause_lit, lit_chain, lit_p, a_lit, p_a, lit_neg, neg_p, a_clause;
  };
  Counts cnt{};
  switch (variant) {
    case SatVariant::flawed_original: cnt = {1, 1, 1, 1, 1, 1, 1, 0}; break;
    case SatVariant::fixed_nonunique: cnt = {2, 2, 2, 2, 2, 1, 1, 1}; break;
    case SatVariant::fixed_unique: cnt = {3, 3, 3, 4, 4, 2, 1, 2}; break;
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k + 1; ++j) w(clause_candidate(i, j, k), literal_candidate(i, 1, k), cnt.clause_lit);
    w(literal_candidate(i, 1, k), literal_candidate(i, 2, k), cnt.lit_chain);
    w(literal_candidate(i, 2, k), literal_candidate(i, 3, k), cnt.lit_chain);
    w(literal_candidate(i, 3, k), "p", cnt.lit_p);
    for (int j = 1; j <= 3; ++j) w("a", literal_candidate(i, j, k), cnt.a_lit);
  }
  w("p", "a", cnt.p_a);
  for (const auto& g : neg)
    for (int l = 1; l <= k + 1; ++l) {
      const auto nc = negation_candidate(g.i, g.j, g.m, g.n, l, k);
      w(literal_candidate(g.i, g.j, k), nc, cnt.lit_neg);
      w(literal_candidate(g.m, g.n, k), nc, cnt.lit_neg);
      w(nc, "p", cnt.neg_p);
    }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k + 1; ++j) w("a", clause_candidate(i, j, k), cnt.a_clause);

  ControlInstance inst;
  inst.rule = RuleSpec::schulze();
  inst.mode = Mode::constructive;
  inst.model = variant == SatVariant::fixed_unique ? WinnerModel::unique : WinnerModel::nonunique;
  inst.type = ControlType::DC;
  inst.election = std::move(e);
  inst.distinguished = "p";
  inst.limits.dc = k;
  inst.validate();

  art.instances.emplace_back("ccdc", std::move(inst));
  art.target = std::move(target);
  art.constants["clauses"] = k;
  art.constants["variables"] = f.variables;
  art.constants["negation_groups"] = static_cast<std::int64_t>(neg.size());
  art.constants["deletion_limit"] = k;
  return art;
}

// ---------------------------------------------------------------- RX3C -> voter control

namespace {

ReductionArtifact rx3c_voter(const Rx3cInstance& src, WinnerModel model, bool ranked_pairs) {
  if (auto why = rx3c_violation(src)) throw InvalidArgument("malformed RX3C instance: " + *why);
  const int n = static_cast<int>(src.base.size());
  const int s = n / 3;
  const int big = 4 * s + 4;       // the large constant, even
  const int dominant = 4 * big;    // above every reachable post-control margin
  // D(b,p) - D(p,w). Must be even; 4s-2 pairs constructive-nonunique with
  // destructive-unique, 4s-4 the other way round. Ranked pairs breaks the
  // resulting tie for p in both models.
  const int offset =
      (ranked_pairs || model == WinnerModel::nonunique) ? 4 * s - 2 : 4 * s - 4;

  ReductionArtifact art;
  art.variant = std::string(ranked_pairs ? "ranked-pairs" : "schulze") + "-" + to_string(model);

  std::map<std::string, std::string> rename;
  std::vector<std::string> bnames;
  for (int j = 0; j < n; ++j) {
    bnames.push_back(base_candidate(j + 1, n));
    rename[src.base[static_cast<std::size_t>(j)]] = bnames.back();
    art.roles[bnames.back()] = "element " + src.base[static_cast<std::size_t>(j)];
  }
  art.roles["p"] = "distinguished";
  art.roles["w"] = "despised";
  std::vector<std::string> names = bnames;
  names.push_back("p");
  names.push_back("w");

  WeightedMajorityGraph target(names);
  target.set_margin("p", "w", 2 * big);
  for (int j = 0; j < n; ++j) {
    target.set_margin(bnames[static_cast<std::size_t>(j)], "p", 2 * big + offset);
    target.set_margin("w", bnames[static_cast<std::size_t>(j)], dominant);
    if (ranked_pairs)
      for (int i = 0; i < j; ++i)
        target.set_margin(bnames[static_cast<std::size_t>(i)], bnames[static_cast<std::size_t>(j)], dominant);
  }

  Election base(names);
  std::vector<std::string> wbp{"w"};
  wbp.insert(wbp.end(), bnames.begin(), bnames.end());
  wbp.push_back("p");
  const int filler = s % 2;
  base.add_ballot(wbp, s + filler);
  Election e = mcgarvey_realize(target, base);

  std::vector<Ballot> spare;
  for (const auto& t : src.triples) {
    std::vector<std::string> in{rename.at(t[0]), rename.at(t[1]), rename.at(t[2])};
    std::sort(in.begin(), in.end());
    std::vector<std::string> r = in;
    r.push_back("p");
    for (const auto& b : bnames)
      if (std::find(in.begin(), in.end(), b) == in.end()) r.push_back(b);
    r.push_back("w");
    std::vector<CandidateIndex> idx;
    for (const auto& c : r) idx.push_back(e.index_of(c));
    spare.push_back({std::move(idx), 1});
  }

  const WinnerModel other =
      model == WinnerModel::unique ? WinnerModel::nonunique : WinnerModel::unique;
  const RuleSpec rule =
      ranked_pairs ? RuleSpec::ranked_pairs(TieBreakPolicy::favor("p")) : RuleSpec::schulze();
  auto make = [&](ControlType type, bool exact, Mode mode) {
    ControlInstance inst;
    inst.rule = rule;
    inst.mode = mode;
    inst.model = mode == Mode::constructive ? model : other;
    inst.type = type;
    inst.exact = exact;
    inst.election = e;
    inst.spare_ballots = spare;
    inst.distinguished = mode == Mode::constructive ? "p" : "w";
    if (type == ControlType::AV_DV) {
      inst.limits.av = s;
      inst.limits.dv = s;
    } else {
      inst.limits.rv = s;
    }
    inst.validate();
    return inst;
  };
  art.instances.emplace_back("E_AV_DV-constructive", make(ControlType::AV_DV, true, Mode::constructive));
  art.instances.emplace_back("E_AV_DV-destructive", make(ControlType::AV_DV, true, Mode::destructive));
  art.instances.emplace_back("RV-constructive", make(ControlType::RV, false, Mode::constructive));
  art.instances.emplace_back("RV-destructive", make(ControlType::RV, false, Mode::destructive));

  art.target = std::move(target);
  art.constants["s"] = s;
  art.constants["L"] = big;
  art.constants["dominant_margin"] = dominant;
  art.constants["parity_filler"] = filler;
  art.constants["fixed_ballots"] = s;
  art.constants["margin_b_over_p"] = 2 * big + offset;
  art.constants["margin_p_over_w"] = 2 * big;
  return art;
}

}  // namespace

ReductionArtifact rx3c_to_schulze_voter(const Rx3cInstance& inst, WinnerModel model) {
  return rx3c_voter(inst, model, false);
}

ReductionArtifact rx3c_to_rankedpairs_voter(const Rx3cInstance& inst, WinnerModel model) {
  return rx3c_voter(inst, model, true);
}

}  // namespace votecut
