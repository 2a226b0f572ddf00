#include "votecut/control_format.hpp"

#include <map>

#include "text_util.hpp"
#include "votecut/error.hpp"
#include "votecut/formats.hpp"

namespace votecut {

std::pair<ControlType, bool> parse_control_type(std::string_view token) {
  bool exact = false;
  if (token.substr(0, 2) == "E_") {
    exact = true;
    token.remove_prefix(2);
  }
  static const std::map<std::string, ControlType, std::less<>> types{
      {"AC", ControlType::AC},       {"DC", ControlType::DC},
      {"RC", ControlType::RC},       {"AV", ControlType::AV},
      {"DV", ControlType::DV},       {"RV", ControlType::RV},
      {"B", ControlType::B},         {"AC_DC", ControlType::AC_DC},
      {"AV_DV", ControlType::AV_DV}, {"MULTIMODE", ControlType::MULTIMODE},
      {"DCG", ControlType::DCG},     {"ACG", ControlType::ACG}};
  auto it = types.find(token);
  if (it == types.end()) throw ParseError("unknown control type '" + std::string(token) + "'");
  return {it->second, exact};
}

RuleSpec parse_rule(std::string_view token) {
  if (token == "schulze") return RuleSpec::schulze();
  if (token == "ranked-pairs") return RuleSpec::ranked_pairs();
  constexpr std::string_view favor = "ranked-pairs:favor=";
  if (token.substr(0, favor.size()) == favor && token.size() > favor.size())
    return RuleSpec::ranked_pairs(TieBreakPolicy::favor(std::string(token.substr(favor.size()))));
  throw ParseError("unknown rule '" + std::string(token) + "'");
}

namespace {

struct Section {
  std::string name;  // empty for the leading election section
  std::vector<text::Line> lines;
};

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out(1);
  for (const auto& line : text::content_lines(text)) {
    if (line.text.front() == '[') {
      if (line.text.back() != ']') throw ParseError("malformed section header", line.number);
      out.push_back({std::string(line.text.substr(1, line.text.size() - 2)), {}});
      continue;
    }
    out.back().lines.push_back(line);
  }
  return out;
}

void set_limits(Limits& l, std::string_view body, std::size_t number) {
  if (text::trim(body).empty()) return;
  for (auto item : text::split(body, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'NAME:value' limit", number);
    const auto key = text::trim(item.substr(0, colon));
    const auto value = text::parse_int<int>(item.substr(colon + 1));
    if (!value || *value < 0)
      throw ParseError("malformed limit value for '" + std::string(key) + "'", number);
    if (key == "AC") l.ac = *value;
    else if (key == "DC") l.dc = *value;
    else if (key == "RC") l.rc = *value;
    else if (key == "AV") l.av = *value;
    else if (key == "DV") l.dv = *value;
    else if (key == "RV") l.rv = *value;
    else if (key == "B") l.b = *value;
    else throw ParseError("unknown limit '" + std::string(key) + "'", number);
  }
}

}  // namespace

ControlInstance parse_instance(std::string_view text) {
  const auto sections = split_sections(text);
  ControlInstance inst;

  const Section* spare_c = nullptr;
  const Section* spare_b = nullptr;
  const Section* groups = nullptr;
  const Section* control = nullptr;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const auto& s = sections[i];
    const Section** slot = nullptr;
    if (s.name == "spare-candidates") slot = &spare_c;
    else if (s.name == "spare-ballots") slot = &spare_b;
    else if (s.name == "groups") slot = &groups;
    else if (s.name == "control") slot = &control;
    else throw ParseError("unknown section [" + s.name + "]");
    if (*slot) throw ParseError("section [" + s.name + "] given twice");
    *slot = &s;
  }
  if (!control) throw ParseError("missing [control] section");

  const auto& head = sections.front();
  if (head.lines.empty()) throw ParseError("missing 'candidates:' header");
  auto names = parse_candidate_header(head.lines.front().text, head.lines.front().number);
  if (spare_c) {
    if (spare_c->lines.size() != 1)
      throw ParseError("[spare-candidates] holds one 'candidates:' line");
    inst.spare_candidates =
        parse_candidate_header(spare_c->lines.front().text, spare_c->lines.front().number);
    names.insert(names.end(), inst.spare_candidates.begin(), inst.spare_candidates.end());
  }
  try {
    inst.election = Election(names);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), head.lines.front().number);
  }
  for (std::size_t i = 1; i < head.lines.size(); ++i) {
    auto b = parse_ballot_line(head.lines[i].text, head.lines[i].number, inst.election);
    inst.election.add_ballot(std::move(b.ranking), b.multiplicity);
  }
  if (spare_b)
    for (const auto& line : spare_b->lines)
      inst.spare_ballots.push_back(parse_ballot_line(line.text, line.number, inst.election));
  if (groups) {
    for (const auto& line : groups->lines) {
      const auto colon = line.text.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'label: a, b'", line.number);
      const auto label = std::string(text::trim(line.text.substr(0, colon)));
      if (!is_valid_candidate_name(label)) throw ParseError("invalid group label", line.number);
      for (auto tok : text::split(line.text.substr(colon + 1), ',')) {
        if (!inst.election.find(tok))
          throw ParseError("unknown candidate '" + std::string(tok) + "'", line.number);
        if (!inst.groups.emplace(std::string(tok), label).second)
          throw ParseError("candidate '" + std::string(tok) + "' in two groups", line.number);
      }
    }
  }

  std::map<std::string, bool> seen;
  for (const auto& line : control->lines) {
    const auto eq = line.text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key=value'", line.number);
    const auto key = std::string(text::trim(line.text.substr(0, eq)));
    const auto value = text::trim(line.text.substr(eq + 1));
    if (seen[key]) throw ParseError("key '" + key + "' given twice", line.number);
    seen[key] = true;
    try {
      if (key == "type") {
        std::tie(inst.type, inst.exact) = parse_control_type(value);
      } else if (key == "mode") {
        if (value == "constructive") inst.mode = Mode::constructive;
        else if (value == "destructive") inst.mode = Mode::destructive;
        else throw ParseError("unknown mode '" + std::string(value) + "'");
      } else if (key == "model") {
        if (value == "unique") inst.model = WinnerModel::unique;
        else if (value == "nonunique") inst.model = WinnerModel::nonunique;
        else throw ParseError("unknown model '" + std::string(value) + "'");
      } else if (key == "rule") {
        inst.rule = parse_rule(value);
      } else if (key == "distinguished") {
        inst.distinguished = std::string(value);
      } else if (key == "limits") {
        set_limits(inst.limits, value, line.number);
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line.number);
    }
  }
  for (const char* required : {"type", "mode", "model", "rule", "distinguished"})
    if (!seen[required]) throw ParseError(std::string("missing '") + required + "=' in [control]");
  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

std::string serialize_instance(const ControlInstance& inst) {
  std::string out = "candidates:";
  const auto reg = inst.registered_candidates();
  for (std::size_t i = 0; i < reg.size(); ++i) out += (i == 0 ? " " : ", ") + reg[i];
  out += '\n';
  for (const auto& b : inst.election.ballots()) out += format_ballot(inst.election, b) + "\n";
  if (!inst.spare_candidates.empty()) {
    out += "[spare-candidates]\ncandidates:";
    for (std::size_t i = 0; i < inst.spare_candidates.size(); ++i)
      out += (i == 0 ? " " : ", ") + inst.spare_candidates[i];
    out += '\n';
  }
  if (!inst.spare_ballots.empty()) {
    out += "[spare-ballots]\n";
    for (const auto& b : inst.spare_ballots) out += format_ballot(inst.election, b) + "\n";
  }
  if (!inst.groups.empty()) {
    out += "[groups]\n";
    std::map<std::string, std::vector<std::string>> by_label;
    for (const auto& [c, label] : inst.groups) by_label[label].push_back(c);
    for (const auto& [label, cs] : by_label) {
      out += label + ":";
      for (std::size_t i = 0; i < cs.size(); ++i) out += (i == 0 ? " " : ", ") + cs[i];
      out += '\n';
    }
  }
  out += "[control]\n";
  out += "type=" + to_string(inst.type, inst.exact) + "\n";
  out += "mode=" + to_string(inst.mode) + "\n";
  out += "model=" + to_string(inst.model) + "\n";
  out += "rule=" + to_string(inst.rule) + "\n";
  out += "distinguished=" + inst.distinguished + "\n";
  std::string limits;
  const auto& l = inst.limits;
  for (auto [name, v] : {std::pair<const char*, int>{"AC", l.ac}, {"DC", l.dc}, {"RC", l.rc},
                         {"AV", l.av}, {"DV", l.dv}, {"RV", l.rv}, {"B", l.b}}) {
    if (v == 0) continue;
    if (!limits.empty()) limits += ',';
    limits += std::string(name) + ":" + std::to_string(v);
  }
  out += "limits=" + limits + "\n";
  return out;
}

}  // namespace votecut
