#include "votecut/formats.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "text_util.hpp"
#include "votecut/error.hpp"

namespace votecut {

std::vector<std::string> parse_candidate_header(std::string_view line,
                                                std::size_t line_number) {
  if (!text::starts_with_key(line, "candidates"))
    throw ParseError("expected 'candidates:' header", line_number);
  auto body = text::trim(line.substr(line.find(':') + 1));
  std::vector<std::string> names;
  if (body.empty()) return names;
  for (auto tok : text::split(body, ',')) {
    if (!is_valid_candidate_name(tok))
      throw ParseError("invalid candidate name '" + std::string(tok) + "'",
                       line_number);
    names.emplace_back(tok);
  }
  return names;
}

Ballot parse_ballot_line(std::string_view line, std::size_t line_number,
                         const Election& shape) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("expected '<count>: <ranking>'", line_number);
  auto count = text::parse_int<int>(line.substr(0, colon));
  if (!count || *count <= 0)
    throw ParseError("malformed count '" +
                         std::string(text::trim(line.substr(0, colon))) + "'",
                     line_number);

  const int m = shape.candidate_count();
  std::vector<CandidateIndex> ranking;
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  auto body = text::trim(line.substr(colon + 1));
  if (!body.empty()) {
    for (auto tok : text::split(body, '>')) {
      auto c = shape.find(tok);
      if (!c)
        throw ParseError("unknown candidate '" + std::string(tok) + "'",
                         line_number);
      if (seen[static_cast<std::size_t>(*c)]++)
        throw ParseError("candidate '" + std::string(tok) + "' ranked twice",
                         line_number);
      ranking.push_back(*c);
    }
  }
  for (int c = 0; c < m; ++c) {
    if (!seen[static_cast<std::size_t>(c)])
      throw ParseError("ballot is missing candidate '" + shape.name(c) + "'",
                       line_number);
  }
  return {std::move(ranking), *count};
}

std::string format_ballot(const Election& e, const Ballot& b) {
  std::string out = std::to_string(b.multiplicity) + ":";
  for (std::size_t i = 0; i < b.ranking.size(); ++i) {
    out += i == 0 ? " " : " > ";
    out += e.name(b.ranking[i]);
  }
  return out;
}

Election parse_election(std::string_view text) {
  const auto lines = text::content_lines(text);
  if (lines.empty()) throw ParseError("empty election file");
  auto names = parse_candidate_header(lines.front().text, lines.front().number);
  Election e;
  try {
    e = Election(std::move(names));
  } catch (const InvalidArgument& ex) {
    throw ParseError(ex.what(), lines.front().number);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto b = parse_ballot_line(lines[i].text, lines[i].number, e);
    e.add_ballot(std::move(b.ranking), b.multiplicity);
  }
  return e;
}

std::string serialize_election(const Election& e) {
  std::string out = "candidates:";
  for (int c = 0; c < e.candidate_count(); ++c) {
    out += c == 0 ? " " : ", ";
    out += e.name(c);
  }
  out += '\n';
  for (const auto& b : e.ballots()) {
    out += format_ballot(e, b);
    out += '\n';
  }
  return out;
}

WeightedMajorityGraph parse_wmg(std::string_view text) {
  const auto lines = text::content_lines(text);
  if (lines.empty()) throw ParseError("empty WMG file");
  WeightedMajorityGraph g;
  try {
    g = WeightedMajorityGraph(
        parse_candidate_header(lines.front().text, lines.front().number));
  } catch (const InvalidArgument& ex) {
    throw ParseError(ex.what(), lines.front().number);
  }
  const int m = g.candidate_count();
  std::vector<char> given(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [number, line] = lines[i];
    auto toks = text::split_ws(line);
    if (toks.size() != 3) throw ParseError("expected 'c d <margin>'", number);
    auto c = g.find(toks[0]);
    auto d = g.find(toks[1]);
    if (!c) throw ParseError("unknown candidate '" + std::string(toks[0]) + "'", number);
    if (!d) throw ParseError("unknown candidate '" + std::string(toks[1]) + "'", number);
    if (*c == *d) throw ParseError("self edge", number);
    auto w = text::parse_int<int>(toks[2]);
    if (!w) throw ParseError("malformed margin '" + std::string(toks[2]) + "'", number);
    if (*w <= 0)
      throw ParseError("margins must be listed in their positive direction", number);
    auto& slot = given[static_cast<std::size_t>(std::min(*c, *d) * m + std::max(*c, *d))];
    if (slot) throw ParseError("pair listed twice", number);
    slot = 1;
    g.set_margin(*c, *d, *w);
  }
  return g;
}

std::string serialize_wmg(const WeightedMajorityGraph& g) {
  std::string out = "candidates:";
  for (int c = 0; c < g.candidate_count(); ++c) {
    out += c == 0 ? " " : ", ";
    out += g.name(c);
  }
  out += '\n';
  for (int c = 0; c < g.candidate_count(); ++c) {
    for (int d = 0; d < g.candidate_count(); ++d) {
      if (c != d && g.margin(c, d) > 0)
        out += g.name(c) + " " + g.name(d) + " " + std::to_string(g.margin(c, d)) + "\n";
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace votecut
