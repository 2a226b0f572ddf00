#pragma once

// Text formats for elections and weighted majority graphs.
//
// Election:
//     candidates: a, b, c, d
//     4: a > c > b > d
//     2: d > a > c > b
//
// WMG: a `candidates:` header, then one `c d <margin>` line per ordered pair
// with positive margin. Unlisted pairs have margin 0.
//
// Blank lines are ignored on input. Serialization emits the
// canonical form (sorted header, ballots in stored order, WMG pairs in index
// order), which parses back to an equal value.

#include <string>
#include <string_view>
#include <vector>

#include "votecut/election.hpp"

namespace votecut {

Election parse_election(std::string_view text);
std::string serialize_election(const Election& e);

WeightedMajorityGraph parse_wmg(std::string_view text);
std::string serialize_wmg(const WeightedMajorityGraph& g);

/// Comma separated candidate list following `candidates:`.
std::vector<std::string> parse_candidate_header(std::string_view line,
                                                std::size_t line_number);

/// `count: a > b > ...` against a known candidate list.
Ballot parse_ballot_line(std::string_view line, std::size_t line_number,
                         const Election& shape);
std::string format_ballot(const Election& e, const Ballot& b);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace votecut
