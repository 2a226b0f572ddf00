#pragma once

// Control instance files: the election format (header lists the registered
// candidates, ballots rank registered and spare candidates) followed by
// optional sections and a mandatory [control] section:
//
//     candidates: a, b, p
//     3: a > b > p > d1
//     [spare-candidates]
//     candidates: d1
//     [spare-ballots]
//     1: d1 > a > b > p
//     [groups]
//     g1: a, b
//     [control]
//     type=E_AC_DC
//     mode=constructive
//     model=unique
//     rule=schulze
//     distinguished=p
//     limits=AC:1,DC:2

#include <string>
#include <string_view>

#include "votecut/control.hpp"

namespace votecut {

ControlInstance parse_instance(std::string_view text);
std::string serialize_instance(const ControlInstance& inst);

/// `E_AC_DC` -> (AC_DC, exact). Throws ParseError on unknown tokens.
std::pair<ControlType, bool> parse_control_type(std::string_view token);
RuleSpec parse_rule(std::string_view token);

}  // namespace votecut
