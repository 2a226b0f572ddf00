#pragma once

// Small hand-built inputs shared by several test files.

#include <string>
#include <tuple>
#include <vector>

#include "votecut/control.hpp"
#include "votecut/election.hpp"
#include "votecut/reductions.hpp"

namespace fixture {

using namespace votecut;

/// Eleven ballots over a, b, c, d with a unique Schulze and ranked pairs winner d.
inline Election worked_example() {
  Election e({"a", "b", "c", "d"});
  e.add_ballot(std::vector<std::string>{"a", "c", "b", "d"}, 4);
  e.add_ballot(std::vector<std::string>{"d", "a", "c", "b"}, 2);
  e.add_ballot(std::vector<std::string>{"d", "c", "a", "b"}, 3);
  e.add_ballot(std::vector<std::string>{"b", "d", "a", "c"}, 2);
  return e;
}

inline WeightedMajorityGraph wmg(const std::vector<std::string>& names,
                                 const std::vector<std::tuple<std::string, std::string, int>>& edges) {
  WeightedMajorityGraph g(names);
  for (const auto& [c, d, m] : edges) g.set_margin(c, d, m);
  return g;
}

/// Registered {d, p}, spares {a, b}: adding a alone helps p, adding both hurts.
inline ControlInstance add_candidates(bool exact) {
  const auto g = wmg({"a", "b", "d", "p"},
                     {{"d", "p", 2}, {"a", "d", 4}, {"p", "a", 4}, {"b", "p", 6}, {"d", "b", 6}});
  ControlInstance inst;
  inst.mode = Mode::constructive;
  inst.model = WinnerModel::unique;
  inst.type = ControlType::AC;
  inst.exact = exact;
  inst.election = mcgarvey_realize(g);
  inst.spare_candidates = {"a", "b"};
  inst.distinguished = "p";
  inst.limits.ac = 2;
  return inst;
}

/// Registered {c1, c2, p, w}, spare {d}; exact AC 1 / DC 2 only works if an
/// added candidate may be deleted again.
inline ControlInstance delete_added() {
  const auto g = wmg({"c1", "c2", "d", "p", "w"}, {{"w", "c1", 4},
                                                   {"w", "d", 4},
                                                   {"c1", "p", 4},
                                                   {"d", "p", 4},
                                                   {"p", "c2", 2},
                                                   {"c2", "w", 2}});
  ControlInstance inst;
  inst.mode = Mode::constructive;
  inst.model = WinnerModel::nonunique;
  inst.type = ControlType::AC_DC;
  inst.exact = true;
  inst.election = mcgarvey_realize(g);
  inst.spare_candidates = {"d"};
  inst.distinguished = "p";
  inst.limits.ac = 1;
  inst.limits.dc = 2;
  return inst;
}

/// d wins; two deletions can make c tie d but never beat it.
inline WeightedMajorityGraph tie_by_deletion() {
  std::vector<std::tuple<std::string, std::string, int>> e = {
      {"d", "xa1", 10}, {"d", "xb1", 10}, {"d", "xa2", 5},  {"d", "xa3", 5},
      {"d", "xb2", 5},  {"d", "xb3", 5},  {"xa1", "y", 10}, {"xb1", "y", 10},
      {"d", "y", 5},    {"y", "c", 5},    {"c", "d", 5},    {"xa1", "xa2", 10},
      {"xa1", "xa3", 10}, {"xb1", "xb2", 10}, {"xb1", "xb3", 10},
      {"xa2", "c", 10}, {"xa3", "c", 10}, {"xb2", "c", 10}, {"xb3", "c", 10}};
  for (const auto* z : {"za1", "za2"})
    for (const auto* x : {"xa2", "xa3"}) e.emplace_back(z, x, 20);
  for (const auto* z : {"zb1", "zb2"})
    for (const auto* x : {"xb2", "xb3"}) e.emplace_back(z, x, 20);
  for (const auto* z : {"za1", "za2", "zb1", "zb2"}) {
    e.emplace_back("c", z, 20);
    e.emplace_back("d", z, 1);
  }
  return double_margins(wmg({"c", "d", "xa1", "xa2", "xa3", "xb1", "xb2", "xb3", "y", "za1", "za2",
                             "zb1", "zb2"},
                            e));
}

inline ControlInstance tie_by_deletion_instance(WinnerModel model) {
  ControlInstance inst;
  inst.mode = Mode::destructive;
  inst.model = model;
  inst.type = ControlType::DC;
  inst.election = mcgarvey_realize(tie_by_deletion());
  inst.distinguished = "d";
  inst.limits.dc = 2;
  return inst;
}

/// (x1 or x2 or not x3) and (not x1 or x2 or x3): satisfiable.
inline ThreeSatInstance counterexample_formula() { return {3, {{1, 2, -3}, {-1, 2, 3}}}; }

/// Three copies of the whole base set.
inline Rx3cInstance single_cover() {
  return {{"e1", "e2", "e3"}, {{"e1", "e2", "e3"}, {"e1", "e2", "e3"}, {"e1", "e2", "e3"}}};
}

}  // namespace fixture
