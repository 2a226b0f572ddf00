#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "votecut/control.hpp"
#include "votecut/election.hpp"
#include "votecut/vertex_cut.hpp"

namespace votecut {

/// Union of all simple d -> c paths whose edges all have margin > threshold.
struct StrongerPathSubgraph {
  std::vector<CandidateIndex> vertices;  // sorted; empty when no such path
  std::vector<std::pair<CandidateIndex, CandidateIndex>> edges;
};

/// Exact path union by backtracking (exponential in the worst case).
StrongerPathSubgraph stronger_path_subgraph(const WeightedMajorityGraph& g,
                                            CandidateIndex d, CandidateIndex c,
                                            int threshold);

/// In-neighbours of c in the stronger-path subgraph: u with margin(u,c) >
/// threshold and a path d -> u over edges > threshold that avoids c.
/// Polynomial; `d` itself is included when margin(d,c) > threshold.
std::vector<CandidateIndex> stronger_in_neighbors(const WeightedMajorityGraph& g,
                                                  CandidateIndex d, CandidateIndex c,
                                                  int threshold);

/// In-neighbours u of c (margin(u,c) >= threshold) that d reaches over edges
/// >= threshold without passing another such in-neighbour or c. Deleting them
/// is the smallest in-neighbour-only cut of all d -> c paths of that strength.
std::vector<CandidateIndex> blocking_in_neighbors(const WeightedMajorityGraph& g,
                                                  CandidateIndex d, CandidateIndex c,
                                                  int threshold);

struct DcdcResult {
  bool decision = false;
  std::vector<std::string> deleted;      // witness when decision is true
  std::optional<std::string> rival;      // rival that dethroned d
  int rounds = 0;                        // deletion rounds over all rivals
  std::uint64_t closure_ops = 0;         // inner relaxation steps performed
};

enum class DcdcStrategy {
  /// Each round deletes blocking_in_neighbors at threshold P(c,d).
  blocking,
  /// Each round deletes every stronger_in_neighbors vertex at threshold
  /// P(c,d). Misses instances where P(c,d) is only tied or where a subset
  /// of those in-neighbours suffices; kept for comparison.
  all_stronger,
};

/// Greedy in-neighbour deletion per rival (nonunique winner model).
DcdcResult solve_dcdc_nonunique(const WeightedMajorityGraph& g, CandidateIndex d, int limit,
                                DcdcStrategy strategy = DcdcStrategy::blocking);
DcdcResult solve_dcdc_nonunique(const Election& e, std::string_view d, int limit,
                                DcdcStrategy strategy = DcdcStrategy::blocking);

struct InNeighborWitness {
  std::string rival;
  std::vector<std::string> deleted;
};

/// A rival c and at most `limit` deletions, all in-neighbours u of c with
/// margin(u,c) >= P(c,d) that d reaches over edges >= P(c,d), after which
/// c beats d. Subsets are tried smallest first.
std::optional<InNeighborWitness> in_neighbor_witness(const WeightedMajorityGraph& g,
                                                     CandidateIndex d, int limit);

/// Answers a cut query; lets callers swap in another solver.
using CutOracle = std::function<CutDecision(const DiGraph&, const CutQuery&)>;
CutDecision default_cut_oracle(const DiGraph& g, const CutQuery& q);

struct CutDriverResult {
  bool decision = false;
  std::optional<std::string> rival;
  std::optional<int> threshold;
  std::vector<std::string> cut;  // candidates removed (deleted or left out)
  int queries = 0;
};

/// Schulze destructive AC+DC (nonunique) through labelled path-preserving cuts.
CutDriverResult dcac_dc_via_cut(const ControlInstance& inst,
                                const CutOracle& oracle = default_cut_oracle);

/// Schulze DCDCG / DCACG (nonunique) through coloured path-preserving cuts.
CutDriverResult group_control_via_cut(const ControlInstance& inst,
                                      const CutOracle& oracle = default_cut_oracle);

}  // namespace votecut
