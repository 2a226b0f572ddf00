#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "votecut/election.hpp"
#include "votecut/ranked_pairs.hpp"

namespace votecut {

enum class Rule { schulze, ranked_pairs };

struct RuleSpec {
  Rule rule = Rule::schulze;
  TieBreakPolicy policy;  // ranked pairs only

  static RuleSpec schulze() { return {}; }
  static RuleSpec ranked_pairs(TieBreakPolicy p = {}) {
    return {Rule::ranked_pairs, std::move(p)};
  }
  bool operator==(const RuleSpec&) const = default;
};

enum class Mode { constructive, destructive };
enum class WinnerModel { unique, nonunique };

/// Control actions. AC_DC, AV_DV and MULTIMODE combine prongs; DCG and ACG
/// delete or add whole candidate groups.
enum class ControlType { AC, DC, RC, AV, DV, RV, B, AC_DC, AV_DV, MULTIMODE, DCG, ACG };

struct Limits {
  int ac = 0;
  int dc = 0;
  int rc = 0;
  int av = 0;
  int dv = 0;
  int rv = 0;
  int b = 0;
  bool operator==(const Limits&) const = default;
};

struct ControlInstance {
  RuleSpec rule;
  Mode mode = Mode::constructive;
  WinnerModel model = WinnerModel::nonunique;
  ControlType type = ControlType::DC;
  bool exact = false;
  /// Candidates C and D together; ballots are the registered list V.
  Election election;
  /// D, a subset of election.candidates().
  std::vector<std::string> spare_candidates;
  /// U, over election's candidate indices.
  std::vector<Ballot> spare_ballots;
  std::string distinguished;
  Limits limits;
  /// Candidate -> group label (DCG, ACG).
  std::map<std::string, std::string> groups;

  /// C in index order.
  std::vector<std::string> registered_candidates() const;
  bool is_spare(std::string_view candidate) const;
  /// Throws InvalidArgument on a malformed instance.
  void validate() const;
  bool operator==(const ControlInstance&) const = default;
};

struct BribedBallot {
  bool from_spare = false;  // index into U rather than V
  int index = 0;            // expanded ballot index
  std::vector<std::string> ranking;
  bool operator==(const BribedBallot&) const = default;
};

struct ControlWitness {
  std::vector<std::string> added_candidates;
  std::vector<std::string> deleted_candidates;
  std::vector<int> deleted_ballots;  // expanded indices into V
  std::vector<int> added_ballots;    // expanded indices into U
  std::vector<BribedBallot> bribed;
  bool operator==(const ControlWitness&) const = default;
};

struct ControlResult {
  bool decision = false;
  std::optional<ControlWitness> witness;
  std::uint64_t evaluated = 0;  // elections evaluated
};

struct SolveOptions {
  bool force = false;  // ignore the search guard
};

std::string to_string(ControlType t, bool exact);
std::string to_string(Mode m);
std::string to_string(WinnerModel m);
std::string to_string(const RuleSpec& r);

/// Winner set under `rule` (a singleton for ranked pairs).
std::vector<CandidateIndex> rule_winners(const RuleSpec& rule,
                                         const WeightedMajorityGraph& g);

/// Whether the control goal holds in `e`. A distinguished candidate absent
/// from `e` counts as not winning.
bool goal_met(const RuleSpec& rule, Mode mode, WinnerModel model,
              std::string_view p, const Election& e);
bool goal_met(Mode mode, WinnerModel model, int p,
              const std::vector<CandidateIndex>& winners);

/// Upper bound on the number of elections solve_control would evaluate.
std::uint64_t estimate_search(const ControlInstance& inst);

/// Exhaustive search. Throws SearchRefused above the guard unless forced.
ControlResult solve_control(const ControlInstance& inst, const SolveOptions& opt = {});

/// The election (active candidates, resulting ballots) a witness produces.
Election apply_witness(const ControlInstance& inst, const ControlWitness& w);

/// Expanded ballot list (multiplicities unrolled).
std::vector<std::vector<CandidateIndex>> expand_ballots(const std::vector<Ballot>& ballots);

/// Padding lifts of a CCDC / DCDC instance to exact AC+DC and exact RC.
/// k padding candidates go below every ballot, then the spare candidates.
std::pair<ControlInstance, ControlInstance> lift_ccdc_to_exact(const ControlInstance& ccdc,
                                                               int l_ac);
std::pair<ControlInstance, ControlInstance> lift_dcdc_to_exact(const ControlInstance& dcdc,
                                                               int l_ac);

}  // namespace votecut
