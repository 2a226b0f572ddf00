#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "votecut/control.hpp"
#include "votecut/election.hpp"

namespace votecut {

/// CNF with exactly three literals per clause. Literals are DIMACS integers
/// (+v for x_v, -v for its negation, 1 <= v <= variables).
struct ThreeSatInstance {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;
  bool operator==(const ThreeSatInstance&) const = default;
};

/// DIMACS-style `p cnf V C` header, then one clause per line ending in 0.
/// Lines starting with `c` are comments.
ThreeSatInstance parse_cnf(std::string_view text);
std::string serialize_cnf(const ThreeSatInstance& f);
/// Throws InvalidArgument if a literal is out of range or there are no clauses.
void validate_cnf(const ThreeSatInstance& f);

/// Base set of 3s elements and 3s triples, each element in exactly three.
struct Rx3cInstance {
  std::vector<std::string> base;
  std::vector<std::array<std::string, 3>> triples;
  bool operator==(const Rx3cInstance&) const = default;
};

/// `base: b1 b2 b3` then one `triple: x y z` line per set.
Rx3cInstance parse_rx3c(std::string_view text);
std::string serialize_rx3c(const Rx3cInstance& inst);

/// First violated condition, or nullopt for a well-formed instance.
std::optional<std::string> rx3c_violation(const Rx3cInstance& inst);
bool validate_rx3c(const Rx3cInstance& inst);

enum class SatVariant { flawed_original, fixed_nonunique, fixed_unique };
std::string to_string(SatVariant v);
SatVariant parse_sat_variant(std::string_view token);

struct ReductionArtifact {
  std::string variant;
  /// Labelled control instances, e.g. {"ccdc", ...} or {"E_AV_DV-constructive", ...}.
  std::vector<std::pair<std::string, ControlInstance>> instances;
  std::map<std::string, std::string> roles;  // candidate -> role
  std::map<std::string, std::int64_t> constants;
  /// Margins the registered election is built to realize.
  WeightedMajorityGraph target;

  const ControlInstance& instance(std::string_view label) const;
  /// Plain key=value lines.
  std::string provenance() const;
};

/// Candidate-deletion construction from a 3-CNF. The emitted instance is
/// constructive DC with limit k = #clauses, nonunique for flawed_original and
/// fixed_nonunique, unique for fixed_unique.
ReductionArtifact threesat_to_ccdc(const ThreeSatInstance& f, SatVariant variant);

/// Voter-control construction from RX3C. Emits E_AV_DV and RV instances,
/// constructive for p and destructive for w. `model` is the winner model of
/// the constructive instances; the destructive ones use the other model.
ReductionArtifact rx3c_to_schulze_voter(const Rx3cInstance& inst, WinnerModel model);

/// Same for ranked pairs with p favoured in ties; B is made acyclic by large
/// margins b_i -> b_j for i < j.
ReductionArtifact rx3c_to_rankedpairs_voter(const Rx3cInstance& inst, WinnerModel model);

/// Names used by the constructions.
std::string clause_candidate(int clause, int copy, int clauses);
std::string literal_candidate(int clause, int position, int clauses);
std::string base_candidate(int element, int elements);

}  // namespace votecut
