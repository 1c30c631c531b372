#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pol/obs_expr.hpp"

namespace pol {

using AgentName = std::string;
using AtomName = std::string;

/// Opaque world identifier.
struct WorldId {
  std::uint64_t value = 0;

  auto operator<=>(const WorldId&) const = default;
  bool operator==(const WorldId&) const = default;
};

using WorldSet = std::set<WorldId>;
using Relation = std::set<std::pair<WorldId, WorldId>>;

/// Kripke structure: worlds, one accessibility relation per agent, valuation.
struct EpistemicModel {
  WorldSet worlds;
  std::map<AgentName, Relation> relations;
  std::map<AtomName, WorldSet> valuation;

  /// Worlds v with (w, v) in R_agent. Throws UnknownAgent.
  std::vector<WorldId> successors(const AgentName& agent, WorldId w) const;

  /// Keeps only `keep` (intersected with the current worlds); relation and
  /// valuation domains are preserved even when their extensions become empty.
  EpistemicModel restricted_to(const WorldSet& keep) const;

  bool operator==(const EpistemicModel&) const = default;
};

/// Epistemic model plus an expected-observation expression per world.
struct ExpectationModel {
  EpistemicModel skeleton;
  std::map<WorldId, ObsExpr> exp;

  const WorldSet& worlds() const { return skeleton.worlds; }
  /// Throws WorldNotFound.
  const ObsExpr& expectation(WorldId w) const;

  ExpectationModel restricted_to(const WorldSet& keep) const;
};

/// Residuates every expectation by `symbol` and drops worlds whose residual
/// language is empty. The result may have no worlds.
ExpectationModel observe_symbol(const ExpectationModel& m, const ActionSymbol& symbol);

/// The model updated by an observed word. Throws EmptyModel when no world
/// survives.
ExpectationModel update_by_observation(const ExpectationModel& m, const ObsWord& word);

/// True iff both models have the same worlds, relations and valuation, and
/// language-equal expectations at every world.
bool equivalent_models(const ExpectationModel& a, const ExpectationModel& b);

enum class ViolationKind {
  NonEmptiness,         // exp(w) has the empty language
  MissingExpectation,   // world without exp
  DanglingWorld,        // relation/valuation/exp mentions an unknown world
  Equivalence,          // S5 requested and R_a is not an equivalence relation
};

struct Violation {
  ViolationKind kind;
  std::string subject;  // world id or agent name
  std::string detail;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_model(const ExpectationModel& m, bool s5);

std::string to_string(ViolationKind kind);

}  // namespace pol
