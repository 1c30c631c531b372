#pragma once

// Parallel Muddy Children sessions sharing agents. After every question in
// one session, each newly defined muddy status is propagated to the other
// sessions containing that agent, cascading until nothing changes.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pol/muddy.hpp"

namespace pol::parallel {

struct Scenario {
  std::vector<muddy::SessionSpec> sessions;
  std::set<AgentName> muddy;

  /// Throws pol::Error for unknown ids.
  const muddy::SessionSpec& session(const std::string& id) const;
};

/// Builds per-session specs with actual bits taken from `muddy`, then
/// validates. Throws ScenarioError.
Scenario make_scenario(const std::vector<std::pair<std::string, std::vector<AgentName>>>& sessions,
                       const std::set<AgentName>& muddy);

/// Throws ScenarioError naming the first violated invariant.
void validate_scenario(const Scenario& sc);

/// An event together with the session whose log records it.
struct LogEntry {
  std::string session;
  muddy::Event event;

  bool operator==(const LogEntry&) const = default;
};

struct ParallelState {
  std::vector<muddy::SessionState> states;
  std::size_t total_asked = 0;
  std::vector<LogEntry> log;

  /// Throws pol::Error for unknown ids.
  std::size_t index_of(const std::string& id) const;
  const muddy::SessionState& session(const std::string& id) const { return states[index_of(id)]; }
  bool all_resolved() const;
};

using Schedule = std::vector<std::string>;

ParallelState build_parallel(const Scenario& sc);

/// Propagates defined statuses out of `source` to fixpoint. Returns the new
/// state and the Propagated entries (recorded in each target's log).
std::pair<ParallelState, std::vector<LogEntry>> propagate(const std::string& source, const ParallelState& p);

/// ask_question on `session`, then propagate. Throws AlreadyResolved.
ParallelState apply_action(const ParallelState& p, const std::string& session);

struct RunResult {
  ParallelState state;
  std::vector<LogEntry> trace;
};

RunResult run_schedule(const Scenario& sc, const Schedule& schedule);

/// Questions each session needs on its own, in scenario order.
std::vector<std::size_t> sequential_counts(const Scenario& sc);
std::size_t sequential_total(const Scenario& sc);

struct SearchResult {
  std::size_t count = 0;
  Schedule witness;
  std::size_t states_explored = 0;
};

/// Breadth-first search for the fewest questions resolving every session.
/// Throws BoundExceeded if none exists within `bound` questions.
SearchResult search_min_schedule(const Scenario& sc, std::size_t bound);

/// For every agent: a status defined in one session is defined and equal in
/// all sessions containing the agent.
bool statuses_consistent(const ParallelState& p);

/// Canonical text of everything that determines future behaviour (world sets,
/// question counters, declaration flags) plus the running total.
std::string fingerprint(const ParallelState& p);

}  // namespace pol::parallel
