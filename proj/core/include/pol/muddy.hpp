#pragma once

// Muddy Children sessions over bit-vector worlds.
//
// A session's expectation model assigns QF^k to a world with k muddy agents,
// so observing <QF>^i leaves exactly the worlds with at least i muddy agents.
// The question protocol itself (ask_question) is operational: announcement at
// the first question, declarations by agents who already knew, and a
// "nobody knows" elimination otherwise.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pol/epistemic_model.hpp"
#include "pol/formula.hpp"
#include "pol/obs_expr.hpp"

namespace pol::muddy {

/// Largest supported session size.
inline constexpr std::size_t kMaxAgents = 20;

/// One bit per session agent, in the session's agent order.
struct BitWorld {
  std::uint32_t bits = 0;
  std::size_t width = 0;

  bool bit(std::size_t pos) const { return ((bits >> pos) & 1u) != 0; }
  std::size_t ones() const;
  WorldId id() const { return WorldId{bits}; }

  static BitWorld from_id(WorldId id, std::size_t width) {
    return BitWorld{static_cast<std::uint32_t>(id.value), width};
  }
  /// "011" -> agents 0,1,2 = 0,1,1. Throws pol::Error.
  static BitWorld parse(std::string_view text);

  auto operator<=>(const BitWorld&) const = default;
  bool operator==(const BitWorld&) const = default;
};

/// Bit string in agent order, e.g. "011".
std::string to_string(const BitWorld& w);

/// The father's question.
ActionSymbol question_symbol();

/// Name of the atom "agent is muddy".
std::string muddy_atom(const AgentName& agent);

struct SessionSpec {
  std::string id;
  std::vector<AgentName> agents;
  std::map<AgentName, bool> actual;

  /// Throws UnknownAgent.
  std::size_t position(const AgentName& agent) const;
  bool has_agent(const AgentName& agent) const;
  BitWorld actual_world() const;
  std::size_t muddy_count() const;
};

/// Spec whose actual assignment marks exactly `muddy` (restricted to agents).
SessionSpec make_spec(std::string id, std::vector<AgentName> agents, const std::set<AgentName>& muddy);

/// Throws ScenarioError naming the first violated invariant.
void validate_spec(const SessionSpec& spec);

struct Event {
  enum class Kind { Announce, Declare, NobodyKnows, Propagated };

  Kind kind;
  std::size_t question_index = 0;
  std::vector<BitWorld> removed;
  std::optional<AgentName> declarer;       // Declare
  std::optional<BitWorld> declared_world;  // Declare
  std::optional<std::string> from_session; // Propagated

  bool operator==(const Event&) const = default;
};

std::string to_string(Event::Kind kind);

struct SessionState {
  SessionSpec spec;
  ExpectationModel model;
  std::size_t asked = 0;
  std::vector<Event> log;

  std::vector<BitWorld> worlds() const;
  bool contains(const BitWorld& w) const { return model.worlds().contains(w.id()); }
  /// Whether some agent has declared in this session.
  bool has_declaration() const;
};

SessionState build_session(const SessionSpec& spec);

/// Throws UnknownAgent.
bool muddy_at(const AgentName& agent, const BitWorld& w, const SessionSpec& spec);

enum class Status { Clean, Muddy, Undefined };

std::string to_string(Status s);

/// Clean/Muddy when every surviving world agrees on the agent's bit.
Status muddy_status(const SessionState& state, const AgentName& agent);

/// Whether `agent` knows its own bit at `w`, i.e. K(a, m_a) | K(a, !m_a)
/// holds there. Throws WorldNotFound, UnknownAgent.
bool agent_knows_own(const SessionState& state, const AgentName& agent, const BitWorld& w);

/// The worlds with at least i muddy agents (all worlds for i = 0).
std::set<BitWorld> counting_worlds(const SessionSpec& spec, std::size_t i);

/// One father's question. Throws AlreadyResolved.
std::pair<SessionState, std::vector<Event>> ask_question(const SessionState& state);

/// Every agent knows its own status at the actual world and that knowledge
/// has been declared in the session.
bool is_resolved(const SessionState& state);

/// Knowledge half of is_resolved.
bool everyone_knows(const SessionState& state);

/// Asks until resolved. Throws NonTermination past |agents| + 2 questions.
std::size_t questions_to_resolve(const SessionSpec& spec);

/// Removes worlds (used for cross-session propagation). Returns those removed.
std::vector<BitWorld> remove_worlds(SessionState& state, const std::set<BitWorld>& drop);

/// Formula truth where each father's question in a box program (`QF` or
/// `QF@<session id>`) is executed as ask_question on the session; other symbols,
/// and questions to a resolved session, are not executable. Throws
/// WorldNotFound, UnknownAtom, UnknownAgent, BoundExceeded.
bool eval_protocol(const SessionState& state, const BitWorld& w, const Formula& f,
                   std::size_t max_questions = 32);

/// eval_protocol at every world of the session model.
bool valid_protocol(const SessionState& state, const Formula& f, std::size_t max_questions = 32);

}  // namespace pol::muddy
