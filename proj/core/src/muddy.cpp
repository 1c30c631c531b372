#include "pol/muddy.hpp"

#include <algorithm>
#include <bit>

#include "pol/errors.hpp"
#include "pol/eval.hpp"

namespace pol::muddy {

std::size_t BitWorld::ones() const { return static_cast<std::size_t>(std::popcount(bits)); }

BitWorld BitWorld::parse(std::string_view text) {
  if (text.size() > kMaxAgents) throw Error("world '" + std::string(text) + "' is too wide");
  BitWorld w{0, text.size()};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      w.bits |= 1u << i;
    else if (text[i] != '0')
      throw Error("world '" + std::string(text) + "' is not a bit string");
  }
  return w;
}

std::string to_string(const BitWorld& w) {
  std::string out(w.width, '0');
  for (std::size_t i = 0; i < w.width; ++i)
    if (w.bit(i)) out[i] = '1';
  return out;
}

ActionSymbol question_symbol() { return ActionSymbol{"QF", std::nullopt}; }

std::string muddy_atom(const AgentName& agent) { return "m_" + agent; }

// --- specs --------------------------------------------------------------------

std::size_t SessionSpec::position(const AgentName& agent) const {
  auto it = std::find(agents.begin(), agents.end(), agent);
  if (it == agents.end()) throw UnknownAgent("agent '" + agent + "' not in session " + id);
  return static_cast<std::size_t>(it - agents.begin());
}

bool SessionSpec::has_agent(const AgentName& agent) const {
  return std::find(agents.begin(), agents.end(), agent) != agents.end();
}

BitWorld SessionSpec::actual_world() const {
  BitWorld w{0, agents.size()};
  for (std::size_t i = 0; i < agents.size(); ++i) {
    auto it = actual.find(agents[i]);
    if (it != actual.end() && it->second) w.bits |= 1u << i;
  }
  return w;
}

std::size_t SessionSpec::muddy_count() const { return actual_world().ones(); }

SessionSpec make_spec(std::string id, std::vector<AgentName> agents, const std::set<AgentName>& muddy) {
  SessionSpec spec{std::move(id), std::move(agents), {}};
  for (const auto& a : spec.agents) spec.actual[a] = muddy.contains(a);
  return spec;
}

void validate_spec(const SessionSpec& spec) {
  if (!is_token(spec.id)) throw ScenarioError("invalid session id '" + spec.id + "'");
  if (spec.agents.empty()) throw ScenarioError("session " + spec.id + " has no agents");
  if (spec.agents.size() > kMaxAgents)
    throw ScenarioError("session " + spec.id + " has more than " + std::to_string(kMaxAgents) + " agents");
  std::set<AgentName> seen;
  for (const auto& a : spec.agents) {
    if (!is_token(a)) throw ScenarioError("invalid agent name '" + a + "'");
    if (!seen.insert(a).second) throw ScenarioError("duplicate agent " + a + " in session " + spec.id);
    if (!spec.actual.contains(a)) throw ScenarioError("no actual bit for agent " + a + " in session " + spec.id);
  }
  for (const auto& [a, bit] : spec.actual)
    if (!seen.contains(a)) throw ScenarioError("actual bit for agent " + a + " outside session " + spec.id);
  if (spec.muddy_count() == 0)
    throw ScenarioError("FalseAnnouncement(" + spec.id + "): no muddy agent in session");
}

std::string to_string(Event::Kind kind) {
  switch (kind) {
    case Event::Kind::Announce:
      return "announce";
    case Event::Kind::Declare:
      return "declare";
    case Event::Kind::NobodyKnows:
      return "nobody_knows";
    case Event::Kind::Propagated:
      return "propagated";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Clean:
      return "0";
    case Status::Muddy:
      return "1";
    case Status::Undefined:
      return "undefined";
  }
  return "?";
}

// --- sessions -------------------------------------------------------------------

std::vector<BitWorld> SessionState::worlds() const {
  std::vector<BitWorld> out;
  out.reserve(model.worlds().size());
  for (WorldId id : model.worlds()) out.push_back(BitWorld::from_id(id, spec.agents.size()));
  return out;
}

bool SessionState::has_declaration() const {
  return std::any_of(log.begin(), log.end(), [](const Event& e) { return e.kind == Event::Kind::Declare; });
}

SessionState build_session(const SessionSpec& spec) {
  validate_spec(spec);
  const std::size_t k = spec.agents.size();
  const std::uint32_t count = 1u << k;
  const ObsExpr qf = ObsExpr::atom(question_symbol());

  SessionState state;
  state.spec = spec;
  EpistemicModel& skel = state.model.skeleton;
  for (std::uint32_t bits = 0; bits < count; ++bits) skel.worlds.insert(WorldId{bits});
  for (std::size_t pos = 0; pos < k; ++pos) {
    const AgentName& agent = spec.agents[pos];
    Relation& rel = skel.relations[agent];
    WorldSet& muddy = skel.valuation[muddy_atom(agent)];
    for (std::uint32_t bits = 0; bits < count; ++bits) {
      // Agent cannot see its own bit: w is indistinguishable from its twin.
      rel.insert({WorldId{bits}, WorldId{bits}});
      rel.insert({WorldId{bits}, WorldId{bits ^ (1u << pos)}});
      if ((bits >> pos) & 1u) muddy.insert(WorldId{bits});
    }
  }
  for (std::uint32_t bits = 0; bits < count; ++bits)
    state.model.exp.emplace(WorldId{bits},
                            canonicalize(ObsExpr::power(qf, static_cast<std::size_t>(std::popcount(bits)))));
  return state;
}

bool muddy_at(const AgentName& agent, const BitWorld& w, const SessionSpec& spec) {
  return w.bit(spec.position(agent));
}

Status muddy_status(const SessionState& state, const AgentName& agent) {
  const std::size_t pos = state.spec.position(agent);
  bool any0 = false;
  bool any1 = false;
  for (WorldId id : state.model.worlds()) {
    if ((id.value >> pos) & 1u)
      any1 = true;
    else
      any0 = true;
  }
  if (any0 && !any1) return Status::Clean;
  if (any1 && !any0) return Status::Muddy;
  return Status::Undefined;
}

namespace {

Formula knows_own_formula(const AgentName& agent) {
  Formula m = Formula::atom(muddy_atom(agent));
  return Formula::disj(Formula::knows(agent, m), Formula::knows(agent, Formula::negation(m)));
}

}  // namespace

bool agent_knows_own(const SessionState& state, const AgentName& agent, const BitWorld& w) {
  state.spec.position(agent);
  return eval(state.model, w.id(), knows_own_formula(agent));
}

std::set<BitWorld> counting_worlds(const SessionSpec& spec, std::size_t i) {
  const std::size_t k = spec.agents.size();
  std::set<BitWorld> out;
  for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
    BitWorld w{bits, k};
    if (w.ones() >= i) out.insert(w);
  }
  return out;
}

std::vector<BitWorld> remove_worlds(SessionState& state, const std::set<BitWorld>& drop) {
  std::vector<BitWorld> removed;
  WorldSet keep;
  for (const BitWorld& w : state.worlds()) {
    if (drop.contains(w))
      removed.push_back(w);
    else
      keep.insert(w.id());
  }
  if (!removed.empty()) state.model = state.model.restricted_to(keep);
  return removed;
}

std::pair<SessionState, std::vector<Event>> ask_question(const SessionState& state) {
  if (is_resolved(state)) throw AlreadyResolved("session " + state.spec.id + " is already resolved");

  SessionState next = state;
  const std::size_t i = ++next.asked;
  const BitWorld actual = state.spec.actual_world();
  const std::size_t k = state.spec.agents.size();
  std::vector<Event> events;

  std::vector<AgentName> knowers;
  for (const auto& agent : state.spec.agents)
    if (agent_knows_own(state, agent, actual)) knowers.push_back(agent);

  if (i == 1) {
    Event e{Event::Kind::Announce, i, {}, {}, {}, {}};
    e.removed = remove_worlds(next, {BitWorld{0, k}});
    events.push_back(std::move(e));
  }

  if (!knowers.empty()) {
    std::set<BitWorld> others;
    for (const BitWorld& w : next.worlds())
      if (w != actual) others.insert(w);
    std::vector<BitWorld> removed = remove_worlds(next, others);
    for (const auto& agent : knowers) {
      events.push_back(Event{Event::Kind::Declare, i, std::move(removed), agent, actual, {}});
      removed.clear();
    }
  } else if (i >= 2) {
    std::set<BitWorld> drop;
    for (const BitWorld& v : next.worlds()) {
      for (const auto& agent : next.spec.agents) {
        if (agent_knows_own(next, agent, v)) {
          drop.insert(v);
          break;
        }
      }
    }
    events.push_back(Event{Event::Kind::NobodyKnows, i, remove_worlds(next, drop), {}, {}, {}});
  }

  next.log.insert(next.log.end(), events.begin(), events.end());
  return {std::move(next), std::move(events)};
}

bool everyone_knows(const SessionState& state) {
  const BitWorld actual = state.spec.actual_world();
  if (!state.contains(actual)) return false;
  return std::all_of(state.spec.agents.begin(), state.spec.agents.end(),
                     [&](const AgentName& a) { return agent_knows_own(state, a, actual); });
}

bool is_resolved(const SessionState& state) { return state.has_declaration() && everyone_knows(state); }

std::size_t questions_to_resolve(const SessionSpec& spec) {
  SessionState state = build_session(spec);
  const std::size_t cap = spec.agents.size() + 2;
  while (!is_resolved(state)) {
    if (state.asked >= cap)
      throw NonTermination("session " + spec.id + " unresolved after " + std::to_string(cap) + " questions");
    state = ask_question(state).first;
  }
  return state.asked;
}

// --- protocol semantics -------------------------------------------------------------

namespace {

class ProtocolEvaluator {
 public:
  explicit ProtocolEvaluator(std::size_t max_questions) : max_questions_(max_questions) {}

  bool holds(const SessionState& st, WorldId w, const Formula& f) {
    const EpistemicModel& m = st.model.skeleton;
    switch (f.kind()) {
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Atom: {
        auto it = m.valuation.find(f.name());
        if (it == m.valuation.end()) throw UnknownAtom("unknown atom '" + f.name() + "'");
        return it->second.contains(w);
      }
      case Formula::Kind::Not:
        return !holds(st, w, f.operand());
      case Formula::Kind::And:
        return holds(st, w, f.left()) && holds(st, w, f.right());
      case Formula::Kind::Or:
        return holds(st, w, f.left()) || holds(st, w, f.right());
      case Formula::Kind::Knows:
        for (WorldId v : m.successors(f.name(), w))
          if (!holds(st, v, f.operand())) return false;
        return true;
      case Formula::Kind::Box:
        return box(st, w, f.program(), f.operand());
    }
    return false;
  }

 private:
  bool executable(const SessionState& st, const ActionSymbol& sym) const {
    if (sym.name != question_symbol().name) return false;
    if (sym.session_tag && *sym.session_tag != st.spec.id) return false;
    return true;
  }

  // The session run is deterministic, so the state after n questions is
  // identified by n; the search space is (residual program, questions asked).
  bool box(const SessionState& st, WorldId w, const ObsExpr& program, const Formula& body) {
    struct Frame {
      ObsExpr program;
      SessionState state;
      std::size_t depth;
    };
    ObsExpr prog = canonicalize(program);
    const Alphabet sigma = symbols_of(prog);
    std::set<std::pair<ObsExpr, std::size_t>> visited{{prog, st.asked}};
    std::vector<Frame> stack{{prog, st, 0}};
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (!frame.state.model.worlds().contains(w)) continue;
      if (frame.program.nullable() && !holds(frame.state, w, body)) return false;
      if (is_resolved(frame.state)) continue;
      std::optional<SessionState> after;
      for (const auto& sym : sigma) {
        if (!executable(frame.state, sym)) continue;
        ObsExpr next_prog = derivative(frame.program, sym);
        if (is_empty_language(next_prog)) continue;
        if (!visited.insert({next_prog, frame.state.asked + 1}).second) continue;
        if (frame.depth + 1 > max_questions_)
          throw BoundExceeded("protocol box exceeded " + std::to_string(max_questions_) + " questions");
        if (!after) after = ask_question(frame.state).first;
        stack.push_back({std::move(next_prog), *after, frame.depth + 1});
      }
    }
    return true;
  }

  std::size_t max_questions_;
};

}  // namespace

bool eval_protocol(const SessionState& state, const BitWorld& w, const Formula& f, std::size_t max_questions) {
  if (!state.contains(w)) throw WorldNotFound("world " + to_string(w) + " not in session " + state.spec.id);
  return ProtocolEvaluator(max_questions).holds(state, w.id(), f);
}

bool valid_protocol(const SessionState& state, const Formula& f, std::size_t max_questions) {
  for (const BitWorld& w : state.worlds())
    if (!eval_protocol(state, w, f, max_questions)) return false;
  return true;
}

}  // namespace pol::muddy
