#include "pol/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <functional>
#include <unordered_set>

#include "pol/errors.hpp"

namespace pol::parallel {

const muddy::SessionSpec& Scenario::session(const std::string& id) const {
  for (const auto& s : sessions)
    if (s.id == id) return s;
  throw Error("unknown session '" + id + "'");
}

Scenario make_scenario(const std::vector<std::pair<std::string, std::vector<AgentName>>>& sessions,
                       const std::set<AgentName>& muddy) {
  Scenario sc;
  sc.muddy = muddy;
  for (const auto& [id, agents] : sessions) sc.sessions.push_back(muddy::make_spec(id, agents, muddy));
  validate_scenario(sc);
  return sc;
}

void validate_scenario(const Scenario& sc) {
  if (sc.sessions.empty()) throw ScenarioError("scenario has no sessions");
  std::set<std::string> ids;
  std::set<AgentName> agents;
  for (const auto& s : sc.sessions) {
    if (!ids.insert(s.id).second) throw ScenarioError("duplicate session id " + s.id);
    for (const auto& a : s.agents) agents.insert(a);
  }
  for (const auto& a : sc.muddy)
    if (!agents.contains(a)) throw ScenarioError("muddy agent " + a + " is in no session");
  for (const auto& s : sc.sessions) {
    for (const auto& a : s.agents) {
      auto it = s.actual.find(a);
      if (it != s.actual.end() && it->second != sc.muddy.contains(a))
        throw ScenarioError("session " + s.id + " disagrees with the scenario on agent " + a);
    }
    muddy::validate_spec(s);
  }
}

std::size_t ParallelState::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].spec.id == id) return i;
  throw Error("unknown session '" + id + "'");
}

bool ParallelState::all_resolved() const {
  return std::all_of(states.begin(), states.end(), [](const auto& s) { return muddy::is_resolved(s); });
}

ParallelState build_parallel(const Scenario& sc) {
  validate_scenario(sc);
  ParallelState p;
  for (const auto& spec : sc.sessions) p.states.push_back(muddy::build_session(spec));
  return p;
}

std::pair<ParallelState, std::vector<LogEntry>> propagate(const std::string& source, const ParallelState& p) {
  ParallelState out = p;
  std::vector<LogEntry> entries;
  const std::size_t origin = out.index_of(source);
  std::deque<std::size_t> work{origin};
  std::vector<bool> queued(out.states.size(), false);
  queued[origin] = true;

  while (!work.empty()) {
    const std::size_t si = work.front();
    work.pop_front();
    queued[si] = false;
    const muddy::SessionState& src = out.states[si];

    std::map<AgentName, muddy::Status> defined;
    for (const auto& a : src.spec.agents) {
      muddy::Status s = muddy::muddy_status(src, a);
      if (s != muddy::Status::Undefined) defined.emplace(a, s);
    }
    if (defined.empty()) continue;
    const std::string src_id = src.spec.id;
    const std::size_t src_asked = src.asked;

    for (std::size_t ti = 0; ti < out.states.size(); ++ti) {
      if (ti == si) continue;
      muddy::SessionState& target = out.states[ti];
      std::set<muddy::BitWorld> drop;
      for (const auto& [agent, status] : defined) {
        if (!target.spec.has_agent(agent)) continue;
        const bool bit = status == muddy::Status::Muddy;
        for (const auto& v : target.worlds())
          if (muddy::muddy_at(agent, v, target.spec) != bit) drop.insert(v);
      }
      if (drop.empty()) continue;
      muddy::Event e{muddy::Event::Kind::Propagated, src_asked, muddy::remove_worlds(target, drop), {}, {}, src_id};
      target.log.push_back(e);
      entries.push_back({target.spec.id, std::move(e)});
      if (!queued[ti]) {
        queued[ti] = true;
        work.push_back(ti);
      }
    }
  }
  out.log.insert(out.log.end(), entries.begin(), entries.end());
  return {std::move(out), std::move(entries)};
}

ParallelState apply_action(const ParallelState& p, const std::string& session) {
  const std::size_t i = p.index_of(session);
  auto [asked, events] = muddy::ask_question(p.states[i]);
  ParallelState next = p;
  next.states[i] = std::move(asked);
  ++next.total_asked;
  for (auto& e : events) next.log.push_back({session, std::move(e)});
  return propagate(session, next).first;
}

RunResult run_schedule(const Scenario& sc, const Schedule& schedule) {
  ParallelState p = build_parallel(sc);
  for (const auto& id : schedule) p = apply_action(p, id);
  std::vector<LogEntry> trace = p.log;
  return {std::move(p), std::move(trace)};
}

std::vector<std::size_t> sequential_counts(const Scenario& sc) {
  validate_scenario(sc);
  std::vector<std::size_t> out;
  for (const auto& spec : sc.sessions) out.push_back(muddy::questions_to_resolve(spec));
  return out;
}

std::size_t sequential_total(const Scenario& sc) {
  std::size_t total = 0;
  for (std::size_t n : sequential_counts(sc)) total += n;
  return total;
}

std::string fingerprint(const ParallelState& p) {
  std::string out;
  for (const auto& s : p.states) {
    out += s.spec.id;
    out += ':';
    out += std::to_string(s.asked);
    out += s.has_declaration() ? 'D' : '-';
    for (const auto& w : s.worlds()) {
      out += ' ';
      out += muddy::to_string(w);
    }
    out += '|';
  }
  out += "total=" + std::to_string(p.total_asked);
  return out;
}

namespace {

// Search key: fingerprint without the running total (BFS levels already fix it).
std::string search_key(const ParallelState& p) {
  std::string key = fingerprint(p);
  return key.substr(0, key.rfind("total="));
}

}  // namespace

SearchResult search_min_schedule(const Scenario& sc, std::size_t bound) {
  struct Node {
    ParallelState state;
    Schedule schedule;
  };
  SearchResult result;
  ParallelState start = build_parallel(sc);
  if (start.all_resolved()) return result;

  std::unordered_set<std::string> visited{search_key(start)};
  std::vector<Node> frontier{{std::move(start), {}}};
  for (std::size_t depth = 1; depth <= bound && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (const auto& s : node.state.states) {
        if (muddy::is_resolved(s)) continue;
        ParallelState succ = apply_action(node.state, s.spec.id);
        ++result.states_explored;
        if (!visited.insert(search_key(succ)).second) continue;
        Schedule sched = node.schedule;
        sched.push_back(s.spec.id);
        if (succ.all_resolved()) {
          result.count = depth;
          result.witness = std::move(sched);
          return result;
        }
        next.push_back({std::move(succ), std::move(sched)});
      }
    }
    frontier = std::move(next);
  }
  throw BoundExceeded("no resolving schedule within " + std::to_string(bound) + " questions");
}

bool statuses_consistent(const ParallelState& p) {
  std::map<AgentName, std::vector<muddy::Status>> by_agent;
  for (const auto& s : p.states)
    for (const auto& a : s.spec.agents) by_agent[a].push_back(muddy::muddy_status(s, a));
  for (const auto& [agent, statuses] : by_agent) {
    const bool any_defined = std::any_of(statuses.begin(), statuses.end(),
                                         [](muddy::Status s) { return s != muddy::Status::Undefined; });
    if (!any_defined) continue;
    if (std::adjacent_find(statuses.begin(), statuses.end(), std::not_equal_to<>()) != statuses.end())
      return false;
  }
  return true;
}

}  // namespace pol::parallel
