#include "repl.hpp"

#include <iostream>
#include <sstream>

#include "pol/errors.hpp"
#include "trace.hpp"

namespace polwb {

namespace par = pol::parallel;
namespace md = pol::muddy;

namespace {

const char* kHelp =
    "commands:\n"
    "  ask <session>             ask the father's question in a session\n"
    "  show [session]            worlds, statuses and question count\n"
    "  knows <agent>             the agent's status in every session\n"
    "  eval <session> <formula>  evaluate on the current session model (protocol boxes)\n"
    "  undo | reset | help | quit\n";

bool has_session(const par::ParallelState& p, const std::string& id) {
  for (const auto& s : p.states)
    if (s.spec.id == id) return true;
  return false;
}

}  // namespace

Repl::Repl(par::Scenario scenario) : scenario_(std::move(scenario)), state_(par::build_parallel(scenario_)) {}

std::string Repl::execute(const std::string& line) {
  std::istringstream in(line);
  std::string cmd;
  if (!(in >> cmd)) return "";
  std::string arg;
  in >> arg;
  std::string rest;
  std::getline(in, rest);

  try {
    if (cmd == "quit" || cmd == "exit") {
      done_ = true;
      return "";
    }
    if (cmd == "help") return kHelp;
    if (cmd == "ask") {
      if (arg.empty()) return "usage: ask <session>\n";
      return ask(arg);
    }
    if (cmd == "show") return show(arg);
    if (cmd == "knows") {
      if (arg.empty()) return "usage: knows <agent>\n";
      return knows(arg);
    }
    if (cmd == "eval") {
      if (arg.empty() || rest.find_first_not_of(' ') == std::string::npos)
        return "usage: eval <session> <formula>\n";
      return eval(arg, rest);
    }
    if (cmd == "undo") {
      if (history_.empty()) return "nothing to undo\n";
      state_ = std::move(history_.back());
      history_.pop_back();
      return "undone; total=" + std::to_string(state_.total_asked) + "\n";
    }
    if (cmd == "reset") {
      history_.push_back(state_);
      state_ = par::build_parallel(scenario_);
      return "reset\n";
    }
    return "unknown command '" + cmd + "' (try help)\n";
  } catch (const std::exception& e) {
    return std::string("error: ") + e.what() + "\n";
  }
}

std::string Repl::ask(const std::string& session) {
  if (!has_session(state_, session)) return "unknown session " + session + "\n";
  par::ParallelState next = par::apply_action(state_, session);
  std::vector<par::LogEntry> fresh(next.log.begin() + static_cast<std::ptrdiff_t>(state_.log.size()),
                                   next.log.end());
  history_.push_back(std::move(state_));
  state_ = std::move(next);

  Trace t;
  for (const auto& e : fresh) t.records.push_back(to_record(e));
  std::string text = to_text(t);
  // Keep only the event lines; the summary is printed below.
  text = text.substr(0, text.find("per_session"));
  if (state_.all_resolved())
    text += "all sessions resolved total=" + std::to_string(state_.total_asked) + "\n";
  else
    text += "total=" + std::to_string(state_.total_asked) + "\n";
  return text;
}

std::string Repl::show(const std::string& session) const {
  std::ostringstream out;
  for (const auto& s : state_.states) {
    if (!session.empty() && s.spec.id != session) continue;
    out << s.spec.id << " asked=" << s.asked << " worlds={";
    bool first = true;
    for (const auto& w : s.worlds()) {
      out << (first ? "" : ",") << md::to_string(w);
      first = false;
    }
    out << "} statuses";
    for (const auto& a : s.spec.agents) out << " " << a << "=" << md::to_string(md::muddy_status(s, a));
    out << " resolved=" << (md::is_resolved(s) ? "true" : "false") << "\n";
  }
  if (!session.empty() && out.str().empty()) return "unknown session " + session + "\n";
  return out.str();
}

std::string Repl::knows(const std::string& agent) const {
  std::ostringstream out;
  for (const auto& s : state_.states)
    if (s.spec.has_agent(agent)) out << s.spec.id << ": " << md::to_string(md::muddy_status(s, agent)) << "\n";
  if (out.str().empty()) return "unknown agent " + agent + "\n";
  return out.str();
}

std::string Repl::eval(const std::string& session, const std::string& formula) const {
  if (!has_session(state_, session)) return "unknown session " + session + "\n";
  const pol::Formula f = pol::parse_formula(formula);
  return md::valid_protocol(state_.session(session), f) ? "true\n" : "false\n";
}

void Repl::run(std::istream& in, std::ostream& out, bool prompt) {
  if (prompt) out << kHelp;
  std::string line;
  while (!done_) {
    if (prompt) out << "pol> " << std::flush;
    if (!std::getline(in, line)) break;
    out << execute(line);
  }
}

}  // namespace polwb
