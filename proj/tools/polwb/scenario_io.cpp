#include "scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "pol/errors.hpp"

namespace polwb {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

pol::parallel::Scenario parse_scenario(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<pol::AgentName>>> sessions;
  std::vector<std::size_t> session_lines;
  std::vector<pol::AgentName> muddy;
  std::size_t muddy_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw pol::ParseError(at_line(line_no) + "expected ':'", 0, line_no);
    std::vector<std::string> head = split_ws(std::string_view(line).substr(0, colon));
    std::vector<std::string> body = split_ws(std::string_view(line).substr(colon + 1));
    for (const auto& tok : body)
      if (!pol::is_token(tok))
        throw pol::ParseError(at_line(line_no) + "invalid name '" + tok + "'", 0, line_no);

    if (head.size() == 2 && head[0] == "session") {
      if (!pol::is_token(head[1]))
        throw pol::ParseError(at_line(line_no) + "invalid session id '" + head[1] + "'", 0, line_no);
      for (std::size_t i = 0; i < sessions.size(); ++i)
        if (sessions[i].first == head[1])
          throw pol::ScenarioError(at_line(line_no) + "duplicate session id " + head[1]);
      if (body.empty()) throw pol::ScenarioError(at_line(line_no) + "session " + head[1] + " has no agents");
      std::set<std::string> seen;
      for (const auto& a : body)
        if (!seen.insert(a).second)
          throw pol::ScenarioError(at_line(line_no) + "duplicate agent " + a + " in session " + head[1]);
      sessions.emplace_back(head[1], body);
      session_lines.push_back(line_no);
    } else if (head.size() == 1 && head[0] == "muddy") {
      if (muddy_line != 0) throw pol::ScenarioError(at_line(line_no) + "second muddy line");
      muddy = body;
      muddy_line = line_no;
    } else {
      throw pol::ParseError(at_line(line_no) + "expected 'session <id>:' or 'muddy:'", 0, line_no);
    }
  }

  if (sessions.empty()) throw pol::ScenarioError("scenario has no sessions");
  if (muddy_line == 0) throw pol::ScenarioError("missing 'muddy:' line");

  std::set<pol::AgentName> known;
  for (const auto& [id, agents] : sessions) known.insert(agents.begin(), agents.end());
  std::set<pol::AgentName> muddy_set;
  for (const auto& a : muddy) {
    if (!known.contains(a))
      throw pol::ScenarioError(at_line(muddy_line) + "unknown agent " + a + " in muddy list");
    muddy_set.insert(a);
  }
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const auto& agents = sessions[i].second;
    const bool any = std::any_of(agents.begin(), agents.end(), [&](const auto& a) { return muddy_set.contains(a); });
    if (!any)
      throw pol::ScenarioError(at_line(session_lines[i]) + "FalseAnnouncement(" + sessions[i].first +
                               "): no muddy agent in session");
  }
  return pol::parallel::make_scenario(sessions, muddy_set);
}

pol::parallel::Scenario parse_scenario_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw pol::ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  std::vector<std::pair<std::string, std::vector<pol::AgentName>>> sessions;
  std::set<pol::AgentName> muddy;
  try {
    for (const auto& s : doc.at("sessions"))
      sessions.emplace_back(s.at("id").get<std::string>(), s.at("agents").get<std::vector<std::string>>());
    for (const auto& a : doc.at("muddy")) muddy.insert(a.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw pol::ScenarioError(std::string("malformed scenario JSON: ") + e.what());
  }
  std::set<pol::AgentName> known;
  for (const auto& [id, agents] : sessions) known.insert(agents.begin(), agents.end());
  for (const auto& a : muddy)
    if (!known.contains(a)) throw pol::ScenarioError("unknown agent " + a + " in muddy list");
  return pol::parallel::make_scenario(sessions, muddy);
}

std::string print_scenario(const pol::parallel::Scenario& sc) {
  std::string out;
  std::vector<pol::AgentName> order;
  for (const auto& s : sc.sessions) {
    out += "session " + s.id + ":";
    for (const auto& a : s.agents) {
      out += " " + a;
      if (sc.muddy.contains(a) && std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
    }
    out += "\n";
  }
  out += "muddy:";
  for (const auto& a : order) out += " " + a;
  out += "\n";
  return out;
}

pol::parallel::Scenario load_scenario(const std::string& path, bool json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pol::Error("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return json ? parse_scenario_json(buf.str()) : parse_scenario(buf.str());
}

}  // namespace polwb
