#include "trace.hpp"

#include <algorithm>
#include <sstream>

#include "pol/errors.hpp"

namespace polwb {

TraceRecord to_record(const pol::parallel::LogEntry& entry) {
  const pol::muddy::Event& e = entry.event;
  TraceRecord r;
  r.q = e.question_index;
  r.kind = pol::muddy::to_string(e.kind);
  for (const auto& w : e.removed) r.removed.push_back(pol::muddy::to_string(w));
  std::sort(r.removed.begin(), r.removed.end());
  if (e.kind == pol::muddy::Event::Kind::Propagated) {
    r.session = e.from_session.value_or("?");
    r.propagated_to = entry.session;
  } else {
    r.session = entry.session;
  }
  r.declarer = e.declarer;
  return r;
}

Trace make_trace(const pol::parallel::ParallelState& state) {
  Trace t;
  for (const auto& entry : state.log) t.records.push_back(to_record(entry));
  for (const auto& s : state.states) t.summary.per_session.emplace_back(s.spec.id, s.asked);
  t.summary.total = state.total_asked;
  t.summary.resolved = state.all_resolved();
  return t;
}

std::string to_text(const Trace& trace) {
  std::ostringstream out;
  for (const auto& r : trace.records) {
    out << "event session=" << r.session << " q=" << r.q << " kind=" << r.kind << " removed=";
    if (r.removed.empty()) out << "-";
    for (std::size_t i = 0; i < r.removed.size(); ++i) out << (i ? "," : "") << r.removed[i];
    if (r.declarer) out << " declarer=" << *r.declarer;
    if (r.propagated_to) out << " propagated_to=" << *r.propagated_to;
    out << "\n";
  }
  out << "per_session";
  for (const auto& [id, n] : trace.summary.per_session) out << " " << id << "=" << n;
  out << "\n";
  out << "total=" << trace.summary.total << " resolved=" << (trace.summary.resolved ? "true" : "false") << "\n";
  return out.str();
}

nlohmann::ordered_json scenario_to_json(const pol::parallel::Scenario& sc) {
  nlohmann::ordered_json j;
  j["sessions"] = nlohmann::ordered_json::array();
  for (const auto& s : sc.sessions) j["sessions"].push_back({{"id", s.id}, {"agents", s.agents}});
  j["muddy"] = sc.muddy;
  return j;
}

nlohmann::ordered_json to_json(const Trace& trace, const pol::parallel::Scenario& sc) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario_to_json(sc);
  j["events"] = nlohmann::ordered_json::array();
  for (const auto& r : trace.records) {
    nlohmann::ordered_json e{{"session", r.session}, {"q", r.q}, {"kind", r.kind}, {"removed", r.removed}};
    if (r.declarer) e["declarer"] = *r.declarer;
    if (r.propagated_to) e["propagated_to"] = *r.propagated_to;
    j["events"].push_back(std::move(e));
  }
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [id, n] : trace.summary.per_session) per[id] = n;
  j["summary"] = {{"per_session", per}, {"total", trace.summary.total}, {"resolved", trace.summary.resolved}};
  return j;
}

std::vector<TraceRecord> parse_text_records(const std::string& text) {
  std::vector<TraceRecord> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word) || word != "event") continue;
    TraceRecord r;
    while (fields >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw pol::Error("bad trace field '" + word + "'");
      const std::string key = word.substr(0, eq);
      const std::string value = word.substr(eq + 1);
      if (key == "session") {
        r.session = value;
      } else if (key == "q") {
        r.q = std::stoul(value);
      } else if (key == "kind") {
        r.kind = value;
      } else if (key == "removed") {
        if (value == "-") continue;
        std::istringstream worlds(value);
        for (std::string w; std::getline(worlds, w, ',');) r.removed.push_back(w);
      } else if (key == "declarer") {
        r.declarer = value;
      } else if (key == "propagated_to") {
        r.propagated_to = value;
      } else {
        throw pol::Error("unknown trace field '" + key + "'");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace polwb
