#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pol/parallel.hpp"

namespace polwb {

/// One serialized event. Propagation records are attributed to the source
/// session; `propagated_to` names the session that lost worlds.
struct TraceRecord {
  std::string session;
  std::size_t q = 0;
  std::string kind;
  std::vector<std::string> removed;  // bit strings in the affected session's agent order
  std::optional<std::string> declarer;
  std::optional<std::string> propagated_to;

  bool operator==(const TraceRecord&) const = default;
};

struct TraceSummary {
  std::vector<std::pair<std::string, std::size_t>> per_session;  // questions asked
  std::size_t total = 0;
  bool resolved = false;
};

struct Trace {
  std::vector<TraceRecord> records;
  TraceSummary summary;
};

Trace make_trace(const pol::parallel::ParallelState& state);

TraceRecord to_record(const pol::parallel::LogEntry& entry);

/// `event session=s1 q=2 kind=declare removed=01,11 declarer=a` lines, then
/// `per_session s1=2 ...` and `total=N resolved=true|false`.
std::string to_text(const Trace& trace);

/// {"scenario": ..., "events": [...], "summary": {...}}
nlohmann::ordered_json to_json(const Trace& trace, const pol::parallel::Scenario& sc);

nlohmann::ordered_json scenario_to_json(const pol::parallel::Scenario& sc);

/// Inverse of the event lines of to_text; other lines are skipped.
std::vector<TraceRecord> parse_text_records(const std::string& text);

}  // namespace polwb
