#include "commands.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "pol/errors.hpp"
#include "pol/eval.hpp"
#include "repl.hpp"
#include "scenario_io.hpp"
#include "trace.hpp"

namespace polwb {

namespace par = pol::parallel;

Semantics parse_semantics(const std::string& name) {
  if (name == "def7") return Semantics::InitGuard;
  if (name == "sec3") return Semantics::ExistentialGuard;
  if (name == "protocol") return Semantics::Protocol;
  throw pol::Error("unknown semantics '" + name + "' (expected def7, sec3 or protocol)");
}

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::InitGuard:
      return "def7";
    case Semantics::ExistentialGuard:
      return "sec3";
    case Semantics::Protocol:
      return "protocol";
  }
  return "?";
}

par::Schedule parse_schedule(const std::string& text) {
  par::Schedule out;
  std::istringstream in(text);
  for (std::string id; std::getline(in, id, ',');) {
    if (id.empty()) throw pol::Error("empty session id in schedule '" + text + "'");
    out.push_back(id);
  }
  return out;
}

namespace {

template <typename F>
CommandOutput guarded(F&& body) {
  CommandOutput result;
  try {
    result = body();
  } catch (const pol::BoundExceeded& e) {
    result.exit_code = kExitBoundExceeded;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kExitError;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace

CommandOutput cmd_run(const par::Scenario& sc, const par::Schedule& schedule, Format format) {
  return guarded([&] {
    par::RunResult run = par::run_schedule(sc, schedule);
    Trace trace = make_trace(run.state);
    CommandOutput out;
    out.out = format == Format::Json ? to_json(trace, sc).dump(2) + "\n" : to_text(trace);
    out.exit_code = trace.summary.resolved ? kExitResolved : kExitUnresolved;
    return out;
  });
}

CommandOutput cmd_sequential(const par::Scenario& sc, Format format) {
  return guarded([&] {
    std::vector<std::size_t> counts = par::sequential_counts(sc);
    std::size_t total = 0;
    for (std::size_t n : counts) total += n;
    CommandOutput out;
    if (format == Format::Json) {
      nlohmann::ordered_json per = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < counts.size(); ++i) per[sc.sessions[i].id] = counts[i];
      nlohmann::ordered_json j{{"scenario", scenario_to_json(sc)}, {"per_session", per}, {"total", total}};
      out.out = j.dump(2) + "\n";
    } else {
      std::ostringstream text;
      text << "per_session";
      for (std::size_t i = 0; i < counts.size(); ++i) text << " " << sc.sessions[i].id << "=" << counts[i];
      text << "\ntotal=" << total << "\n";
      out.out = text.str();
    }
    return out;
  });
}

CommandOutput cmd_search(const par::Scenario& sc, std::optional<std::size_t> bound, Format format) {
  return guarded([&] {
    const std::size_t limit = bound.value_or(par::sequential_total(sc));
    par::SearchResult r = par::search_min_schedule(sc, limit);
    std::string sched;
    for (std::size_t i = 0; i < r.witness.size(); ++i) sched += (i ? "," : "") + r.witness[i];
    CommandOutput out;
    if (format == Format::Json) {
      nlohmann::ordered_json j{{"min", r.count}, {"schedule", r.witness}, {"states_explored", r.states_explored}};
      out.out = j.dump(2) + "\n";
    } else {
      out.out = "min=" + std::to_string(r.count) + " schedule=" + sched + "\n";
    }
    return out;
  });
}

CommandOutput cmd_eval(const par::Scenario& sc, const std::string& session, const std::string& formula,
                       Semantics semantics, const std::optional<std::string>& world) {
  return guarded([&] {
    const pol::Formula f = pol::parse_formula(formula);
    const pol::muddy::SessionState state = pol::muddy::build_session(sc.session(session));
    std::optional<pol::muddy::BitWorld> at;
    if (world) {
      at = pol::muddy::BitWorld::parse(*world);
      if (at->width != state.spec.agents.size())
        throw pol::Error("world '" + *world + "' does not match session " + session);
    }
    bool value = false;
    if (semantics == Semantics::Protocol) {
      value = at ? pol::muddy::eval_protocol(state, *at, f) : pol::muddy::valid_protocol(state, f);
    } else {
      pol::EvalOptions opts;
      opts.guard = semantics == Semantics::InitGuard ? pol::BoxGuard::EvaluationWorld : pol::BoxGuard::AnyWorld;
      value = at ? pol::eval(state.model, at->id(), f, opts) : pol::valid_in(state.model, f, opts);
    }
    CommandOutput out;
    out.out = value ? "true\n" : "false\n";
    return out;
  });
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Public observation logic workbench: muddy children in parallel sessions", "polwb"};
  app.require_subcommand(1);

  std::string file;
  bool json_input = false;
  std::string format_name = "text";

  auto* run = app.add_subcommand("run", "Run a schedule (or the sequential baseline) and print the trace");
  std::string schedule_text;
  bool sequential = false;
  run->add_option("file", file, "Scenario file")->required();
  auto* sched_opt = run->add_option("--schedule", schedule_text, "Comma-separated session ids");
  run->add_flag("--sequential", sequential, "Resolve each session independently");
  run->add_option("--format", format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
  run->add_flag("--json", json_input, "Scenario file is JSON");
  sched_opt->excludes(run->get_option("--sequential"));

  auto* search = app.add_subcommand("search", "Find a schedule with the fewest questions");
  std::optional<std::size_t> bound;
  search->add_option("file", file, "Scenario file")->required();
  search->add_option("--bound", bound, "Maximum number of questions (default: sequential total)");
  search->add_option("--format", format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
  search->add_flag("--json", json_input, "Scenario file is JSON");

  auto* evalc = app.add_subcommand("eval", "Evaluate a formula on a fresh session model");
  std::string session;
  std::string semantics_text = "protocol";
  std::optional<std::string> world;
  std::string formula;
  evalc->add_option("file", file, "Scenario file")->required();
  evalc->add_option("formula", formula, "Formula")->required();
  evalc->add_option("--session", session, "Session id")->required();
  evalc->add_option("--semantics", semantics_text, "def7, sec3 or protocol")
      ->check(CLI::IsMember({"def7", "sec3", "protocol"}));
  evalc->add_option("--world", world, "Evaluate at this world (bit string) instead of every world");
  evalc->add_flag("--json", json_input, "Scenario file is JSON");

  auto* repl = app.add_subcommand("repl", "Step through a scenario interactively");
  repl->add_option("file", file, "Scenario file")->required();
  repl->add_flag("--json", json_input, "Scenario file is JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitResolved : kExitError;
  }

  par::Scenario sc;
  try {
    sc = load_scenario(file, json_input);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const Format format = format_name == "json" ? Format::Json : Format::Text;

  CommandOutput result;
  if (*run) {
    if (sequential) {
      result = cmd_sequential(sc, format);
    } else {
      try {
        result = cmd_run(sc, parse_schedule(schedule_text), format);
      } catch (const std::exception& e) {
        result = {kExitError, "", std::string("error: ") + e.what() + "\n"};
      }
    }
  } else if (*search) {
    result = cmd_search(sc, bound, format);
  } else if (*evalc) {
    try {
      result = cmd_eval(sc, session, formula, parse_semantics(semantics_text), world);
    } catch (const std::exception& e) {
      result = {kExitError, "", std::string("error: ") + e.what() + "\n"};
    }
  } else if (*repl) {
    Repl r(sc);
    r.run(in, out, &in == &std::cin);
    return kExitResolved;
  }
  out << result.out;
  err << result.err;
  return result.exit_code;
}

}  // namespace polwb
