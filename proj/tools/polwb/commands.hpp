#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "pol/parallel.hpp"

namespace polwb {

/// Process exit codes.
enum ExitCode : int {
  kExitResolved = 0,
  kExitError = 1,
  kExitUnresolved = 2,
  kExitBoundExceeded = 3,
};

enum class Format { Text, Json };

/// Box semantics for `eval`: per-world init guard, existential guard over all
/// worlds, or questions executed by the session protocol.
enum class Semantics { InitGuard, ExistentialGuard, Protocol };

/// Accepts "def7", "sec3", "protocol". Throws pol::Error.
Semantics parse_semantics(const std::string& name);
std::string semantics_name(Semantics s);

struct CommandOutput {
  int exit_code = kExitResolved;
  std::string out;
  std::string err;
};

/// "s1,s1,s3" -> {"s1", "s1", "s3"}; empty text is the empty schedule.
pol::parallel::Schedule parse_schedule(const std::string& text);

CommandOutput cmd_run(const pol::parallel::Scenario& sc, const pol::parallel::Schedule& schedule, Format format);
CommandOutput cmd_sequential(const pol::parallel::Scenario& sc, Format format);
CommandOutput cmd_search(const pol::parallel::Scenario& sc, std::optional<std::size_t> bound, Format format);

/// Evaluates on the fresh model of `session`: at `world` (bit string) when
/// given, otherwise at every world.
CommandOutput cmd_eval(const pol::parallel::Scenario& sc, const std::string& session, const std::string& formula,
                       Semantics semantics, const std::optional<std::string>& world);

/// Full command-line entry point (`run`, `search`, `eval`, `repl`).
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace polwb
