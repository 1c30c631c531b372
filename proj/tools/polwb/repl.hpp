#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pol/parallel.hpp"

namespace polwb {

/// Interactive stepping over a scenario with an undo stack of whole states.
///
/// Commands: ask <session>, show [session], knows <agent>,
/// eval <session> <formula>, undo, reset, help, quit.
class Repl {
 public:
  explicit Repl(pol::parallel::Scenario scenario);

  /// Runs one command line and returns what it prints. Errors are reported
  /// in the returned text; the state is left unchanged.
  std::string execute(const std::string& line);

  /// Reads commands until `quit` or end of input.
  void run(std::istream& in, std::ostream& out, bool prompt);

  bool done() const { return done_; }
  const pol::parallel::ParallelState& state() const { return state_; }
  std::size_t undo_depth() const { return history_.size(); }

 private:
  std::string ask(const std::string& session);
  std::string show(const std::string& session) const;
  std::string knows(const std::string& agent) const;
  std::string eval(const std::string& session, const std::string& formula) const;

  pol::parallel::Scenario scenario_;
  pol::parallel::ParallelState state_;
  std::vector<pol::parallel::ParallelState> history_;
  bool done_ = false;
};

}  // namespace polwb
