#pragma once

#include <cstddef>

#include "pol/epistemic_model.hpp"
#include "pol/formula.hpp"

namespace pol {

/// Which words a box `[pi] f` ranges over at world w.
enum class BoxGuard {
  /// alpha must be a prefix of some word expected at w itself (the default).
  EvaluationWorld,
  /// alpha must be a prefix of some word expected at any world of the model.
  /// When w itself does not survive the update, f is evaluated at w as a
  /// detached point: no atom holds there and it has no successors.
  AnyWorld,
};

struct EvalOptions {
  BoxGuard guard = BoxGuard::EvaluationWorld;
  /// Longest observation word a box exploration may reach through new
  /// (expression, model) states before BoundExceeded is raised.
  std::size_t max_word_length = 32;
};

/// Truth of `f` at `w`. Boxes are decided by exploring derivative states of
/// the (program, model) pair with memoization, so starred programs terminate.
/// Throws WorldNotFound, UnknownAtom, UnknownAgent, BoundExceeded.
bool eval(const ExpectationModel& m, WorldId w, const Formula& f, const EvalOptions& options = {});

/// eval with BoxGuard::AnyWorld.
bool eval_existential_guard(const ExpectationModel& m, WorldId w, const Formula& f,
                            std::size_t max_word_length = 32);

/// True iff `f` holds at every world of `m`.
bool valid_in(const ExpectationModel& m, const Formula& f, const EvalOptions& options = {});

}  // namespace pol
