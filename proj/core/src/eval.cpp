#include "pol/eval.hpp"

#include <set>
#include <utility>
#include <vector>

#include "pol/errors.hpp"

namespace pol {
namespace {

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& options) : options_(options) {}

  bool holds(const ExpectationModel& m, WorldId w, const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Atom: {
        auto it = m.skeleton.valuation.find(f.name());
        if (it == m.skeleton.valuation.end()) throw UnknownAtom("unknown atom '" + f.name() + "'");
        return it->second.contains(w);
      }
      case Formula::Kind::Not:
        return !holds(m, w, f.operand());
      case Formula::Kind::And:
        return holds(m, w, f.left()) && holds(m, w, f.right());
      case Formula::Kind::Or:
        return holds(m, w, f.left()) || holds(m, w, f.right());
      case Formula::Kind::Knows:
        for (WorldId v : m.skeleton.successors(f.name(), w))
          if (!holds(m, v, f.operand())) return false;
        return true;
      case Formula::Kind::Box:
        return box(m, w, f.program(), f.operand());
    }
    return false;
  }

 private:
  bool guard_passes(const ExpectationModel& m, WorldId w) const {
    if (options_.guard == BoxGuard::EvaluationWorld) return m.skeleton.worlds.contains(w);
    return !m.skeleton.worlds.empty();
  }

  using StateKey = std::pair<ObsExpr, std::vector<std::pair<WorldId, ObsExpr>>>;

  static StateKey key_of(const ObsExpr& program, const ExpectationModel& m) {
    std::vector<std::pair<WorldId, ObsExpr>> exps(m.exp.begin(), m.exp.end());
    return {program, std::move(exps)};
  }

  // Every word alpha of L(program) passing the guard is reached as a path of
  // single-symbol steps; the pair (residual program, updated model) fully
  // determines the rest of the exploration, so revisits are skipped.
  bool box(const ExpectationModel& m, WorldId w, const ObsExpr& program, const Formula& body) {
    struct Frame {
      ObsExpr program;
      ExpectationModel model;
      std::size_t depth;
    };

    ExpectationModel start = m;
    for (auto& [v, e] : start.exp) e = canonicalize(e);
    ObsExpr prog = canonicalize(program);
    const Alphabet sigma = symbols_of(prog);

    std::set<StateKey> visited{key_of(prog, start)};
    std::vector<Frame> stack;
    stack.push_back({prog, std::move(start), 0});
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (!guard_passes(frame.model, w)) continue;
      if (frame.program.nullable() && !holds(frame.model, w, body)) return false;
      for (const auto& sym : sigma) {
        ObsExpr next_prog = derivative(frame.program, sym);
        if (is_empty_language(next_prog)) continue;
        ExpectationModel next_model = observe_symbol(frame.model, sym);
        if (!visited.insert(key_of(next_prog, next_model)).second) continue;
        if (frame.depth + 1 > options_.max_word_length)
          throw BoundExceeded("box exploration exceeded word length " +
                              std::to_string(options_.max_word_length));
        stack.push_back({std::move(next_prog), std::move(next_model), frame.depth + 1});
      }
    }
    return true;
  }

  EvalOptions options_;
};

}  // namespace

bool eval(const ExpectationModel& m, WorldId w, const Formula& f, const EvalOptions& options) {
  if (!m.skeleton.worlds.contains(w))
    throw WorldNotFound("world " + std::to_string(w.value) + " not in model");
  return Evaluator(options).holds(m, w, f);
}

bool eval_existential_guard(const ExpectationModel& m, WorldId w, const Formula& f,
                            std::size_t max_word_length) {
  return eval(m, w, f, EvalOptions{BoxGuard::AnyWorld, max_word_length});
}

bool valid_in(const ExpectationModel& m, const Formula& f, const EvalOptions& options) {
  for (WorldId w : m.skeleton.worlds)
    if (!eval(m, w, f, options)) return false;
  return true;
}

}  // namespace pol
