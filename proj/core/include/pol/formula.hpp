#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "pol/epistemic_model.hpp"
#include "pol/obs_expr.hpp"

namespace pol {

/// Immutable formula tree: T, atoms, !, &, |, K(agent, f), [pi] f.
class Formula {
 public:
  enum class Kind { Top, Atom, Not, And, Or, Knows, Box };

  static Formula top();
  static Formula atom(AtomName name);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula knows(AgentName agent, Formula f);
  static Formula box(ObsExpr program, Formula f);

  // Derived connectives, expanded into the primitive ones.
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  Kind kind() const noexcept { return node_->kind; }
  /// Atom name or Knows agent.
  const std::string& name() const { return node_->name; }
  /// Not/Knows/Box operand, And/Or left operand.
  const Formula& operand() const { return *node_->left; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  const ObsExpr& program() const { return node_->program; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    ObsExpr program;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);

/// Grammar (precedence ! > & > |; K and [..] are prefix operators):
///
///   f := T | ATOM | !f | f & f | f | f | K(AGENT, f) | [pi] f | (f)
///
/// Throws ParseError (byte offset) or UnknownSymbol from the embedded program.
Formula parse_formula(std::string_view text);

}  // namespace pol
