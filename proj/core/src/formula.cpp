#include "pol/formula.hpp"

#include <cctype>

#include "pol/errors.hpp"
#include "pol/obs_parse.hpp"

namespace pol {

Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}, {}})); }

Formula Formula::atom(AtomName name) {
  if (!is_token(name)) throw Error("invalid atom name '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Not, {}, {}, std::make_shared<const Formula>(std::move(f)), {}}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {},
                                                   std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {},
                                                   std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::knows(AgentName agent, Formula f) {
  if (!is_token(agent)) throw Error("invalid agent name '" + agent + "'");
  return Formula(std::make_shared<const Node>(
      Node{Kind::Knows, std::move(agent), {}, std::make_shared<const Formula>(std::move(f)), {}}));
}

Formula Formula::box(ObsExpr program, Formula f) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Box, {}, std::move(program), std::make_shared<const Formula>(std::move(f)), {}}));
}

Formula Formula::implies(Formula a, Formula b) { return disj(negation(std::move(a)), std::move(b)); }

Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

namespace {

// 1: |, 2: &, 3: prefix operand.
void print(const Formula& f, int ctx, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += "T";
      return;
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Not:
      out += "!";
      print(f.operand(), 3, out);
      return;
    case Formula::Kind::And:
      if (ctx > 2) out += "(";
      print(f.left(), 2, out);
      out += " & ";
      print(f.right(), 2, out);
      if (ctx > 2) out += ")";
      return;
    case Formula::Kind::Or:
      if (ctx > 1) out += "(";
      print(f.left(), 1, out);
      out += " | ";
      print(f.right(), 1, out);
      if (ctx > 1) out += ")";
      return;
    case Formula::Kind::Knows:
      out += "K(" + f.name() + ", ";
      print(f.operand(), 0, out);
      out += ")";
      return;
    case Formula::Kind::Box:
      out += "[" + to_string(f.program()) + "]";
      print(f.operand(), 3, out);
      return;
  }
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = disjunction();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept('&')) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('!')) return Formula::negation(unary());
    if (accept('(')) {
      Formula f = disjunction();
      expect(')');
      return f;
    }
    if (text_[pos_] == '[') {
      std::size_t open = pos_++;
      std::size_t close = text_.find(']', pos_);
      if (close == std::string_view::npos) {
        pos_ = open;
        fail("unterminated '['");
      }
      ObsExpr program;
      try {
        program = parse_obs(text_.substr(pos_, close - pos_));
      } catch (const ParseError& e) {
        pos_ = open + 1 + e.offset();
        fail("in program: " + std::string(e.what()));
      }
      pos_ = close + 1;
      return Formula::box(std::move(program), unary());
    }
    std::string name = token();
    if (name.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (name == "T") return Formula::top();
    if (name == "K" && peek('(')) {
      expect('(');
      skip_ws();
      std::string agent = token();
      if (agent.empty()) fail("expected agent name");
      expect(',');
      Formula f = disjunction();
      expect(')');
      return Formula::knows(std::move(agent), std::move(f));
    }
    return Formula::atom(std::move(name));
  }

  std::string token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

}  // namespace pol
