#include "pol/obs_parse.hpp"

#include <cctype>
#include <string>

#include "pol/errors.hpp"

namespace pol {
namespace {

constexpr std::size_t kMaxPower = 4096;

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class ObsParser {
 public:
  ObsParser(std::string_view text, const Alphabet* alphabet) : text_(text), alphabet_(alphabet) {}

  ObsExpr parse() {
    ObsExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  ObsExpr expr() {
    ObsExpr e = term();
    while (accept('+')) e = ObsExpr::alt(e, term());
    return e;
  }

  ObsExpr term() {
    ObsExpr e = factor();
    while (accept(';')) e = ObsExpr::concat(e, factor());
    return e;
  }

  ObsExpr factor() {
    ObsExpr e = primary();
    for (;;) {
      if (accept('*')) {
        e = ObsExpr::star(e);
      } else if (accept('^')) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        std::size_t n = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (n > kMaxPower) {
          pos_ = start;
          fail("exponent too large");
        }
        e = ObsExpr::power(e, n);
      } else {
        return e;
      }
    }
  }

  ObsExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      ObsExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    std::size_t start = pos_;
    std::string name = token();
    if (name.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (name == "0") return ObsExpr::empty();
    if (name == "1") return ObsExpr::epsilon();
    ActionSymbol sym{name, std::nullopt};
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      std::string tag = token();
      if (tag.empty()) fail("expected session tag after '@'");
      sym.session_tag = tag;
    }
    if (alphabet_ && !alphabet_->contains(sym))
      throw UnknownSymbol("unknown action symbol '" + sym.to_string() + "' at offset " +
                          std::to_string(start));
    return ObsExpr::atom(std::move(sym));
  }

  std::string token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_token_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + msg, pos_);
  }

  std::string_view text_;
  const Alphabet* alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

ObsExpr parse_obs(std::string_view text) { return ObsParser(text, nullptr).parse(); }

ObsExpr parse_obs(std::string_view text, const Alphabet& alphabet) {
  return ObsParser(text, &alphabet).parse();
}

}  // namespace pol
