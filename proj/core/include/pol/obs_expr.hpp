#pragma once

// Observation expressions: regular expressions over a finite action alphabet,
// with Brzozowski-style derivatives used to compute residuals (the language
// { b | a.b in L(e) }) and init-prefix membership.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pol {

/// An action name, optionally tagged with the session it happens in (`QF@s1`).
struct ActionSymbol {
  std::string name;
  std::optional<std::string> session_tag;

  auto operator<=>(const ActionSymbol&) const = default;
  bool operator==(const ActionSymbol&) const = default;

  std::string to_string() const;
};

/// True iff `s` is a non-empty token over [A-Za-z0-9_].
bool is_token(std::string_view s) noexcept;

/// Builds a symbol, validating both parts as tokens. Throws pol::Error.
ActionSymbol make_symbol(std::string name, std::optional<std::string> session_tag = std::nullopt);

using ObsWord = std::vector<ActionSymbol>;
using Alphabet = std::set<ActionSymbol>;

std::string to_string(const ObsWord& word);

/// Immutable expression tree. Copies share structure.
///
/// The static factories build nodes exactly as asked; `canonicalize` (and every
/// derivative/residual result) produces the canonical representative used for
/// memoization and closure computations.
class ObsExpr {
 public:
  enum class Kind : std::uint8_t { Empty, Epsilon, Atom, Concat, Union, Star };

  /// The empty-language constant (written `0`).
  ObsExpr();

  static ObsExpr empty();
  static ObsExpr epsilon();
  static ObsExpr atom(ActionSymbol symbol);
  static ObsExpr concat(ObsExpr left, ObsExpr right);
  static ObsExpr alt(ObsExpr left, ObsExpr right);
  static ObsExpr star(ObsExpr body);
  /// `e^n`, i.e. n-fold concatenation; `e^0` is epsilon.
  static ObsExpr power(const ObsExpr& e, std::size_t n);

  Kind kind() const noexcept;
  /// Atom only.
  const ActionSymbol& symbol() const;
  /// Concat/Union: left operand; Star: the body.
  const ObsExpr& left() const;
  const ObsExpr& right() const;
  const ObsExpr& body() const { return left(); }

  /// Whether epsilon is in the language.
  bool nullable() const noexcept;
  /// Node count.
  std::size_t size() const noexcept;
  bool is_canonical() const noexcept;

  friend bool operator==(const ObsExpr& a, const ObsExpr& b);
  friend std::strong_ordering operator<=>(const ObsExpr& a, const ObsExpr& b);

 private:
  struct Node;
  explicit ObsExpr(std::shared_ptr<const Node> node);
  static ObsExpr make(Kind kind, std::optional<ActionSymbol> symbol, const ObsExpr* l,
                      const ObsExpr* r, bool canonical);

  friend class CanonicalBuilder;

  std::shared_ptr<const Node> node_;
};

/// Concrete syntax: `0`, `1`, `QF`, `QF@s1`, `a;b`, `a + b`, `a*`.
std::string to_string(const ObsExpr& e);

/// Decided structurally, no enumeration.
bool is_empty_language(const ObsExpr& e);

/// Language-preserving normal form: unit/zero laws for `;` and `+`,
/// `+` flattened, sorted and deduplicated, `;` right-associated,
/// `(e*)* = e*`, `0* = 1* = 1`.
ObsExpr canonicalize(const ObsExpr& e);

/// Brzozowski derivative; canonical result.
ObsExpr derivative(const ObsExpr& e, const ActionSymbol& sym);

/// Left fold of `derivative` over `word`; canonical result.
ObsExpr residual(const ObsExpr& e, const ObsWord& word);

bool language_contains(const ObsExpr& e, const ObsWord& word);

/// True iff some extension of `word` is in L(e).
bool in_init(const ObsWord& word, const ObsExpr& e);

/// Symbols occurring in atoms of `e`.
Alphabet symbols_of(const ObsExpr& e);

/// Largest `max_len` accepted by enumerate_words.
inline constexpr std::size_t kMaxEnumerationLength = 12;

/// Every word of L(e) with length <= max_len, by direct recursion on the
/// language clauses. Throws LimitExceeded above kMaxEnumerationLength.
std::set<ObsWord> enumerate_words(const ObsExpr& e, std::size_t max_len);

/// Language equality via a bisimulation over paired canonical derivatives.
bool language_equal(const ObsExpr& a, const ObsExpr& b);

/// All canonical expressions reachable from `e` by derivatives over `alphabet`.
/// Throws LimitExceeded if more than `limit` states are found.
std::set<ObsExpr> derivative_closure(const ObsExpr& e, const Alphabet& alphabet,
                                     std::size_t limit = 100000);

}  // namespace pol
