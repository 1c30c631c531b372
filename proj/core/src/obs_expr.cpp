#include "pol/obs_expr.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "pol/errors.hpp"

namespace pol {

struct ObsExpr::Node {
  Kind kind;
  std::optional<ActionSymbol> symbol;
  ObsExpr left_child;
  ObsExpr right_child;
  bool nullable;
  bool canonical;
  std::size_t size;

  // Unused children of leaves and stars hold a null node.
  Node(Kind k, std::optional<ActionSymbol> s, ObsExpr l, ObsExpr r, bool n, bool c, std::size_t sz)
      : kind(k),
        symbol(std::move(s)),
        left_child(std::move(l)),
        right_child(std::move(r)),
        nullable(n),
        canonical(c),
        size(sz) {}
};

std::string ActionSymbol::to_string() const {
  return session_tag ? name + "@" + *session_tag : name;
}

bool is_token(std::string_view s) noexcept {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

ActionSymbol make_symbol(std::string name, std::optional<std::string> session_tag) {
  if (!is_token(name)) throw Error("invalid action name '" + name + "'");
  if (session_tag && !is_token(*session_tag))
    throw Error("invalid session tag '" + *session_tag + "'");
  return ActionSymbol{std::move(name), std::move(session_tag)};
}

std::string to_string(const ObsWord& word) {
  if (word.empty()) return "<>";
  std::string out = "<";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ",";
    out += word[i].to_string();
  }
  return out + ">";
}

// --- construction ----------------------------------------------------------

ObsExpr::ObsExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

// A null node_ only exists inside leaf Nodes (their unused children); every
// public ObsExpr points at a real node.
ObsExpr::ObsExpr() : node_(empty().node_) {}

ObsExpr ObsExpr::make(Kind kind, std::optional<ActionSymbol> symbol, const ObsExpr* l,
                      const ObsExpr* r, bool canonical) {
  bool nullable = false;
  std::size_t size = 1;
  switch (kind) {
    case Kind::Empty:
    case Kind::Atom:
      break;
    case Kind::Epsilon:
    case Kind::Star:
      nullable = true;
      break;
    case Kind::Concat:
      nullable = l->nullable() && r->nullable();
      break;
    case Kind::Union:
      nullable = l->nullable() || r->nullable();
      break;
  }
  if (l) size += l->size();
  if (r) size += r->size();
  ObsExpr null_child{std::shared_ptr<const Node>{}};
  return ObsExpr(std::make_shared<const Node>(kind, std::move(symbol), l ? *l : null_child,
                                              r ? *r : null_child, nullable, canonical, size));
}

ObsExpr ObsExpr::empty() {
  static const ObsExpr zero = make(Kind::Empty, std::nullopt, nullptr, nullptr, true);
  return zero;
}

ObsExpr ObsExpr::epsilon() {
  static const ObsExpr eps = make(Kind::Epsilon, std::nullopt, nullptr, nullptr, true);
  return eps;
}

ObsExpr ObsExpr::atom(ActionSymbol symbol) {
  return make(Kind::Atom, std::move(symbol), nullptr, nullptr, true);
}

ObsExpr ObsExpr::concat(ObsExpr left, ObsExpr right) {
  return make(Kind::Concat, std::nullopt, &left, &right, false);
}

ObsExpr ObsExpr::alt(ObsExpr left, ObsExpr right) {
  return make(Kind::Union, std::nullopt, &left, &right, false);
}

ObsExpr ObsExpr::star(ObsExpr body) { return make(Kind::Star, std::nullopt, &body, nullptr, false); }

ObsExpr ObsExpr::power(const ObsExpr& e, std::size_t n) {
  if (n == 0) return epsilon();
  ObsExpr out = e;
  for (std::size_t i = 1; i < n; ++i) out = concat(out, e);
  return out;
}

ObsExpr::Kind ObsExpr::kind() const noexcept { return node_->kind; }

const ActionSymbol& ObsExpr::symbol() const {
  if (node_->kind != Kind::Atom) throw Error("symbol() on a non-atom expression");
  return *node_->symbol;
}

const ObsExpr& ObsExpr::left() const {
  if (!node_->left_child.node_) throw Error("left() on a leaf expression");
  return node_->left_child;
}

const ObsExpr& ObsExpr::right() const {
  if (!node_->right_child.node_) throw Error("right() on an expression without a right operand");
  return node_->right_child;
}

bool ObsExpr::nullable() const noexcept { return node_->nullable; }
std::size_t ObsExpr::size() const noexcept { return node_->size; }
bool ObsExpr::is_canonical() const noexcept { return node_->canonical; }

std::strong_ordering operator<=>(const ObsExpr& a, const ObsExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case ObsExpr::Kind::Empty:
    case ObsExpr::Kind::Epsilon:
      return std::strong_ordering::equal;
    case ObsExpr::Kind::Atom:
      return a.symbol() <=> b.symbol();
    case ObsExpr::Kind::Star:
      return a.body() <=> b.body();
    case ObsExpr::Kind::Concat:
    case ObsExpr::Kind::Union:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
  return std::strong_ordering::equal;
}

bool operator==(const ObsExpr& a, const ObsExpr& b) { return (a <=> b) == 0; }

// --- canonical forms ---------------------------------------------------------

// Smart constructors. Given canonical operands they return canonical results.
class CanonicalBuilder {
 public:
  using Kind = ObsExpr::Kind;

  static ObsExpr concat(const ObsExpr& a, const ObsExpr& b) {
    if (a.kind() == Kind::Empty || b.kind() == Kind::Empty) return ObsExpr::empty();
    if (a.kind() == Kind::Epsilon) return b;
    if (b.kind() == Kind::Epsilon) return a;
    if (a.kind() == Kind::Concat) return concat(a.left(), concat(a.right(), b));
    return ObsExpr::make(Kind::Concat, std::nullopt, &a, &b, true);
  }

  static ObsExpr alt(const ObsExpr& a, const ObsExpr& b) {
    if (a.kind() == Kind::Empty) return b;
    if (b.kind() == Kind::Empty) return a;
    if (a == b) return a;
    std::vector<ObsExpr> members;
    collect(a, members);
    collect(b, members);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    ObsExpr out = members.back();
    for (auto it = members.rbegin() + 1; it != members.rend(); ++it)
      out = ObsExpr::make(Kind::Union, std::nullopt, &*it, &out, true);
    return out;
  }

  static ObsExpr star(const ObsExpr& a) {
    if (a.kind() == Kind::Star) return a;
    if (a.kind() == Kind::Empty || a.kind() == Kind::Epsilon) return ObsExpr::epsilon();
    return ObsExpr::make(Kind::Star, std::nullopt, &a, nullptr, true);
  }

 private:
  static void collect(const ObsExpr& e, std::vector<ObsExpr>& out) {
    if (e.kind() == Kind::Union) {
      collect(e.left(), out);
      collect(e.right(), out);
    } else if (e.kind() != Kind::Empty) {
      out.push_back(e);
    }
  }
};

ObsExpr canonicalize(const ObsExpr& e) {
  if (e.is_canonical()) return e;
  switch (e.kind()) {
    case ObsExpr::Kind::Empty:
    case ObsExpr::Kind::Epsilon:
    case ObsExpr::Kind::Atom:
      return e;
    case ObsExpr::Kind::Concat:
      return CanonicalBuilder::concat(canonicalize(e.left()), canonicalize(e.right()));
    case ObsExpr::Kind::Union:
      return CanonicalBuilder::alt(canonicalize(e.left()), canonicalize(e.right()));
    case ObsExpr::Kind::Star:
      return CanonicalBuilder::star(canonicalize(e.body()));
  }
  return e;
}

namespace {

ObsExpr derive_canonical(const ObsExpr& e, const ActionSymbol& sym) {
  using Kind = ObsExpr::Kind;
  switch (e.kind()) {
    case Kind::Empty:
    case Kind::Epsilon:
      return ObsExpr::empty();
    case Kind::Atom:
      return e.symbol() == sym ? ObsExpr::epsilon() : ObsExpr::empty();
    case Kind::Concat: {
      ObsExpr head = CanonicalBuilder::concat(derive_canonical(e.left(), sym), e.right());
      if (!e.left().nullable()) return head;
      return CanonicalBuilder::alt(head, derive_canonical(e.right(), sym));
    }
    case Kind::Union:
      return CanonicalBuilder::alt(derive_canonical(e.left(), sym), derive_canonical(e.right(), sym));
    case Kind::Star:
      return CanonicalBuilder::concat(derive_canonical(e.body(), sym), e);
  }
  return ObsExpr::empty();
}

}  // namespace

ObsExpr derivative(const ObsExpr& e, const ActionSymbol& sym) {
  return derive_canonical(canonicalize(e), sym);
}

ObsExpr residual(const ObsExpr& e, const ObsWord& word) {
  ObsExpr out = canonicalize(e);
  for (const auto& sym : word) {
    if (out.kind() == ObsExpr::Kind::Empty) break;
    out = derive_canonical(out, sym);
  }
  return out;
}

// --- language queries -----------------------------------------------------------

bool is_empty_language(const ObsExpr& e) {
  switch (e.kind()) {
    case ObsExpr::Kind::Empty:
      return true;
    case ObsExpr::Kind::Epsilon:
    case ObsExpr::Kind::Atom:
    case ObsExpr::Kind::Star:
      return false;
    case ObsExpr::Kind::Concat:
      return is_empty_language(e.left()) || is_empty_language(e.right());
    case ObsExpr::Kind::Union:
      return is_empty_language(e.left()) && is_empty_language(e.right());
  }
  return true;
}

bool language_contains(const ObsExpr& e, const ObsWord& word) { return residual(e, word).nullable(); }

bool in_init(const ObsWord& word, const ObsExpr& e) { return !is_empty_language(residual(e, word)); }

namespace {

void collect_symbols(const ObsExpr& e, Alphabet& out) {
  switch (e.kind()) {
    case ObsExpr::Kind::Empty:
    case ObsExpr::Kind::Epsilon:
      return;
    case ObsExpr::Kind::Atom:
      out.insert(e.symbol());
      return;
    case ObsExpr::Kind::Star:
      collect_symbols(e.body(), out);
      return;
    case ObsExpr::Kind::Concat:
    case ObsExpr::Kind::Union:
      collect_symbols(e.left(), out);
      collect_symbols(e.right(), out);
      return;
  }
}

// Words bucketed by length: index i holds words of length exactly i.
using Buckets = std::vector<std::set<ObsWord>>;

Buckets concat_buckets(const Buckets& a, const Buckets& b, std::size_t max_len) {
  Buckets out(max_len + 1);
  for (std::size_t i = 0; i <= max_len; ++i) {
    for (std::size_t j = 0; i + j <= max_len; ++j) {
      for (const auto& u : a[i]) {
        for (const auto& v : b[j]) {
          ObsWord w = u;
          w.insert(w.end(), v.begin(), v.end());
          out[i + j].insert(std::move(w));
        }
      }
    }
  }
  return out;
}

Buckets enumerate_buckets(const ObsExpr& e, std::size_t max_len) {
  Buckets out(max_len + 1);
  switch (e.kind()) {
    case ObsExpr::Kind::Empty:
      break;
    case ObsExpr::Kind::Epsilon:
      out[0].insert(ObsWord{});
      break;
    case ObsExpr::Kind::Atom:
      if (max_len >= 1) out[1].insert(ObsWord{e.symbol()});
      break;
    case ObsExpr::Kind::Concat:
      out = concat_buckets(enumerate_buckets(e.left(), max_len), enumerate_buckets(e.right(), max_len),
                           max_len);
      break;
    case ObsExpr::Kind::Union: {
      out = enumerate_buckets(e.left(), max_len);
      Buckets r = enumerate_buckets(e.right(), max_len);
      for (std::size_t i = 0; i <= max_len; ++i) out[i].merge(r[i]);
      break;
    }
    case ObsExpr::Kind::Star: {
      // {eps} plus every finite concatenation of body words: words of length L
      // are a nonempty body word of length i followed by a star word of length L-i.
      Buckets body = enumerate_buckets(e.body(), max_len);
      out[0].insert(ObsWord{});
      for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::size_t i = 1; i <= len; ++i) {
          for (const auto& u : body[i]) {
            for (const auto& v : out[len - i]) {
              ObsWord w = u;
              w.insert(w.end(), v.begin(), v.end());
              out[len].insert(std::move(w));
            }
          }
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

Alphabet symbols_of(const ObsExpr& e) {
  Alphabet out;
  collect_symbols(e, out);
  return out;
}

std::set<ObsWord> enumerate_words(const ObsExpr& e, std::size_t max_len) {
  if (max_len > kMaxEnumerationLength)
    throw LimitExceeded("enumerate_words: max_len " + std::to_string(max_len) + " exceeds " +
                        std::to_string(kMaxEnumerationLength));
  std::set<ObsWord> out;
  for (auto& bucket : enumerate_buckets(e, max_len)) out.merge(bucket);
  return out;
}

bool language_equal(const ObsExpr& a, const ObsExpr& b) {
  Alphabet sigma = symbols_of(a);
  sigma.merge(symbols_of(b));
  std::set<std::pair<ObsExpr, ObsExpr>> seen;
  std::deque<std::pair<ObsExpr, ObsExpr>> todo;
  todo.emplace_back(canonicalize(a), canonicalize(b));
  seen.insert(todo.front());
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    if (x.nullable() != y.nullable()) return false;
    if (is_empty_language(x) != is_empty_language(y)) return false;
    for (const auto& s : sigma) {
      std::pair<ObsExpr, ObsExpr> next{derive_canonical(x, s), derive_canonical(y, s)};
      if (seen.insert(next).second) {
        if (seen.size() > 1000000) throw LimitExceeded("language_equal: bisimulation too large");
        todo.push_back(std::move(next));
      }
    }
  }
  return true;
}

std::set<ObsExpr> derivative_closure(const ObsExpr& e, const Alphabet& alphabet, std::size_t limit) {
  std::set<ObsExpr> seen{canonicalize(e)};
  std::deque<ObsExpr> todo{*seen.begin()};
  while (!todo.empty()) {
    ObsExpr x = todo.front();
    todo.pop_front();
    for (const auto& s : alphabet) {
      ObsExpr d = derive_canonical(x, s);
      if (seen.insert(d).second) {
        if (seen.size() > limit) throw LimitExceeded("derivative closure exceeds limit");
        todo.push_back(std::move(d));
      }
    }
  }
  return seen;
}

// --- printing --------------------------------------------------------------------

namespace {

// 1: union, 2: concat, 3: star operand.
void print(const ObsExpr& e, int ctx, std::string& out) {
  switch (e.kind()) {
    case ObsExpr::Kind::Empty:
      out += "0";
      return;
    case ObsExpr::Kind::Epsilon:
      out += "1";
      return;
    case ObsExpr::Kind::Atom:
      out += e.symbol().to_string();
      return;
    case ObsExpr::Kind::Union:
      if (ctx > 1) out += "(";
      print(e.left(), 1, out);
      out += " + ";
      print(e.right(), 1, out);
      if (ctx > 1) out += ")";
      return;
    case ObsExpr::Kind::Concat:
      if (ctx > 2) out += "(";
      print(e.left(), 2, out);
      out += ";";
      print(e.right(), 2, out);
      if (ctx > 2) out += ")";
      return;
    case ObsExpr::Kind::Star:
      print(e.body(), 3, out);
      out += "*";
      return;
  }
}

}  // namespace

std::string to_string(const ObsExpr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

}  // namespace pol
