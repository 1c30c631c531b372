#pragma once

// Reference implementations used only by tests. They work on explicitly
// enumerated word sets and never call derivative/residual.

#include <map>
#include <set>
#include <algorithm>

#include "pol/epistemic_model.hpp"
#include "pol/eval.hpp"
#include "pol/formula.hpp"
#include "pol/obs_expr.hpp"

namespace oracle {

using Words = std::set<pol::ObsWord>;

inline bool is_prefix(const pol::ObsWord& p, const pol::ObsWord& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

/// { beta : |beta| <= k and word.beta in L(e) } by bounded enumeration of L(e).
inline Words residual_words(const pol::ObsExpr& e, const pol::ObsWord& word, std::size_t k) {
  Words out;
  for (const auto& w : pol::enumerate_words(e, k + word.size()))
    if (is_prefix(word, w)) out.insert(pol::ObsWord(w.begin() + static_cast<std::ptrdiff_t>(word.size()), w.end()));
  return out;
}

/// Expectation model whose expectations are explicit finite word sets.
struct FiniteModel {
  pol::WorldSet worlds;
  std::map<pol::AgentName, pol::Relation> relations;
  std::map<pol::AtomName, pol::WorldSet> valuation;
  std::map<pol::WorldId, Words> lang;
};

/// Requires star-free expectations whose words have length <= 12.
inline FiniteModel finite_of(const pol::ExpectationModel& m) {
  FiniteModel f{m.skeleton.worlds, m.skeleton.relations, m.skeleton.valuation, {}};
  for (const auto& [w, e] : m.exp) f.lang[w] = pol::enumerate_words(e, 12);
  return f;
}

inline bool in_init(const pol::ObsWord& alpha, const Words& words) {
  for (const auto& w : words)
    if (is_prefix(alpha, w)) return true;
  return false;
}

inline FiniteModel update(const FiniteModel& m, const pol::ObsWord& alpha) {
  FiniteModel out;
  for (pol::WorldId w : m.worlds) {
    Words rest;
    for (const auto& word : m.lang.at(w))
      if (is_prefix(alpha, word))
        rest.insert(pol::ObsWord(word.begin() + static_cast<std::ptrdiff_t>(alpha.size()), word.end()));
    if (rest.empty()) continue;
    out.worlds.insert(w);
    out.lang[w] = std::move(rest);
  }
  for (const auto& [agent, rel] : m.relations) {
    pol::Relation& r = out.relations[agent];
    for (const auto& [x, y] : rel)
      if (out.worlds.contains(x) && out.worlds.contains(y)) r.insert({x, y});
  }
  for (const auto& [atom, ext] : m.valuation) {
    pol::WorldSet& v = out.valuation[atom];
    for (pol::WorldId x : ext)
      if (out.worlds.contains(x)) v.insert(x);
  }
  return out;
}

/// Truth by the defining clauses; boxes enumerate L(program) (star-free only).
inline bool holds(const FiniteModel& m, pol::WorldId w, const pol::Formula& f, pol::BoxGuard guard) {
  switch (f.kind()) {
    case pol::Formula::Kind::Top:
      return true;
    case pol::Formula::Kind::Atom:
      return m.valuation.at(f.name()).contains(w);
    case pol::Formula::Kind::Not:
      return !holds(m, w, f.operand(), guard);
    case pol::Formula::Kind::And:
      return holds(m, w, f.left(), guard) && holds(m, w, f.right(), guard);
    case pol::Formula::Kind::Or:
      return holds(m, w, f.left(), guard) || holds(m, w, f.right(), guard);
    case pol::Formula::Kind::Knows:
      for (const auto& [x, y] : m.relations.at(f.name()))
        if (x == w && !holds(m, y, f.operand(), guard)) return false;
      return true;
    case pol::Formula::Kind::Box:
      for (const auto& alpha : pol::enumerate_words(f.program(), 12)) {
        bool guard_ok = false;
        if (guard == pol::BoxGuard::EvaluationWorld) {
          guard_ok = m.worlds.contains(w) && in_init(alpha, m.lang.at(w));
        } else {
          for (pol::WorldId v : m.worlds) guard_ok = guard_ok || in_init(alpha, m.lang.at(v));
        }
        if (guard_ok && !holds(update(m, alpha), w, f.operand(), guard)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace oracle
