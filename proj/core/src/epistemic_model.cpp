#include "pol/epistemic_model.hpp"


#include "pol/errors.hpp"

namespace pol {

std::vector<WorldId> EpistemicModel::successors(const AgentName& agent, WorldId w) const {
  auto rel = relations.find(agent);
  if (rel == relations.end()) throw UnknownAgent("unknown agent '" + agent + "'");
  std::vector<WorldId> out;
  for (auto it = rel->second.lower_bound({w, WorldId{0}}); it != rel->second.end() && it->first == w;
       ++it)
    out.push_back(it->second);
  return out;
}

EpistemicModel EpistemicModel::restricted_to(const WorldSet& keep) const {
  EpistemicModel out;
  for (WorldId w : worlds)
    if (keep.contains(w)) out.worlds.insert(w);
  for (const auto& [agent, rel] : relations) {
    Relation& r = out.relations[agent];
    for (const auto& edge : rel)
      if (out.worlds.contains(edge.first) && out.worlds.contains(edge.second)) r.insert(r.end(), edge);
  }
  for (const auto& [atom, ext] : valuation) {
    WorldSet& v = out.valuation[atom];
    for (WorldId w : ext)
      if (out.worlds.contains(w)) v.insert(v.end(), w);
  }
  return out;
}

const ObsExpr& ExpectationModel::expectation(WorldId w) const {
  auto it = exp.find(w);
  if (it == exp.end()) throw WorldNotFound("world " + std::to_string(w.value) + " not in model");
  return it->second;
}

ExpectationModel ExpectationModel::restricted_to(const WorldSet& keep) const {
  ExpectationModel out;
  out.skeleton = skeleton.restricted_to(keep);
  for (WorldId w : out.skeleton.worlds) {
    auto it = exp.find(w);
    if (it != exp.end()) out.exp.emplace(w, it->second);
  }
  return out;
}

ExpectationModel observe_symbol(const ExpectationModel& m, const ActionSymbol& symbol) {
  std::map<WorldId, ObsExpr> next;
  WorldSet keep;
  for (const auto& [w, e] : m.exp) {
    if (!m.skeleton.worlds.contains(w)) continue;
    ObsExpr d = derivative(e, symbol);
    if (is_empty_language(d)) continue;
    keep.insert(w);
    next.emplace(w, std::move(d));
  }
  ExpectationModel out;
  out.skeleton = m.skeleton.restricted_to(keep);
  out.exp = std::move(next);
  return out;
}

ExpectationModel update_by_observation(const ExpectationModel& m, const ObsWord& word) {
  WorldSet keep;
  std::map<WorldId, ObsExpr> next;
  for (const auto& [w, e] : m.exp) {
    if (!m.skeleton.worlds.contains(w)) continue;
    ObsExpr r = residual(e, word);
    if (is_empty_language(r)) continue;
    keep.insert(w);
    next.emplace(w, std::move(r));
  }
  if (keep.empty()) throw EmptyModel("no world survives observation " + to_string(word));
  ExpectationModel out;
  out.skeleton = m.skeleton.restricted_to(keep);
  out.exp = std::move(next);
  return out;
}

bool equivalent_models(const ExpectationModel& a, const ExpectationModel& b) {
  if (!(a.skeleton == b.skeleton)) return false;
  if (a.exp.size() != b.exp.size()) return false;
  for (const auto& [w, e] : a.exp) {
    auto it = b.exp.find(w);
    if (it == b.exp.end() || !language_equal(e, it->second)) return false;
  }
  return true;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonEmptiness:
      return "NonEmptinessViolation";
    case ViolationKind::MissingExpectation:
      return "MissingExpectation";
    case ViolationKind::DanglingWorld:
      return "DanglingWorld";
    case ViolationKind::Equivalence:
      return "EquivalenceViolation";
  }
  return "?";
}

std::vector<Violation> validate_model(const ExpectationModel& m, bool s5) {
  std::vector<Violation> out;
  const WorldSet& worlds = m.skeleton.worlds;
  auto id = [](WorldId w) { return std::to_string(w.value); };

  for (WorldId w : worlds) {
    auto it = m.exp.find(w);
    if (it == m.exp.end())
      out.push_back({ViolationKind::MissingExpectation, id(w), "no expectation"});
    else if (is_empty_language(it->second))
      out.push_back({ViolationKind::NonEmptiness, id(w), "L(" + to_string(it->second) + ") is empty"});
  }
  for (const auto& [w, e] : m.exp)
    if (!worlds.contains(w)) out.push_back({ViolationKind::DanglingWorld, id(w), "expectation"});
  for (const auto& [agent, rel] : m.skeleton.relations)
    for (const auto& [v, u] : rel)
      if (!worlds.contains(v) || !worlds.contains(u))
        out.push_back({ViolationKind::DanglingWorld, agent, "edge " + id(v) + "->" + id(u)});
  for (const auto& [atom, ext] : m.skeleton.valuation)
    for (WorldId w : ext)
      if (!worlds.contains(w)) out.push_back({ViolationKind::DanglingWorld, atom, "valuation " + id(w)});

  if (s5) {
    for (const auto& [agent, rel] : m.skeleton.relations) {
      std::string problem;
      for (WorldId w : worlds)
        if (!rel.contains({w, w})) problem = "not reflexive at " + id(w);
      for (const auto& [v, u] : rel) {
        if (problem.empty() && !rel.contains({u, v})) problem = "not symmetric on " + id(v) + "," + id(u);
        if (!problem.empty()) break;
        for (auto it = rel.lower_bound({u, WorldId{0}}); it != rel.end() && it->first == u; ++it) {
          if (!rel.contains({v, it->second})) {
            problem = "not transitive on " + id(v) + "," + id(u) + "," + id(it->second);
            break;
          }
        }
      }
      if (!problem.empty()) out.push_back({ViolationKind::Equivalence, agent, problem});
    }
  }
  return out;
}

}  // namespace pol
