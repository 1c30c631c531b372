#include <gtest/gtest.h>

#include <algorithm>

#include "pol/errors.hpp"
#include "pol/eval.hpp"
#include "pol/muddy.hpp"
#include "pol/obs_parse.hpp"
#include "support/generators.hpp"

namespace {

namespace mu = pol::muddy;
using mu::BitWorld;
using mu::Event;
using mu::SessionState;

BitWorld W(const char* bits) { return BitWorld::parse(bits); }

std::set<BitWorld> worlds_of(const SessionState& s) {
  const auto v = s.worlds();
  return {v.begin(), v.end()};
}

std::set<BitWorld> set_of(std::initializer_list<const char*> bits) {
  std::set<BitWorld> out;
  for (const char* b : bits) out.insert(W(b));
  return out;
}

SessionState with_worlds(const mu::SessionSpec& spec, const std::set<BitWorld>& keep) {
  SessionState s = mu::build_session(spec);
  std::set<BitWorld> drop;
  for (const auto& w : s.worlds())
    if (!keep.contains(w)) drop.insert(w);
  mu::remove_worlds(s, drop);
  return s;
}

std::vector<std::string> agent_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

mu::SessionSpec spec_from_mask(std::size_t k, std::uint32_t mask) {
  const auto agents = agent_names(k);
  std::set<std::string> muddy;
  for (std::size_t i = 0; i < k; ++i)
    if ((mask >> i) & 1u) muddy.insert(agents[i]);
  return mu::make_spec("s", agents, muddy);
}

TEST(BitWorldTest, ParseAndPrint) {
  const BitWorld w = W("011");
  EXPECT_FALSE(w.bit(0));
  EXPECT_TRUE(w.bit(1));
  EXPECT_TRUE(w.bit(2));
  EXPECT_EQ(w.ones(), 2u);
  EXPECT_EQ(mu::to_string(w), "011");
  EXPECT_THROW(BitWorld::parse("01x"), pol::Error);
}

TEST(BuildSession, TwoAgentShape) {
  const auto s = mu::build_session(mu::make_spec("s1", {"a", "b"}, {"a"}));
  EXPECT_EQ(s.worlds().size(), 4u);
  const pol::Relation& ra = s.model.skeleton.relations.at("a");
  const pol::Relation expected{{W("00").id(), W("00").id()}, {W("00").id(), W("10").id()},
                               {W("10").id(), W("00").id()}, {W("10").id(), W("10").id()},
                               {W("01").id(), W("01").id()}, {W("01").id(), W("11").id()},
                               {W("11").id(), W("01").id()}, {W("11").id(), W("11").id()}};
  EXPECT_EQ(ra, expected);
  EXPECT_TRUE(pol::language_equal(s.model.expectation(W("11").id()), pol::parse_obs("QF;QF")));
  EXPECT_TRUE(pol::language_equal(s.model.expectation(W("00").id()), pol::parse_obs("1")));
  EXPECT_TRUE(pol::validate_model(s.model, true).empty());
}

TEST(BuildSession, RejectsSessionWithoutMuddyAgent) {
  EXPECT_THROW(mu::validate_spec(mu::make_spec("s1", {"a", "b"}, {})), pol::ScenarioError);
  EXPECT_THROW(mu::validate_spec(mu::make_spec("s1", {"a", "a"}, {"a"})), pol::ScenarioError);
}

TEST(MuddyAt, Examples) {
  const auto spec = mu::make_spec("s1", {"a", "b"}, {"a"});
  EXPECT_TRUE(mu::muddy_at("a", W("10"), spec));
  EXPECT_FALSE(mu::muddy_at("b", W("10"), spec));
  EXPECT_TRUE(mu::muddy_at("a", W("11"), spec));
  EXPECT_TRUE(mu::muddy_at("b", W("11"), spec));
  EXPECT_THROW(mu::muddy_at("z", W("11"), spec), pol::UnknownAgent);
}

TEST(MuddyStatus, Examples) {
  const auto ad = mu::make_spec("s3", {"a", "d"}, {"a", "d"});
  EXPECT_EQ(mu::muddy_status(with_worlds(ad, set_of({"10", "11"})), "a"), mu::Status::Muddy);
  EXPECT_EQ(mu::muddy_status(with_worlds(ad, set_of({"10", "11"})), "d"), mu::Status::Undefined);
  EXPECT_EQ(mu::muddy_status(mu::build_session(ad), "a"), mu::Status::Undefined);
  const auto ab = mu::make_spec("s1", {"a", "b"}, {"a"});
  EXPECT_EQ(mu::muddy_status(with_worlds(ab, set_of({"10"})), "b"), mu::Status::Clean);
  EXPECT_EQ(mu::to_string(mu::Status::Undefined), "undefined");
}

TEST(AgentKnowsOwn, Examples) {
  const auto ab = mu::make_spec("s1", {"a", "b"}, {"a"});
  const auto after = with_worlds(ab, set_of({"01", "10", "11"}));
  EXPECT_TRUE(mu::agent_knows_own(after, "a", W("10")));
  EXPECT_FALSE(mu::agent_knows_own(after, "a", W("11")));
  const auto fresh = mu::build_session(ab);
  for (const auto& w : fresh.worlds())
    for (const char* a : {"a", "b"}) EXPECT_FALSE(mu::agent_knows_own(fresh, a, w));
  const auto single = with_worlds(ab, set_of({"11"}));
  EXPECT_TRUE(mu::agent_knows_own(single, "a", W("11")));
  EXPECT_TRUE(mu::agent_knows_own(single, "b", W("11")));
  EXPECT_THROW(mu::agent_knows_own(single, "a", W("00")), pol::WorldNotFound);
}

TEST(CountingWorlds, Examples) {
  const auto ab = mu::make_spec("s1", {"a", "b"}, {"a"});
  EXPECT_EQ(mu::counting_worlds(ab, 1), set_of({"01", "10", "11"}));
  EXPECT_EQ(mu::counting_worlds(ab, 0), set_of({"00", "01", "10", "11"}));
  const auto bcd = mu::make_spec("s2", {"b", "c", "d"}, {"c", "d"});
  EXPECT_EQ(mu::counting_worlds(bcd, 2), set_of({"110", "101", "011", "111"}));
}

TEST(AskQuestion, TwoAgentOneMuddy) {
  const auto s0 = mu::build_session(mu::make_spec("s1", {"a", "b"}, {"a"}));
  const auto [s1, ev1] = mu::ask_question(s0);
  ASSERT_EQ(ev1.size(), 1u);
  EXPECT_EQ(ev1[0].kind, Event::Kind::Announce);
  EXPECT_EQ(ev1[0].removed, std::vector<BitWorld>{W("00")});
  EXPECT_FALSE(mu::is_resolved(s1));

  const auto [s2, ev2] = mu::ask_question(s1);
  ASSERT_EQ(ev2.size(), 1u);
  EXPECT_EQ(ev2[0].kind, Event::Kind::Declare);
  EXPECT_EQ(ev2[0].declarer, "a");
  EXPECT_EQ(worlds_of(s2), set_of({"10"}));
  EXPECT_TRUE(mu::is_resolved(s2));
  EXPECT_THROW(mu::ask_question(s2), pol::AlreadyResolved);
}

TEST(AskQuestion, NobodyKnowsRemovesSingletons) {
  auto s = mu::build_session(mu::make_spec("s2", {"b", "c", "d"}, {"c", "d"}));
  s = mu::ask_question(s).first;
  const auto [s2, ev] = mu::ask_question(s);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].kind, Event::Kind::NobodyKnows);
  EXPECT_EQ(std::set<BitWorld>(ev[0].removed.begin(), ev[0].removed.end()), set_of({"100", "010", "001"}));
  EXPECT_EQ(worlds_of(s2), set_of({"110", "101", "011", "111"}));
}

TEST(IsResolved, Examples) {
  const auto ab = mu::make_spec("s1", {"a", "b"}, {"a"});
  EXPECT_FALSE(mu::is_resolved(mu::build_session(ab)));
  EXPECT_TRUE(mu::everyone_knows(with_worlds(ab, set_of({"10"}))));
  const auto ad = mu::make_spec("s3", {"a", "d"}, {"a", "d"});
  EXPECT_FALSE(mu::everyone_knows(with_worlds(ad, set_of({"10", "11"}))));
  EXPECT_FALSE(mu::is_resolved(with_worlds(ad, set_of({"10", "11"}))));
}

TEST(QuestionsToResolve, Examples) {
  EXPECT_EQ(mu::questions_to_resolve(mu::make_spec("s1", {"a", "b"}, {"a"})), 2u);
  EXPECT_EQ(mu::questions_to_resolve(mu::make_spec("s2", {"b", "c", "d"}, {"c", "d"})), 3u);
  EXPECT_EQ(mu::questions_to_resolve(mu::make_spec("s3", {"a", "d"}, {"a", "d"})), 3u);
}

TEST(QuestionsToResolve, NPlusOneForEverySubset) {
  for (std::size_t k = 1; k <= 6; ++k) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      const auto spec = spec_from_mask(k, mask);
      ASSERT_EQ(mu::questions_to_resolve(spec), spec.muddy_count() + 1) << "k=" << k << " mask=" << mask;
    }
  }
}

TEST(ProtocolEval, QuestionsExecuteTheSessionRule) {
  const auto s = mu::build_session(mu::make_spec("s1", {"a", "b"}, {"a"}));
  const auto claim = pol::parse_formula("[QF;QF](K(a,m_a) & K(b,!m_b))");
  EXPECT_TRUE(mu::eval_protocol(s, W("10"), claim));
  EXPECT_TRUE(mu::valid_protocol(s, claim));
  EXPECT_FALSE(pol::valid_in(s.model, claim));
  EXPECT_TRUE(mu::valid_protocol(s, pol::Formula::top()));
  EXPECT_TRUE(mu::eval_protocol(s, W("10"), pol::parse_formula("[QF@s1] !K(b, !m_b)")));
  // A question addressed to another session is not executable here.
  EXPECT_TRUE(mu::eval_protocol(s, W("10"), pol::parse_formula("[QF@s2] m_b")));
  EXPECT_THROW(mu::eval_protocol(s, W("10"), pol::parse_formula("zz")), pol::UnknownAtom);
}

// --- properties ------------------------------------------------------------------

TEST(MuddyProperties, CountingMatchesResiduation) {
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      const auto spec = spec_from_mask(k, mask);
      const auto s = mu::build_session(spec);
      for (std::size_t i = 0; i <= k + 1; ++i) {
        const pol::ObsWord word(i, mu::question_symbol());
        std::set<BitWorld> got;
        try {
          const auto updated = pol::update_by_observation(s.model, word);
          for (pol::WorldId id : updated.worlds()) got.insert(BitWorld::from_id(id, k));
        } catch (const pol::EmptyModel&) {
        }
        ASSERT_EQ(got, mu::counting_worlds(spec, i)) << "k=" << k << " i=" << i;
      }
    }
  }
}

TEST(MuddyProperties, RunsAreTruthfulMonotoneAndSound) {
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      SessionState s = mu::build_session(spec_from_mask(k, mask));
      const BitWorld actual = s.spec.actual_world();
      while (!mu::is_resolved(s)) {
        const auto before = worlds_of(s);
        const auto [next, events] = mu::ask_question(s);
        ASSERT_EQ(next.asked, s.asked + 1);
        ASSERT_TRUE(next.contains(actual));
        const auto after = worlds_of(next);
        ASSERT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
        for (const Event& e : events) {
          if (e.kind != Event::Kind::NobodyKnows) continue;
          auto knows_somewhere = [&](const BitWorld& w) {
            return std::any_of(s.spec.agents.begin(), s.spec.agents.end(),
                               [&](const auto& a) { return mu::agent_knows_own(s, a, w); });
          };
          for (const BitWorld& w : e.removed) ASSERT_TRUE(knows_somewhere(w));
          for (const BitWorld& w : after) ASSERT_FALSE(knows_somewhere(w));
          // Fresh sessions: the removed worlds are exactly those with i-1 muddy agents.
          std::set<BitWorld> expected;
          for (const BitWorld& w : before)
            if (w.ones() == next.asked - 1) expected.insert(w);
          ASSERT_EQ(std::set<BitWorld>(e.removed.begin(), e.removed.end()), expected);
        }
        s = next;
      }
    }
  }
}

}  // namespace
