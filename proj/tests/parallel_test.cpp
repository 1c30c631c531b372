#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "pol/errors.hpp"
#include "pol/parallel.hpp"
#include "support/generators.hpp"
#include "support/three_sessions.hpp"

namespace {

namespace mu = pol::muddy;
namespace par = pol::parallel;
using mu::BitWorld;

std::set<std::string> bits_of(const mu::SessionState& s) {
  std::set<std::string> out;
  for (const auto& w : s.worlds()) out.insert(mu::to_string(w));
  return out;
}

std::set<BitWorld> set_of(const mu::SessionState& s) {
  const auto v = s.worlds();
  return {v.begin(), v.end()};
}

TEST(BuildParallel, FreshSessions) {
  const auto p = par::build_parallel(testgen::three_sessions());
  ASSERT_EQ(p.states.size(), 3u);
  EXPECT_EQ(p.states[0].worlds().size(), 4u);
  EXPECT_EQ(p.states[1].worlds().size(), 8u);
  EXPECT_EQ(p.states[2].worlds().size(), 4u);
  EXPECT_EQ(p.total_asked, 0u);
  EXPECT_FALSE(p.all_resolved());
}

TEST(BuildParallel, SingleSessionAndErrors) {
  const auto one = par::make_scenario({{"s1", {"a", "b"}}}, {"a"});
  const auto p = par::build_parallel(one);
  ASSERT_EQ(p.states.size(), 1u);
  EXPECT_EQ(p.states[0].worlds().size(), 4u);
  EXPECT_THROW(par::make_scenario({{"s1", {"a"}}, {"s1", {"a", "b"}}}, {"a"}), pol::ScenarioError);
  EXPECT_THROW(par::make_scenario({{"s1", {"a"}}, {"s2", {"b"}}}, {"a"}), pol::ScenarioError);
  EXPECT_THROW(p.index_of("s9"), pol::Error);
}

TEST(ParallelTrace, ThreeSessionWorkedExample) {
  const auto sc = testgen::three_sessions();
  auto p = par::build_parallel(sc);

  p = par::apply_action(p, "s1");
  EXPECT_EQ(bits_of(p.session("s1")), (std::set<std::string>{"01", "10", "11"}));
  EXPECT_EQ(bits_of(p.session("s2")).size(), 8u);
  EXPECT_EQ(bits_of(p.session("s3")).size(), 4u);

  p = par::apply_action(p, "s1");
  EXPECT_TRUE(mu::is_resolved(p.session("s1")));
  EXPECT_EQ(bits_of(p.session("s1")), (std::set<std::string>{"10"}));
  EXPECT_EQ(bits_of(p.session("s2")), (std::set<std::string>{"000", "001", "010", "011"}));
  EXPECT_EQ(bits_of(p.session("s3")), (std::set<std::string>{"10", "11"}));

  p = par::apply_action(p, "s3");
  EXPECT_TRUE(mu::is_resolved(p.session("s3")));
  EXPECT_EQ(bits_of(p.session("s3")), (std::set<std::string>{"11"}));
  EXPECT_EQ(bits_of(p.session("s2")), (std::set<std::string>{"001", "011"}));
  const auto& s3_log = p.session("s3").log;
  ASSERT_FALSE(s3_log.empty());
  EXPECT_TRUE(std::any_of(s3_log.begin(), s3_log.end(), [](const mu::Event& e) {
    return e.kind == mu::Event::Kind::Declare && e.declarer == "a";
  }));

  p = par::apply_action(p, "s2");
  EXPECT_TRUE(p.all_resolved());
  EXPECT_EQ(p.total_asked, 4u);
  EXPECT_THROW(par::apply_action(p, "s2"), pol::AlreadyResolved);
}

TEST(ParallelTrace, RunScheduleMatchesStepping) {
  const auto sc = testgen::three_sessions();
  const auto r = par::run_schedule(sc, {"s1", "s1", "s3", "s2"});
  EXPECT_TRUE(r.state.all_resolved());
  EXPECT_EQ(r.state.total_asked, 4u);
  EXPECT_EQ(r.trace, r.state.log);

  const auto empty = par::run_schedule(sc, {});
  EXPECT_FALSE(empty.state.all_resolved());
  EXPECT_EQ(empty.state.total_asked, 0u);
}

TEST(ParallelTrace, FirstQuestionDoesNotPropagate) {
  const auto sc = testgen::three_sessions();
  const auto fresh = par::build_parallel(sc);
  const auto p = par::apply_action(fresh, "s1");
  ASSERT_EQ(p.log.size(), 1u);
  EXPECT_EQ(p.log[0].event.kind, mu::Event::Kind::Announce);
  const auto [same, events] = par::propagate("s2", fresh);
  EXPECT_TRUE(events.empty());
  EXPECT_EQ(par::fingerprint(same), par::fingerprint(fresh));
}

// Starting with s3 resolves its worlds to {11} after two questions, but no
// declaration has happened yet, so s3 needs a third question.
TEST(ParallelTrace, StartingWithS3LeavesItUndeclared) {
  const auto sc = testgen::three_sessions();
  const auto r = par::run_schedule(sc, {"s3", "s3", "s1", "s2"});
  EXPECT_EQ(r.state.total_asked, 4u);
  EXPECT_TRUE(mu::is_resolved(r.state.session("s1")));
  EXPECT_TRUE(mu::is_resolved(r.state.session("s2")));
  EXPECT_EQ(bits_of(r.state.session("s3")), (std::set<std::string>{"11"}));
  EXPECT_TRUE(mu::everyone_knows(r.state.session("s3")));
  EXPECT_FALSE(mu::is_resolved(r.state.session("s3")));
  const auto r5 = par::run_schedule(sc, {"s3", "s3", "s1", "s2", "s3"});
  EXPECT_TRUE(r5.state.all_resolved());
}

TEST(Sequential, Examples) {
  EXPECT_EQ(par::sequential_counts(testgen::three_sessions()), (std::vector<std::size_t>{2, 3, 3}));
  EXPECT_EQ(par::sequential_total(testgen::three_sessions()), 8u);
  EXPECT_EQ(par::sequential_total(par::make_scenario({{"s1", {"a", "b", "c"}}}, {"a", "c"})), 3u);
  EXPECT_EQ(par::sequential_total(par::make_scenario({{"s1", {"a", "b"}}, {"s2", {"c", "d"}}}, {"a", "b", "c", "d"})),
            6u);
}

TEST(Search, ThreeSessionsNeedFour) {
  const auto sc = testgen::three_sessions();
  const auto res = par::search_min_schedule(sc, 8);
  EXPECT_EQ(res.count, 4u);
  ASSERT_EQ(res.witness.size(), 4u);
  EXPECT_TRUE(par::run_schedule(sc, res.witness).state.all_resolved());
  EXPECT_THROW(par::search_min_schedule(sc, 3), pol::BoundExceeded);
}

TEST(Search, SingleSessionIsNPlusOne) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> agents{"a", "b", "c", "d"};
    std::set<std::string> muddy(agents.begin(), agents.begin() + static_cast<std::ptrdiff_t>(n));
    const auto sc = par::make_scenario({{"s", agents}}, muddy);
    const auto res = par::search_min_schedule(sc, 10);
    EXPECT_EQ(res.count, n + 1);
    EXPECT_EQ(res.witness, par::Schedule(n + 1, "s"));
  }
}

TEST(Search, DisjointSessionsAddUp) {
  const auto sc = par::make_scenario({{"s1", {"a", "b"}}, {"s2", {"c", "d", "e"}}}, {"a", "b", "e"});
  EXPECT_EQ(par::search_min_schedule(sc, 10).count, par::sequential_total(sc));
  EXPECT_EQ(par::sequential_total(sc), 3u + 2u);
}

TEST(Search, AllMinimalWitnessesAgreeOnFinalWorlds) {
  const auto sc = testgen::three_sessions();
  const std::vector<std::string> ids{"s1", "s2", "s3"};
  std::vector<std::vector<std::set<BitWorld>>> finals;
  std::size_t witnesses = 0;
  for (std::size_t code = 0; code < 81; ++code) {
    par::Schedule sch;
    for (std::size_t c = code, i = 0; i < 4; ++i, c /= 3) sch.push_back(ids[c % 3]);
    par::ParallelState p = par::build_parallel(sc);
    bool ok = true;
    for (const auto& s : sch) {
      if (mu::is_resolved(p.session(s))) {
        ok = false;
        break;
      }
      p = par::apply_action(p, s);
    }
    if (!ok || !p.all_resolved()) continue;
    ++witnesses;
    std::vector<std::set<BitWorld>> sets;
    for (const auto& st : p.states) sets.push_back(set_of(st));
    finals.push_back(sets);
  }
  ASSERT_GT(witnesses, 0u);
  for (const auto& f : finals) EXPECT_EQ(f, finals.front());
}

// --- properties ------------------------------------------------------------------

TEST(ParallelProperties, RandomSchedulesKeepInvariants) {
  testgen::Rng rng(555);
  for (int i = 0; i < 300; ++i) {
    const auto sc = testgen::scenario(rng, 4, 6);
    par::ParallelState p = par::build_parallel(sc);
    for (std::size_t step = 0; step < 40 && !p.all_resolved(); ++step) {
      std::vector<std::size_t> open;
      for (std::size_t k = 0; k < p.states.size(); ++k)
        if (!mu::is_resolved(p.states[k])) open.push_back(k);
      const std::size_t pick = open[testgen::uniform(rng, 0, open.size() - 1)];
      const par::ParallelState next = par::apply_action(p, p.states[pick].spec.id);
      std::size_t sum = 0;
      for (std::size_t k = 0; k < p.states.size(); ++k) {
        const auto before = set_of(p.states[k]);
        const auto after = set_of(next.states[k]);
        ASSERT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
        ASSERT_TRUE(next.states[k].contains(next.states[k].spec.actual_world()));
        sum += next.states[k].asked;
      }
      ASSERT_EQ(next.total_asked, sum);
      ASSERT_TRUE(par::statuses_consistent(next));
      const auto [again, events] = par::propagate(p.states[pick].spec.id, next);
      ASSERT_TRUE(events.empty());
      ASSERT_EQ(par::fingerprint(again), par::fingerprint(next));
      p = next;
    }
    ASSERT_TRUE(p.all_resolved());
  }
}

TEST(ParallelProperties, SearchNeverWorseThanSequential) {
  testgen::Rng rng(777);
  for (int i = 0; i < 60; ++i) {
    const auto sc = testgen::scenario(rng, 3, 4);
    const std::size_t seq = par::sequential_total(sc);
    const auto res = par::search_min_schedule(sc, seq);
    ASSERT_LE(res.count, seq);
    ASSERT_TRUE(par::run_schedule(sc, res.witness).state.all_resolved());
  }
}

}  // namespace
