#include <benchmark/benchmark.h>

#include "pol/eval.hpp"
#include "pol/muddy.hpp"
#include "pol/obs_parse.hpp"
#include "pol/parallel.hpp"

namespace {

void BM_DerivativeClosure(benchmark::State& state) {
  // (a + b)*;a;(a + b)^n has 2^(n+1) residual classes.
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto e = pol::parse_obs("(a + b)*;a;(a + b)^" + std::to_string(n));
  const pol::Alphabet sigma{{"a", std::nullopt}, {"b", std::nullopt}};
  std::size_t states = 0;
  for (auto _ : state) {
    states = pol::derivative_closure(pol::canonicalize(e), sigma).size();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_DerivativeClosure)->DenseRange(2, 8, 2);

void BM_QuestionsToResolve(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> agents;
  for (std::size_t i = 0; i < k; ++i) agents.push_back("g" + std::to_string(i));
  const auto spec = pol::muddy::make_spec("s", agents, {agents.begin(), agents.end()});
  for (auto _ : state) benchmark::DoNotOptimize(pol::muddy::questions_to_resolve(spec));
}
BENCHMARK(BM_QuestionsToResolve)->DenseRange(2, 8, 1);

void BM_StarBoxEval(benchmark::State& state) {
  const auto s = pol::muddy::build_session(pol::muddy::make_spec("s", {"a", "b", "c", "d"}, {"a", "b", "c"}));
  const auto f = pol::parse_formula("[QF*] (K(a, m_a) | !K(a, m_a))");
  for (auto _ : state) benchmark::DoNotOptimize(pol::valid_in(s.model, f));
}
BENCHMARK(BM_StarBoxEval);

void BM_SearchThreeSessions(benchmark::State& state) {
  const auto sc = pol::parallel::make_scenario({{"s1", {"a", "b"}}, {"s2", {"b", "c", "d"}}, {"s3", {"a", "d"}}},
                                               {"a", "c", "d"});
  std::size_t explored = 0;
  for (auto _ : state) explored = pol::parallel::search_min_schedule(sc, 8).states_explored;
  state.counters["explored"] = static_cast<double>(explored);
}
BENCHMARK(BM_SearchThreeSessions);

void BM_SearchChain(benchmark::State& state) {
  // Sessions s_i = {x_i, x_{i+1}} in a chain, every agent muddy.
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::pair<std::string, std::vector<pol::AgentName>>> sessions;
  std::set<pol::AgentName> muddy;
  for (std::size_t i = 0; i < n; ++i) {
    sessions.push_back({"s" + std::to_string(i), {"x" + std::to_string(i), "x" + std::to_string(i + 1)}});
    muddy.insert("x" + std::to_string(i));
    muddy.insert("x" + std::to_string(i + 1));
  }
  const auto sc = pol::parallel::make_scenario(sessions, muddy);
  const std::size_t bound = pol::parallel::sequential_total(sc);
  for (auto _ : state) benchmark::DoNotOptimize(pol::parallel::search_min_schedule(sc, bound).count);
}
BENCHMARK(BM_SearchChain)->DenseRange(2, 4, 1);

}  // namespace

BENCHMARK_MAIN();
