#include <map>
#include <set>
#include <string>

#include "catch_amalgamated.hpp"
#include "syncsec/fixtures.hpp"
#include "syncsec/ndi.hpp"
#include "syncsec/nds.hpp"
#include "syncsec/random.hpp"
#include "syncsec/res.hpp"

using namespace syncsec;

namespace {

Machine self_loop_machine() {
  Machine m;
  m.states = {"s0"};
  m.initial = "s0";
  m.actions_h = {"a0", "a1"};
  m.actions_l = {"b0"};
  m.observations = {"o0"};
  m.obs["s0"] = {"o0", "o0"};
  m.trans = {{"s0", "a0", "b0", "s0"}, {"s0", "a1", "b0", "s0"}};
  return m;
}

// K(alpha-with-observations, beta): final states of runs whose H actions and
// H observations follow the given interleaved H history and whose L view is
// beta; literal enumeration.
std::set<std::string> brute_knowledge_h(
    const Machine& m, const std::vector<std::pair<std::string, std::string>>& hsteps,
    const View& beta) {
  std::set<std::string> out;
  for (const auto& r : enumerate_runs(m, hsteps.size()))
    if (r.length() == hsteps.size() && view_of_run(m, r, Agent::L) == beta) {
      auto hv = view_of_run(m, r, Agent::H);
      bool match = true;
      for (std::size_t i = 0; i < hsteps.size(); ++i)
        if (hv.trace[2 * i + 1] != hsteps[i].first ||
            hv.trace[2 * i + 2] != hsteps[i].second) {
          match = false;
          break;
        }
      if (match) out.insert(r.states.back());
    }
  return out;
}

}  // namespace

TEST_CASE("knowledge_update base cases on fig1") {
  auto m = fixture_fig1();
  REQUIRE(knowledge_update(m, {}, "0", "0", "0", "0").empty());
  // s2 is excluded because obs_H(s2) = 1
  REQUIRE(knowledge_update(m, {"s0"}, "0", "0", "0", "0") ==
          std::set<std::string>{"s1"});
}

TEST_CASE("knowledge_update matches literal run enumeration") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    for (const auto& r : enumerate_runs(m, 2)) {
      std::vector<std::pair<std::string, std::string>> hsteps;
      auto hv = view_of_run(m, r, Agent::H);
      for (std::size_t i = 0; i < r.length(); ++i)
        hsteps.push_back({hv.trace[2 * i + 1], hv.trace[2 * i + 2]});
      const View beta = view_of_run(m, r, Agent::L);
      const auto k = brute_knowledge_h(m, hsteps, beta);
      for (const auto& a : m.actions_h)
        for (const auto& oh : m.observations)
          for (const auto& b : m.actions_l)
            for (const auto& ol : m.observations) {
              auto h2 = hsteps;
              h2.push_back({a, oh});
              View b2 = beta;
              b2.trace.push_back(b);
              b2.trace.push_back(ol);
              REQUIRE(knowledge_update(m, k, a, oh, b, ol) ==
                      brute_knowledge_h(m, h2, b2));
            }
    }
  }
}

TEST_CASE("knowledge_update partitions delta_abo by H observation") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    std::set<std::string> k(m.states.begin(), m.states.end());
    for (const auto& a : m.actions_h)
      for (const auto& b : m.actions_l)
        for (const auto& ol : m.observations) {
          std::set<std::string> merged;
          for (const auto& oh : m.observations) {
            auto part = knowledge_update(m, k, a, oh, b, ol);
            merged.insert(part.begin(), part.end());
          }
          REQUIRE(merged == delta_abo(m, k, a, b, ol));
        }
  }
}

TEST_CASE("nds_step on the fig1 initial collection") {
  auto m = fixture_fig1();
  KnowledgeCollection q;
  q.universe = {"s0"};
  q.ksets = {{"s0"}};
  std::map<std::set<std::string>, std::string> rho{{{"s0"}, "0"}};

  auto next = nds_step(m, q, rho, "0", "0");
  REQUIRE(next.has_value());
  REQUIRE(next->universe == std::set<std::string>{"s1", "s2"});
  REQUIRE(next->ksets ==
          std::set<std::set<std::string>>{{"s1"}, {"s2"}});

  // no successor of s0 has L observation 1
  REQUIRE_FALSE(nds_step(m, q, rho, "0", "1").has_value());

  KnowledgeCollection empty_k;
  empty_k.universe = {"s0"};
  empty_k.ksets = {{}};
  std::map<std::set<std::string>, std::string> rho_e{{{}, "0"}};
  auto fix = nds_step(m, empty_k, rho_e, "0", "0");
  REQUIRE(fix.has_value());
  REQUIRE(fix->ksets == std::set<std::set<std::string>>{{}});

  std::map<std::set<std::string>, std::string> partial;
  REQUIRE_THROWS_AS(nds_step(m, q, partial, "0", "0"), std::invalid_argument);
}

TEST_CASE("check_nds verdicts on the fixtures") {
  auto v1 = check_nds(fixture_fig1());
  REQUIRE(v1.outcome == NdsOutcome::violates);
  std::string flat;
  for (const auto& e : v1.witness->excluded_view.trace) flat += e;
  REQUIRE((flat == "00000" || flat == "00001"));
  // the step-1 strategy acts on knowledge {s1} and {s2} with opposite actions
  REQUIRE(v1.witness->strategy.levels.size() == 2);
  const auto& lvl1 = v1.witness->strategy.levels[1];
  REQUIRE(lvl1.count({"s1"}));
  REQUIRE(lvl1.count({"s2"}));
  REQUIRE(lvl1.at({"s1"}) != lvl1.at({"s2"}));
  REQUIRE(strategy_excludes(fixture_fig1(), v1.witness->strategy,
                            v1.witness->excluded_view, 2));

  REQUIRE(check_nds(fixture_fig2()).outcome == NdsOutcome::satisfies);
  REQUIRE(check_nds(self_loop_machine()).outcome == NdsOutcome::satisfies);
}

TEST_CASE("check_nds reports exceeded limits instead of guessing") {
  NdsLimits limits;
  limits.visited_limit = 2;
  auto v = check_nds(fixture_fig2(), limits);
  REQUIRE(v.outcome == NdsOutcome::resource_exceeded);
  REQUIRE_FALSE(v.diagnostic.empty());
}

TEST_CASE("a blind constant strategy excludes nothing on fig1") {
  StrategyTable pi;
  pi.levels.resize(2);
  pi.levels[0][{"s0"}] = "0";
  pi.levels[1][{"s1"}] = "0";
  pi.levels[1][{"s2"}] = "0";
  View beta;
  beta.agent = Agent::L;
  beta.trace = {"0", "0", "0", "0", "1"};
  REQUIRE_FALSE(strategy_excludes(fixture_fig1(), pi, beta, 2));
  beta.trace = {"0", "0", "0", "0", "0"};
  REQUIRE_FALSE(strategy_excludes(fixture_fig1(), pi, beta, 2));
}

TEST_CASE("strategy_excludes is vacuously true on impossible views") {
  StrategyTable pi;
  View beta;
  beta.agent = Agent::L;
  beta.trace = {"1"};  // wrong initial observation
  REQUIRE(strategy_excludes(fixture_fig1(), pi, beta, 0));
}

TEST_CASE("strategy_excludes rejects undefined strategy entries") {
  StrategyTable pi;  // empty
  View beta;
  beta.agent = Agent::L;
  beta.trace = {"0", "0", "0"};
  REQUIRE_THROWS_AS(strategy_excludes(fixture_fig1(), pi, beta, 1),
                    std::invalid_argument);
}

TEST_CASE("emitted nds witnesses replay and are possible views") {
  int violations = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    auto v = check_nds(m);
    if (v.outcome != NdsOutcome::violates) continue;
    ++violations;
    const auto& w = *v.witness;
    REQUIRE(strategy_excludes(m, w.strategy, w.excluded_view,
                              w.excluded_view.length()));
    auto lang = l_view_language(m, w.excluded_view.length());
    REQUIRE(lang.count(w.excluded_view));
  }
  REQUIRE(violations > 0);
}

TEST_CASE("containment: res implies nds implies ndi on small samples") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    auto nds = check_nds(m);
    if (nds.outcome == NdsOutcome::resource_exceeded) continue;
    const bool nds_ok = nds.outcome == NdsOutcome::satisfies;
    const bool ndi_ok = check_ndi(m).satisfies;
    const bool res_ok = check_res(m).satisfies;
    if (res_ok) REQUIRE(nds_ok);
    if (nds_ok) REQUIRE(ndi_ok);
  }
}
