#include <set>
#include <string>

#include "catch_amalgamated.hpp"
#include "syncsec/fixtures.hpp"
#include "syncsec/ndi.hpp"
#include "syncsec/nds.hpp"
#include "syncsec/nfa.hpp"
#include "syncsec/oracle.hpp"
#include "syncsec/random.hpp"
#include "syncsec/res.hpp"

using namespace syncsec;

TEST_CASE("brute_ndi on fixtures and trivial machines") {
  REQUIRE(brute_ndi(fixture_fig1(), 10) == Verdict::satisfies);

  Machine one;
  one.states = {"s0"};
  one.initial = "s0";
  one.actions_h = {"a0", "a1"};
  one.actions_l = {"b0"};
  one.observations = {"o0"};
  one.obs["s0"] = {"o0", "o0"};
  one.trans = {{"s0", "a0", "b0", "s0"}, {"s0", "a1", "b0", "s0"}};
  REQUIRE(brute_ndi(one, 4) == Verdict::satisfies);

  Nfa a;
  a.states = {"q0", "q1"};
  a.initial = {"q0"};
  a.alphabet = {"a", "b"};
  a.final = {"q1"};
  a.trans = {{"q0", "a", "q0"}, {"q0", "b", "q0"}, {"q0", "a", "q1"}};
  REQUIRE_FALSE(nfa_universal(a));
  auto m = nfa_to_machine(a);
  REQUIRE(brute_ndi(m, m.states.size() * (1u << m.states.size())) ==
          Verdict::violates);
}

TEST_CASE("brute_ndi agrees with check_ndi at the sound horizon") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    const std::size_t depth = m.states.size() * (std::size_t{1} << m.states.size());
    REQUIRE((brute_ndi(m, depth) == Verdict::satisfies) ==
            check_ndi(m).satisfies);
  }
}

TEST_CASE("brute_nds on fixtures and self-loops") {
  Machine one;
  one.states = {"s0"};
  one.initial = "s0";
  one.actions_h = {"a0", "a1"};
  one.actions_l = {"b0"};
  one.observations = {"o0"};
  one.obs["s0"] = {"o0", "o0"};
  one.trans = {{"s0", "a0", "b0", "s0"}, {"s0", "a1", "b0", "s0"}};
  for (std::size_t d = 0; d <= 4; ++d)
    REQUIRE(brute_nds(one, d) == Verdict::satisfies);

  REQUIRE(brute_nds(fixture_fig1(), 2) == Verdict::violates);
  REQUIRE(brute_nds(fixture_fig2(), 4) == Verdict::satisfies);
}

TEST_CASE("brute_nds agrees with horizon-limited check_nds on tiny machines") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    RandomMachineParams p;
    p.num_states = 2;
    p.num_actions_h = 2;
    p.num_actions_l = 1;
    p.num_observations = 2;
    auto m = random_machine(seed, p);
    NdsLimits limits;
    limits.max_depth = 3;
    auto v = check_nds(m, limits);
    REQUIRE(v.outcome != NdsOutcome::resource_exceeded);
    REQUIRE((v.outcome == NdsOutcome::satisfies) ==
            (brute_nds(m, 3) == Verdict::satisfies));
  }
}

TEST_CASE("brute_res base cases") {
  Machine one;
  one.states = {"s0"};
  one.initial = "s0";
  one.actions_h = {"a0"};
  one.actions_l = {"b0"};
  one.observations = {"o0"};
  one.obs["s0"] = {"o0", "o0"};
  one.trans = {{"s0", "a0", "b0", "s0"}};
  auto r = brute_res(one);
  REQUIRE(r.verdict == Verdict::satisfies);
  REQUIRE(r.survivors ==
          std::vector<std::set<std::pair<std::string, std::string>>>{
              {{"s0", "s0"}}});

  // hand-reduced variant of the fig2 branching core: the H action picks
  // between distinguishable L futures, so no unwinding exists
  Machine core;
  core.states = {"s0", "s1", "s2", "s3"};
  core.initial = "s0";
  core.actions_h = {"0", "1"};
  core.actions_l = {"0"};
  core.observations = {"0", "1"};
  core.obs["s0"] = {"0", "0"};
  core.obs["s1"] = {"0", "0"};
  core.obs["s2"] = {"0", "0"};
  core.obs["s3"] = {"0", "1"};
  core.trans = {{"s0", "0", "0", "s1"}, {"s0", "1", "0", "s2"}};
  for (const char* a : {"0", "1"}) {
    core.trans.push_back({"s1", a, "0", "s1"});
    core.trans.push_back({"s2", a, "0", "s3"});
    core.trans.push_back({"s3", a, "0", "s2"});
  }
  REQUIRE(validate_machine(core).ok());
  REQUIRE(brute_res(core).verdict == Verdict::violates);
  REQUIRE_FALSE(check_res(core).satisfies);
}

TEST_CASE("brute_res agrees with check_res and closes under union") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    RandomMachineParams p;
    p.num_states = 4;
    p.num_actions_h = seed % 2 ? 2 : 1;
    auto m = random_machine(seed, p);
    auto fast = check_res(m);
    auto brute = brute_res(m);
    REQUIRE(fast.satisfies == (brute.verdict == Verdict::satisfies));
    const auto reach = reachable_restriction(m);
    const std::size_t probe = std::min<std::size_t>(brute.survivors.size(), 4);
    for (std::size_t i = 0; i < probe; ++i) {
      for (std::size_t j = 0; j < probe; ++j) {
        // union closure
        std::set<std::pair<std::string, std::string>> u = brute.survivors[i];
        u.insert(brute.survivors[j].begin(), brute.survivors[j].end());
        REQUIRE(is_unwinding(reach, u));
      }
      // composition with itself stays symmetric and is an unwinding
      std::set<std::pair<std::string, std::string>> comp;
      for (const auto& [a, b] : brute.survivors[i])
        for (const auto& [c, d] : brute.survivors[i])
          if (b == c) comp.insert({a, d});
      REQUIRE(is_unwinding(reach, comp));
    }
  }
}
