// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds and envelopes are pinned here, not configurable.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "syncsec/fixtures.hpp"
#include "syncsec/ndi.hpp"
#include "syncsec/nds.hpp"
#include "syncsec/nfa.hpp"
#include "syncsec/oracle.hpp"
#include "syncsec/peek.hpp"
#include "syncsec/random.hpp"
#include "syncsec/res.hpp"

using namespace syncsec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool view_is_possible(const Machine& m, const View& beta) {
  CompiledMachine cm(m);
  if (beta.trace.at(0) != cm.observation_name(cm.obs_l(cm.initial())))
    return false;
  StateSet r = cm.singleton(cm.initial());
  for (std::size_t i = 0; i < beta.length(); ++i) {
    r = cm.view_step(r, cm.action_l_index(beta.trace[2 * i + 1]),
                     cm.observation_index(beta.trace[2 * i + 2]));
    if (r.none()) return false;
  }
  return true;
}

// Random machine whose transitions ignore the H action, so check_res gets
// past the reflexivity test and exercises the refinement loop.
Machine h_independent_machine(std::uint64_t seed, std::size_t num_states) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
  auto below = [&](std::size_t n) { return rng() % n; };
  Machine m;
  for (std::size_t i = 0; i < num_states; ++i)
    m.states.push_back("s" + std::to_string(i));
  m.initial = "s0";
  m.actions_h = {"a0", "a1"};
  m.actions_l = {"b0", "b1"};
  m.observations = {"o0", "o1"};
  for (const auto& s : m.states)
    m.obs[s] = {m.observations[below(2)], m.observations[below(2)]};
  for (const auto& s : m.states)
    for (const auto& b : m.actions_l) {
      std::vector<std::string> dsts{m.states[below(num_states)]};
      if (below(2)) dsts.push_back(m.states[below(num_states)]);
      for (const auto& d : dsts)
        for (const auto& a : m.actions_h) m.trans.push_back({s, a, b, d});
    }
  return canonicalize(m);
}

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool crit_fixture_verdicts(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  const Machine f1 = fixture_fig1(), f2 = fixture_fig2();
  bool ok = true;
  ok &= check_ndi(f1).satisfies;
  ok &= check_ndi(f2).satisfies;
  ok &= check_nds(f1).outcome == NdsOutcome::violates;
  ok &= check_nds(f2).outcome == NdsOutcome::satisfies;
  ok &= !check_res(f1).satisfies;
  ok &= !check_res(f2).satisfies;
  const double secs = seconds_since(t0);
  ok &= secs < 1.0;
  std::ostringstream os;
  os << "6 verdicts in " << secs << " s";
  note = os.str();
  return ok;
}

bool crit_containment(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, exceeded = 0;
  bool ok = true;
  NdsLimits limits;
  limits.visited_limit = std::size_t{1} << 18;
  for (std::uint64_t seed = 1; seed <= 220; ++seed) {
    RandomMachineParams p;  // 4 states, 2 H / 2 L actions, 2 observations
    auto m = random_machine(seed, p);
    auto nds = check_nds(m, limits);
    if (nds.outcome == NdsOutcome::resource_exceeded) {
      ++exceeded;
      continue;
    }
    ++checked;
    const bool res = check_res(m).satisfies;
    const bool nds_sat = nds.outcome == NdsOutcome::satisfies;
    const bool ndi = check_ndi(m).satisfies;
    if (res && !nds_sat) ok = false;
    if (nds_sat && !ndi) ok = false;
  }
  // strictness: fig1 separates NDS from NDI, fig2 separates RES from NDS
  ok &= check_ndi(fixture_fig1()).satisfies &&
        check_nds(fixture_fig1()).outcome == NdsOutcome::violates;
  ok &= check_nds(fixture_fig2()).outcome == NdsOutcome::satisfies &&
        !check_res(fixture_fig2()).satisfies;
  ok &= checked >= 200;
  ok &= exceeded * 20 < checked + exceeded;  // < 5%
  const double secs = seconds_since(t0);
  ok &= secs < 300.0;
  std::ostringstream os;
  os << checked << " machines, " << exceeded << " resource-exceeded, " << secs
     << " s";
  note = os.str();
  return ok;
}

bool crit_oracle_equivalence(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t disagreements = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    RandomMachineParams p;
    p.num_states = 3;
    auto m = random_machine(seed, p);
    const std::size_t depth =
        m.states.size() * (std::size_t{1} << m.states.size());
    if (check_ndi(m).satisfies != (brute_ndi(m, depth) == Verdict::satisfies))
      ++disagreements;
  }
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    RandomMachineParams p;
    p.num_states = 4;
    auto m = random_machine(seed, p);
    if (check_res(m).satisfies != (brute_res(m).verdict == Verdict::satisfies))
      ++disagreements;
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomMachineParams p;
    p.num_states = 2;
    p.num_actions_h = 2;
    p.num_actions_l = 1;
    p.num_observations = 2;
    auto m = random_machine(seed, p);
    NdsLimits limits;
    limits.max_depth = 3;
    auto v = check_nds(m, limits);
    if (v.outcome == NdsOutcome::resource_exceeded ||
        (v.outcome == NdsOutcome::satisfies) !=
            (brute_nds(m, 3) == Verdict::satisfies))
      ++disagreements;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "1100 paired runs, " << disagreements << " disagreements, " << secs
     << " s";
  note = os.str();
  return disagreements == 0 && secs < 600.0;
}

bool crit_nfa_reduction(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t disagreements = 0, total = 0;
  // exhaustive: 2 states, 2 letters, initial fixed {q0} (isomorphism
  // representative), all final sets, all 2^8 edge sets
  const std::vector<std::string> qs{"q0", "q1"}, sigma{"a", "b"};
  std::vector<std::array<std::string, 3>> all_edges;
  for (const auto& q : qs)
    for (const auto& x : sigma)
      for (const auto& q2 : qs) all_edges.push_back({q, x, q2});
  for (unsigned fin = 0; fin < 4; ++fin)
    for (unsigned edges = 0; edges < 256; ++edges) {
      Nfa a;
      a.states = qs;
      a.initial = {"q0"};
      a.alphabet = sigma;
      for (unsigned i = 0; i < 2; ++i)
        if (fin & (1u << i)) a.final.push_back(qs[i]);
      for (unsigned i = 0; i < 8; ++i)
        if (edges & (1u << i)) a.trans.push_back(all_edges[i]);
      ++total;
      if (nfa_universal(a) != check_ndi(nfa_to_machine(a)).satisfies)
        ++disagreements;
    }
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomNfaParams p;
    p.num_states = 3 + seed % 2;
    auto a = random_nfa(seed, p);
    ++total;
    if (nfa_universal(a) != check_ndi(nfa_to_machine(a)).satisfies)
      ++disagreements;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << total << " NFAs, " << disagreements << " disagreements, " << secs
     << " s";
  note = os.str();
  return disagreements == 0 && secs < 300.0;
}

bool crit_peek_reduction(std::string& note) {
  const auto t0 = std::chrono::steady_clock::now();
  auto mk = [](std::vector<std::vector<int>> p1, std::vector<std::vector<int>> p2,
               std::vector<int> nu0) {
    PeekInstance g;
    g.n = 2;
    g.n1 = 1;
    g.phi1 = std::move(p1);
    g.phi2 = std::move(p2);
    g.nu0 = std::move(nu0);
    return g;
  };
  const std::vector<PeekInstance> instances{
      mk({{1, 2}}, {{-1, -2}}, {0, 1}),  // flip plate 1 and win
      mk({{1, 2}}, {{-1, -2}}, {0, 0}),  // plate 2 unreachable for player 1
      mk({{1}}, {{2}}, {0, 0}),          // immediate win before any reply
      mk({{2}}, {{1}}, {0, 0}),          // only player 2 controls plate 2
      mk({{-1}}, {{-2}}, {1, 1}),        // win by clearing plate 1
      mk({{1, -2}}, {{2}}, {0, 0}),      // win while blocking the reply
      mk({{1, 2}}, {{2}}, {0, 0}),       // player 2 wins any path to plate 2
      mk({{-2}}, {{-1, -2}}, {0, 1}),    // player 2 stalls by passing
      mk({{}}, {{-1}}, {0, 0}),          // trivially true goal
      mk({}, {{-1}}, {0, 1}),            // unsatisfiable goal
  };
  std::size_t completed = 0, disagreements = 0, skipped = 0;
  NdsLimits limits;
  limits.visited_limit = std::size_t{1} << 20;
  for (const auto& g : instances) {
    const PeekResult game = solve_peek(g);
    auto nds = check_nds(peek_to_machine(g), limits);
    if (game == PeekResult::unknown_within_bound ||
        nds.outcome == NdsOutcome::resource_exceeded) {
      ++skipped;
      continue;
    }
    ++completed;
    if ((game == PeekResult::win) != (nds.outcome == NdsOutcome::violates))
      ++disagreements;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << instances.size() << " instances, " << completed << " completed, "
     << skipped << " skipped, " << disagreements << " disagreements, " << secs
     << " s";
  note = os.str();
  return disagreements == 0 && completed >= 5;
}

bool crit_res_scaling(std::string& note) {
  const std::vector<std::size_t> sizes{100, 200, 400, 800};
  std::vector<double> secs;
  for (std::size_t n : sizes) {
    double best = 1e9;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto m = h_independent_machine(seed, n);
      const auto t0 = std::chrono::steady_clock::now();
      check_res(m);
      best = std::min(best, seconds_since(t0));
    }
    secs.push_back(std::max(best, 1e-5));
  }
  // least-squares slope of log(time) against log(size)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(static_cast<double>(sizes[i]));
    const double y = std::log(secs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(sizes.size());
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);

  auto big = h_independent_machine(11, 1000);
  const auto t0 = std::chrono::steady_clock::now();
  check_res(big);
  const double big_secs = seconds_since(t0);

  std::ostringstream os;
  os << "slope " << slope << ", 1000 states in " << big_secs << " s";
  note = os.str();
  return slope <= 3.5 && big_secs < 10.0;
}

bool crit_witness_integrity(std::string& note) {
  std::size_t ndi_w = 0, nds_w = 0, res_p = 0, bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomMachineParams p;
    p.num_states = 3 + seed % 2;
    auto m = random_machine(seed, p);

    auto ndi = check_ndi(m);
    if (!ndi.satisfies) {
      ++ndi_w;
      if (!ndi_witness_replay(m, *ndi.witness)) ++bad;
    }

    NdsLimits limits;
    limits.visited_limit = std::size_t{1} << 18;
    auto nds = check_nds(m, limits);
    if (nds.outcome == NdsOutcome::violates) {
      ++nds_w;
      const auto& w = *nds.witness;
      if (!strategy_excludes(m, w.strategy, w.excluded_view,
                             w.excluded_view.length()))
        ++bad;
      if (!view_is_possible(m, w.excluded_view)) ++bad;
    }

    auto res = check_res(m);
    if (res.satisfies) {
      ++res_p;
      if (!is_unwinding(reachable_restriction(m), res.partition->as_relation()))
        ++bad;
    }
  }
  std::ostringstream os;
  os << ndi_w << " ndi / " << nds_w << " nds witnesses, " << res_p
     << " res partitions, " << bad << " failures";
  note = os.str();
  return bad == 0 && ndi_w > 0 && nds_w > 0 && res_p > 0;
}

bool crit_ndi_witness_bound(std::string& note) {
  std::size_t witnesses = 0, violations = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    RandomMachineParams p;
    p.num_states = 3 + seed % 2;
    auto m = random_machine(seed, p);
    auto v = check_ndi(m);
    if (v.satisfies) continue;
    ++witnesses;
    const std::size_t bound =
        m.states.size() * (std::size_t{1} << m.states.size());
    if (v.witness->h_actions.size() > bound) ++violations;
  }
  std::ostringstream os;
  os << witnesses << " witnesses, " << violations << " over the bound";
  note = os.str();
  return violations == 0 && witnesses > 0;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"fixture verdicts", crit_fixture_verdicts},
      {"containment res => nds => ndi", crit_containment},
      {"oracle equivalence", crit_oracle_equivalence},
      {"nfa universality reduction", crit_nfa_reduction},
      {"blind peek reduction", crit_peek_reduction},
      {"res polynomial scaling", crit_res_scaling},
      {"witness integrity", crit_witness_integrity},
      {"ndi witness length bound", crit_ndi_witness_bound},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = criteria[i].run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
              << criteria[i].name << "): " << note << "\n";
  }
  return failures == 0 ? 0 : 1;
}
