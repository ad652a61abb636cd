#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "syncsec/machine.hpp"
#include "syncsec/res.hpp"

namespace syncsec {

enum class Verdict { satisfies, violates };

/// Brute NDI decider, independent of check_ndi's product search: for every
/// possible L view v (tracked as the set R of states reachable under v) it
/// carries the collection { K(alpha, v) | alpha } of knowledge sets for all
/// H action sequences simultaneously. v misses some alpha exactly when the
/// collection contains the empty set while R is nonempty. Deduplicating
/// (R, collection) pairs is sound because the update depends only on them,
/// which makes the sound horizon |S| * 2^|S| reachable in practice.
inline Verdict brute_ndi(const Machine& m, std::size_t depth,
                         std::size_t node_limit = std::size_t{1} << 22) {
  CompiledMachine cm(m);
  using Node = std::pair<StateSet, std::set<StateSet>>;
  Node init{cm.singleton(cm.initial()), {cm.singleton(cm.initial())}};
  std::set<Node> visited{init};
  std::vector<Node> level{init};
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    std::vector<Node> next_level;
    for (const auto& [r, ks] : level)
      for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
        for (std::size_t o = 0; o < cm.num_observations(); ++o) {
          StateSet rp = cm.view_step(r, static_cast<int>(b), static_cast<int>(o));
          if (rp.none()) continue;  // the extended view is impossible
          std::set<StateSet> ksp;
          for (const auto& k : ks)
            for (std::size_t a = 0; a < cm.num_actions_h(); ++a)
              ksp.insert(cm.delta_abo(k, static_cast<int>(a), static_cast<int>(b),
                                      static_cast<int>(o)));
          if (ksp.count(cm.empty_set())) return Verdict::violates;
          Node nd{std::move(rp), std::move(ksp)};
          if (visited.insert(nd).second) {
            if (visited.size() > node_limit)
              throw ResourceLimitError("brute_ndi: node cap exceeded");
            next_level.push_back(std::move(nd));
          }
        }
    level = std::move(next_level);
  }
  return Verdict::satisfies;
}

namespace detail {
// Can some H strategy kill every run compatible with the remaining suffix
// of beta, starting from H-view-class knowledge k at level i? Branches per
// H observation, so distinct H views may pick distinct actions.
inline bool brute_excludable(const CompiledMachine& cm, const StateSet& k,
                             const std::vector<std::pair<int, int>>& beta_steps,
                             std::size_t i) {
  if (k.none()) return true;
  if (i == beta_steps.size()) return false;
  const auto [b, o] = beta_steps[i];
  for (std::size_t a = 0; a < cm.num_actions_h(); ++a) {
    bool all = true;
    for (std::size_t oh = 0; oh < cm.num_observations(); ++oh)
      if (!brute_excludable(
              cm,
              cm.knowledge_update(k, static_cast<int>(a), static_cast<int>(oh), b, o),
              beta_steps, i + 1)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}
}  // namespace detail

/// Brute NDS decider for tiny machines, bounded at the given horizon:
/// enumerate every possible L view beta of length <= depth and, per view,
/// search the full H-view tree for a strategy excluding it. Agrees with
/// check_nds limited to the same maximum witness length.
inline Verdict brute_nds(const Machine& m, std::size_t depth,
                         std::size_t node_limit = std::size_t{1} << 20) {
  CompiledMachine cm(m);
  // (reachable set under the view, the (a_L, o_L) steps of the view)
  std::vector<std::pair<StateSet, std::vector<std::pair<int, int>>>> level{
      {cm.singleton(cm.initial()), {}}};
  std::size_t nodes = 1;
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    decltype(level) next_level;
    for (const auto& [r, steps] : level)
      for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
        for (std::size_t o = 0; o < cm.num_observations(); ++o) {
          StateSet rp = cm.view_step(r, static_cast<int>(b), static_cast<int>(o));
          if (rp.none()) continue;
          if (++nodes > node_limit)
            throw ResourceLimitError("brute_nds: view cap exceeded");
          auto sp = steps;
          sp.emplace_back(static_cast<int>(b), static_cast<int>(o));
          if (detail::brute_excludable(cm, cm.singleton(cm.initial()), sp, 0))
            return Verdict::violates;
          next_level.emplace_back(std::move(rp), std::move(sp));
        }
    level = std::move(next_level);
  }
  return Verdict::satisfies;
}

struct BruteResResult {
  Verdict verdict = Verdict::violates;
  // every synchronous unwinding relation of the reachable restriction
  std::vector<std::set<std::pair<std::string, std::string>>> survivors;
};

/// Brute RES decider: enumerate all symmetric relations over the reachable
/// states that contain (s0, s0) and keep those passing the definitional
/// unwinding check.
inline BruteResResult brute_res(const Machine& machine) {
  const Machine m = reachable_restriction(machine);
  const std::size_t n = m.states.size();
  std::vector<std::pair<std::string, std::string>> pairs;  // unordered, no (s0,s0)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!(m.states[i] == m.initial && m.states[j] == m.initial))
        pairs.push_back({m.states[i], m.states[j]});
  if (pairs.size() > 20)
    throw ResourceLimitError("brute_res: too many state pairs to enumerate");

  BruteResResult out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::set<std::pair<std::string, std::string>> rel{{m.initial, m.initial}};
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if ((mask >> p) & 1) {
        rel.insert(pairs[p]);
        rel.insert({pairs[p].second, pairs[p].first});
      }
    if (is_unwinding(m, rel)) out.survivors.push_back(std::move(rel));
  }
  out.verdict = out.survivors.empty() ? Verdict::violates : Verdict::satisfies;
  return out;
}

}  // namespace syncsec
