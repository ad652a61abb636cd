#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syncsec/machine.hpp"

namespace syncsec {

/// Equivalence partition of the (reachable) state set; blocks and their
/// members are kept in canonical order.
struct Partition {
  std::vector<std::vector<std::string>> blocks;

  friend bool operator==(const Partition&, const Partition&) = default;

  std::set<std::pair<std::string, std::string>> as_relation() const {
    std::set<std::pair<std::string, std::string>> rel;
    for (const auto& blk : blocks)
      for (const auto& s : blk)
        for (const auto& t : blk) rel.insert({s, t});
    return rel;
  }
};

/// Reflexivity counterexample: successor block sets from `state` under
/// (a_h1, a_l) and (a_h2, a_l) differ, so no unwinding can relate the state
/// to itself.
struct ResCounterexample {
  std::string state;
  std::string a_h1, a_h2, a_l;

  friend bool operator==(const ResCounterexample&, const ResCounterexample&) = default;
};

struct ResVerdict {
  bool satisfies = false;
  std::optional<Partition> partition;            // present iff satisfies
  std::optional<ResCounterexample> counterexample;  // present iff !satisfies
};

/// Direct definitional check of a synchronous unwinding relation, sharing
/// nothing with check_res: (1) initial state related to itself, (2) related
/// states agree on the L observation, (3) every move from s under (a1, a3)
/// is matched from t under every (a2, a3) into the relation.
inline bool is_unwinding(
    const Machine& m, const std::set<std::pair<std::string, std::string>>& rel) {
  CompiledMachine cm(m);
  for (const auto& [s, t] : rel) {
    cm.state_index(s);  // throws on unknown states
    cm.state_index(t);
    if (!rel.count({t, s}))
      throw std::invalid_argument("is_unwinding: relation not symmetric");
  }
  if (!rel.count({m.initial, m.initial})) return false;
  for (const auto& [s, t] : rel)
    if (m.obs.at(s)[1] != m.obs.at(t)[1]) return false;
  for (const auto& [s, t] : rel) {
    const int si = cm.state_index(s), ti = cm.state_index(t);
    for (std::size_t a1 = 0; a1 < cm.num_actions_h(); ++a1)
      for (std::size_t a3 = 0; a3 < cm.num_actions_l(); ++a3)
        for (int sp : cm.successors(si, a1, a3))
          for (std::size_t a2 = 0; a2 < cm.num_actions_h(); ++a2) {
            bool matched = false;
            for (int tp : cm.successors(ti, a2, a3))
              if (rel.count({cm.state_name(sp), cm.state_name(tp)})) {
                matched = true;
                break;
              }
            if (!matched) return false;
          }
  }
  return true;
}

/// Computes the largest synchronous unwinding by partition refinement.
/// Start from L-observation classes; in each round compute the successor
/// block sets R(s, a_h, a_l). If R depends on the H action at any state,
/// no unwinding exists (reflexivity fails) and that state is the
/// counterexample. Otherwise split the first unstable (block, a_l) by
/// signature under the canonically smallest H action and repeat; the stable
/// partition is the largest unwinding.
inline ResVerdict check_res(const Machine& machine) {
  const Machine m = reachable_restriction(machine);
  CompiledMachine cm(m);
  const std::size_t n = cm.num_states();

  std::vector<int> block_of(n);
  for (std::size_t s = 0; s < n; ++s) block_of[s] = cm.obs_l(s);
  auto normalize = [&] {
    std::map<int, int> remap;
    for (std::size_t s = 0; s < n; ++s) {
      auto [it, fresh] = remap.insert({block_of[s], static_cast<int>(remap.size())});
      block_of[s] = it->second;
    }
    return static_cast<int>(remap.size());
  };
  int num_blocks = normalize();

  auto r_of = [&](std::size_t s, std::size_t ah, std::size_t al) {
    std::set<int> r;
    for (int t : cm.successors(s, ah, al)) r.insert(block_of[t]);
    return r;
  };

  while (true) {
    // Reflexivity: R(s, ·, a_l) must be independent of the H action.
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t al = 0; al < cm.num_actions_l(); ++al) {
        const std::set<int> r0 = r_of(s, 0, al);
        for (std::size_t ah = 1; ah < cm.num_actions_h(); ++ah)
          if (r_of(s, ah, al) != r0) {
            ResVerdict v;
            v.satisfies = false;
            v.counterexample = {cm.state_name(s), cm.action_h_name(0),
                                cm.action_h_name(ah), cm.action_l_name(al)};
            return v;
          }
      }

    // Stability under the canonically smallest H action (R no longer
    // depends on it); split the first unstable (block, a_l).
    bool split = false;
    for (int blk = 0; blk < num_blocks && !split; ++blk)
      for (std::size_t al = 0; al < cm.num_actions_l() && !split; ++al) {
        std::map<std::set<int>, std::vector<std::size_t>> classes;
        for (std::size_t s = 0; s < n; ++s)
          if (block_of[s] == blk) classes[r_of(s, 0, al)].push_back(s);
        if (classes.size() > 1) {
          int next_id = num_blocks;
          bool first = true;
          for (const auto& [sig, members] : classes) {
            if (first) {  // first signature class keeps the block id
              first = false;
              continue;
            }
            for (std::size_t s : members) block_of[s] = next_id;
            ++next_id;
          }
          num_blocks = normalize();
          split = true;
        }
      }
    if (!split) break;
  }

  ResVerdict v;
  v.satisfies = true;
  Partition p;
  p.blocks.resize(num_blocks);
  for (std::size_t s = 0; s < n; ++s)
    p.blocks[block_of[s]].push_back(cm.state_name(s));
  // block ids follow first occurrence in state order, so members are sorted
  // and blocks are ordered by smallest member
  v.partition = std::move(p);
  return v;
}

}  // namespace syncsec
