#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "syncsec/machine.hpp"

namespace syncsec {

/// delta_{a,b,o}(T) on string identifiers; the bitset form lives on
/// CompiledMachine.
inline std::set<std::string> delta_abo(const Machine& m,
                                       const std::set<std::string>& t_set,
                                       const std::string& a, const std::string& b,
                                       const std::string& o) {
  CompiledMachine cm(m);
  StateSet in = cm.empty_set();
  for (const auto& s : t_set) in.set(cm.state_index(s));
  StateSet out = cm.delta_abo(in, cm.action_h_index(a), cm.action_l_index(b),
                              cm.observation_index(o));
  std::set<std::string> names;
  out.for_each([&](std::size_t i) { names.insert(cm.state_name(i)); });
  return names;
}

struct NdiWitness {
  std::vector<std::string> h_actions;  // alpha
  View l_view;                         // v, agent L

  friend bool operator==(const NdiWitness&, const NdiWitness&) = default;
};

struct NdiVerdict {
  bool satisfies = true;
  std::optional<NdiWitness> witness;  // present iff !satisfies
};

struct NdiStats {
  std::size_t visited = 0;
};

/// Decides NDI by breadth-first reachability over pairs (current state,
/// knowledge set K(alpha, v)). A pair with empty knowledge set is reachable
/// iff some possible L view v and equal-length H action sequence alpha admit
/// no common run. The witness is read off a shortest path, ties broken
/// lexicographically by (H action, L action, successor) at each step.
inline NdiVerdict check_ndi(const Machine& m,
                            std::size_t visited_limit = std::size_t{1} << 22,
                            NdiStats* stats = nullptr) {
  CompiledMachine cm(m);
  const std::size_t n = cm.num_states();

  struct Node {
    int current;
    StateSet kset;
  };
  struct Edge {
    std::size_t parent;
    int ah, al, succ;  // label (a, b, a'); a' is the concrete L-view successor
  };
  struct Key {
    int current;
    StateSet kset;
    bool operator==(const Key& o) const {
      return current == o.current && kset == o.kset;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.kset.hash() * 1099511628211ull + static_cast<std::size_t>(k.current);
    }
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;  // edges[i] leads into nodes[i]; edge 0 unused
  std::unordered_map<Key, std::size_t, KeyHash> visited;

  nodes.push_back({cm.initial(), cm.singleton(cm.initial())});
  edges.push_back({0, -1, -1, -1});
  visited[{cm.initial(), cm.singleton(cm.initial())}] = 0;

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node nd = nodes[head];
    const int s = nd.current;
    for (std::size_t a = 0; a < cm.num_actions_h(); ++a)
      for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
        // The run component steps under (a, b) while the witness attributes
        // an independent H action a' to alpha; labels are ordered (a, b, a').
        for (std::size_t ap = 0; ap < cm.num_actions_h(); ++ap)
          for (int sp : cm.successors(s, a, b)) {
            const int ol = cm.obs_l(sp);
            StateSet kp = cm.delta_abo(nd.kset, static_cast<int>(ap),
                                       static_cast<int>(b), ol);
            Key key{sp, kp};
            if (visited.count(key)) continue;
            if (nodes.size() >= visited_limit)
              throw ResourceLimitError("check_ndi: visited-state cap exceeded");
            visited[key] = nodes.size();
            nodes.push_back({sp, kp});
            edges.push_back({head, static_cast<int>(ap), static_cast<int>(b), sp});
            if (kp.none()) {
              if (stats) stats->visited = nodes.size();
              // Walk parents back to the root; labels give (alpha, v).
              std::vector<Edge> path;
              for (std::size_t i = nodes.size() - 1; i != 0; i = path.back().parent)
                path.push_back(edges[i]);
              NdiWitness w;
              w.l_view.agent = Agent::L;
              w.l_view.trace.push_back(cm.observation_name(cm.obs_l(cm.initial())));
              for (auto it = path.rbegin(); it != path.rend(); ++it) {
                w.h_actions.push_back(cm.action_h_name(it->ah));
                w.l_view.trace.push_back(cm.action_l_name(it->al));
                w.l_view.trace.push_back(cm.observation_name(cm.obs_l(it->succ)));
              }
              return {false, std::move(w)};
            }
          }
  }
  if (stats) stats->visited = nodes.size();
  return {true, std::nullopt};
}

/// Independent witness check: (a) some run realizes w.l_view, and (b)
/// iterating delta_abo along (alpha, v) from {s_0} empties out. Recomputed
/// from the raw transition relation, sharing nothing with check_ndi's search.
inline bool ndi_witness_replay(const Machine& m, const NdiWitness& w) {
  if (w.l_view.agent != Agent::L)
    throw std::invalid_argument("ndi witness: view must belong to L");
  if (w.l_view.trace.size() != 2 * w.h_actions.size() + 1)
    throw std::invalid_argument("ndi witness: |alpha| != |view|");
  CompiledMachine cm(m);

  if (w.l_view.trace[0] !=
      cm.observation_name(cm.obs_l(cm.initial())))
    return false;
  // (a) realizability of the view, H action unconstrained.
  StateSet reach = cm.singleton(cm.initial());
  // (b) knowledge under the witness's H action sequence.
  StateSet know = cm.singleton(cm.initial());
  for (std::size_t i = 0; i < w.h_actions.size(); ++i) {
    const int b = cm.action_l_index(w.l_view.trace[2 * i + 1]);
    const int o = cm.observation_index(w.l_view.trace[2 * i + 2]);
    reach = cm.view_step(reach, b, o);
    know = cm.delta_abo(know, cm.action_h_index(w.h_actions[i]), b, o);
  }
  return reach.any() && know.none();
}

}  // namespace syncsec
