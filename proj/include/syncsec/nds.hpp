#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "syncsec/machine.hpp"

namespace syncsec {

inline std::set<std::string> knowledge_update(const Machine& m,
                                              const std::set<std::string>& k,
                                              const std::string& a_h,
                                              const std::string& o_h,
                                              const std::string& a_l,
                                              const std::string& o_l) {
  CompiledMachine cm(m);
  StateSet in = cm.empty_set();
  for (const auto& s : k) in.set(cm.state_index(s));
  StateSet out =
      cm.knowledge_update(in, cm.action_h_index(a_h), cm.observation_index(o_h),
                          cm.action_l_index(a_l), cm.observation_index(o_l));
  std::set<std::string> names;
  out.for_each([&](std::size_t i) { names.insert(cm.state_name(i)); });
  return names;
}

/// The (U, ksets) pair searched by check_nds: U is the set of states
/// reachable under the L view so far (any H behavior); ksets holds one
/// knowledge set per H-view class under the strategy being built.
struct KnowledgeCollection {
  std::set<std::string> universe;
  std::set<std::set<std::string>> ksets;

  friend bool operator==(const KnowledgeCollection&, const KnowledgeCollection&) =
      default;
};

/// One strategy step: U' collects successors of U under any H action with
/// L observation o_l (empty U' means the step is infeasible and yields
/// nullopt); ksets' collects the per-H-observation refinements of each k
/// under rho(k). Empty refinement images are retained as the element ∅.
inline std::optional<KnowledgeCollection> nds_step(
    const Machine& m, const KnowledgeCollection& q,
    const std::map<std::set<std::string>, std::string>& rho, const std::string& a_l,
    const std::string& o_l) {
  CompiledMachine cm(m);
  for (const auto& k : q.ksets)
    if (!rho.count(k))
      throw std::invalid_argument("nds_step: rho is partial on ksets");
  const int b = cm.action_l_index(a_l);
  const int o = cm.observation_index(o_l);

  StateSet u = cm.empty_set();
  for (const auto& s : q.universe) u.set(cm.state_index(s));
  StateSet up = cm.view_step(u, b, o);
  if (up.none()) return std::nullopt;

  KnowledgeCollection out;
  up.for_each([&](std::size_t i) { out.universe.insert(cm.state_name(i)); });
  for (const auto& k : q.ksets) {
    StateSet in = cm.empty_set();
    for (const auto& s : k) in.set(cm.state_index(s));
    const int a = cm.action_h_index(rho.at(k));
    for (std::size_t oh = 0; oh < cm.num_observations(); ++oh) {
      StateSet img = cm.knowledge_update(in, a, static_cast<int>(oh), b, o);
      std::set<std::string> names;
      img.for_each([&](std::size_t i) { names.insert(cm.state_name(i)); });
      out.ksets.insert(std::move(names));
    }
  }
  return out;
}

/// Normal-form H strategy: per time step, a map from knowledge set to the
/// H action played by every H view in that knowledge class.
struct StrategyTable {
  // levels[i] maps the sorted state list of a knowledge set at step i to an
  // H action.
  std::vector<std::map<std::vector<std::string>, std::string>> levels;

  friend bool operator==(const StrategyTable&, const StrategyTable&) = default;
};

struct NdsWitness {
  View excluded_view;  // beta, agent L
  StrategyTable strategy;

  friend bool operator==(const NdsWitness&, const NdsWitness&) = default;
};

enum class NdsOutcome { satisfies, violates, resource_exceeded };

struct NdsVerdict {
  NdsOutcome outcome = NdsOutcome::satisfies;
  std::optional<NdsWitness> witness;  // present iff violates
  std::string diagnostic;             // present iff resource_exceeded
};

struct NdsLimits {
  std::size_t visited_limit = std::size_t{1} << 20;
  std::size_t work_limit = std::size_t{1} << 26;  // strategy-branch expansions
  // Optional horizon: only witnesses with |beta| <= max_depth are sought and
  // Satisfies means "no strategy excludes any possible view that short".
  std::optional<std::size_t> max_depth;
};

struct NdsStats {
  std::size_t visited = 0;
  std::size_t work = 0;
};

/// Decides NDS by breadth-first search over (U, ksets) pairs. A strategy
/// excludes some possible L view iff a pair whose members are all empty is
/// reachable; the path labels give beta and the per-level rho maps give the
/// excluding strategy in normal form.
inline NdsVerdict check_nds(const Machine& m, const NdsLimits& limits = {},
                            NdsStats* stats = nullptr) {
  CompiledMachine cm(m);

  struct Node {
    StateSet universe;
    std::vector<StateSet> ksets;  // sorted, deduplicated
    std::size_t depth;
  };
  struct Edge {
    std::size_t parent;
    int al, ol;
    std::vector<int> rho;  // H action per parent kset, in canonical order
  };
  struct KeyHash {
    std::size_t operator()(const Node* n) const {
      std::size_t h = n->universe.hash();
      for (const auto& k : n->ksets) h = h * 1099511628211ull ^ k.hash();
      return h;
    }
  };
  struct KeyEq {
    bool operator()(const Node* a, const Node* b) const {
      return a->universe == b->universe && a->ksets == b->ksets;
    }
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  // Keys point into `nodes`; a deque-like reserve is avoided by hashing
  // copies of the key fields held in a side vector of stable pointers.
  std::vector<std::unique_ptr<Node>> keys;
  std::unordered_map<const Node*, std::size_t, KeyHash, KeyEq> visited;

  auto push_node = [&](Node n, Edge e) {
    keys.push_back(std::make_unique<Node>(n));
    visited[keys.back().get()] = nodes.size();
    nodes.push_back(std::move(n));
    edges.push_back(std::move(e));
  };

  push_node({cm.singleton(cm.initial()), {cm.singleton(cm.initial())}, 0},
            {0, -1, -1, {}});
  std::size_t work = 0;

  auto finish = [&](NdsVerdict v) {
    if (stats) {
      stats->visited = nodes.size();
      stats->work = work;
    }
    return v;
  };

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const std::size_t depth = nodes[head].depth;
    if (limits.max_depth && depth >= *limits.max_depth) continue;
    const std::size_t nk = nodes[head].ksets.size();

    for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
      for (std::size_t o = 0; o < cm.num_observations(); ++o) {
        StateSet up = cm.view_step(nodes[head].universe, static_cast<int>(b),
                                   static_cast<int>(o));
        if (up.none()) continue;  // infeasible (a_L, o_L)

        // Per kset, group H actions by the set of per-o_H images they
        // induce; only the smallest action of each class is enumerated.
        std::vector<std::vector<int>> reps(nk);
        std::vector<std::vector<std::vector<StateSet>>> images(nk);
        for (std::size_t j = 0; j < nk; ++j) {
          std::set<std::vector<StateSet>> seen_families;
          for (std::size_t a = 0; a < cm.num_actions_h(); ++a) {
            std::vector<StateSet> fam;
            for (std::size_t oh = 0; oh < cm.num_observations(); ++oh)
              fam.push_back(cm.knowledge_update(nodes[head].ksets[j],
                                                static_cast<int>(a),
                                                static_cast<int>(oh),
                                                static_cast<int>(b),
                                                static_cast<int>(o)));
            std::vector<StateSet> canon = fam;
            std::sort(canon.begin(), canon.end());
            canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
            if (seen_families.insert(canon).second) {
              reps[j].push_back(static_cast<int>(a));
              images[j].push_back(std::move(canon));
            }
          }
        }

        // Lexicographic product over the representative actions.
        std::vector<std::size_t> pick(nk, 0);
        while (true) {
          if (++work > limits.work_limit)
            return finish({NdsOutcome::resource_exceeded, std::nullopt,
                           "strategy-branch work cap exceeded"});
          std::vector<StateSet> kp;
          for (std::size_t j = 0; j < nk; ++j)
            for (const auto& img : images[j][pick[j]]) kp.push_back(img);
          std::sort(kp.begin(), kp.end());
          kp.erase(std::unique(kp.begin(), kp.end()), kp.end());

          Node cand{up, std::move(kp), depth + 1};
          if (!visited.count(&cand)) {
            if (nodes.size() >= limits.visited_limit)
              return finish({NdsOutcome::resource_exceeded, std::nullopt,
                             "visited-state cap exceeded"});
            std::vector<int> rho(nk);
            for (std::size_t j = 0; j < nk; ++j) rho[j] = reps[j][pick[j]];
            const bool goal =
                cand.ksets.size() == 1 && cand.ksets.front().none();
            push_node(std::move(cand),
                      {head, static_cast<int>(b), static_cast<int>(o),
                       std::move(rho)});
            if (goal) {
              // Reconstruct beta and the per-level strategy entries.
              std::vector<std::size_t> path;  // node indices, root excluded
              for (std::size_t i = nodes.size() - 1; i != 0;
                   i = edges[i].parent)
                path.push_back(i);
              std::reverse(path.begin(), path.end());
              NdsWitness w;
              w.excluded_view.agent = Agent::L;
              w.excluded_view.trace.push_back(
                  cm.observation_name(cm.obs_l(cm.initial())));
              for (std::size_t i : path) {
                const Edge& e = edges[i];
                const Node& parent = nodes[e.parent];
                w.excluded_view.trace.push_back(cm.action_l_name(e.al));
                w.excluded_view.trace.push_back(cm.observation_name(e.ol));
                std::map<std::vector<std::string>, std::string> level;
                for (std::size_t j = 0; j < parent.ksets.size(); ++j) {
                  std::vector<std::string> names;
                  parent.ksets[j].for_each([&](std::size_t si) {
                    names.push_back(cm.state_name(si));
                  });
                  level[names] = cm.action_h_name(e.rho[j]);
                }
                w.strategy.levels.push_back(std::move(level));
              }
              return finish({NdsOutcome::violates, std::move(w), ""});
            }
          }

          std::size_t j = nk;
          while (j > 0) {
            --j;
            if (++pick[j] < reps[j].size()) break;
            pick[j] = 0;
            if (j == 0) {
              j = nk + 1;  // carry out of the most significant digit
              break;
            }
          }
          if (nk == 0 || j == nk + 1) break;
        }
      }
  }
  return finish({NdsOutcome::satisfies, std::nullopt, ""});
}

/// Forward replay of a strategy against a target view, independent of
/// check_nds internals: per level, maintain one knowledge set per H-view
/// class reached so far; true iff all classes are empty at level |beta|.
inline bool strategy_excludes(const Machine& m, const StrategyTable& pi,
                              const View& beta, std::size_t horizon) {
  if (beta.agent != Agent::L)
    throw std::invalid_argument("strategy_excludes: beta must be an L view");
  if (horizon < beta.length())
    throw std::invalid_argument("strategy_excludes: horizon < |beta|");
  CompiledMachine cm(m);

  std::vector<StateSet> ksets;
  if (beta.trace.at(0) == cm.observation_name(cm.obs_l(cm.initial())))
    ksets.push_back(cm.singleton(cm.initial()));

  for (std::size_t i = 0; i < beta.length(); ++i) {
    const int b = cm.action_l_index(beta.trace[2 * i + 1]);
    const int o = cm.observation_index(beta.trace[2 * i + 2]);
    std::vector<StateSet> next;
    for (const auto& k : ksets) {
      if (k.none()) continue;  // dead H-view class
      std::vector<std::string> names;
      k.for_each([&](std::size_t si) { names.push_back(cm.state_name(si)); });
      if (i >= pi.levels.size() || !pi.levels[i].count(names))
        throw std::invalid_argument(
            "strategy_excludes: strategy undefined on a reached knowledge set");
      const int a = cm.action_h_index(pi.levels[i].at(names));
      for (std::size_t oh = 0; oh < cm.num_observations(); ++oh) {
        StateSet img =
            cm.knowledge_update(k, a, static_cast<int>(oh), b, o);
        if (img.any()) next.push_back(std::move(img));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    ksets = std::move(next);
  }
  return ksets.empty();
}

}  // namespace syncsec
