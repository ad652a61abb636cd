#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "syncsec/machine.hpp"

namespace syncsec {

struct Nfa {
  std::vector<std::string> states;
  std::vector<std::string> initial;
  std::vector<std::string> alphabet;
  std::vector<std::string> final;
  // [state, letter, state] triples
  std::vector<std::array<std::string, 3>> trans;

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

inline void validate_nfa(const Nfa& a) {
  std::set<std::string> q(a.states.begin(), a.states.end());
  std::set<std::string> sigma(a.alphabet.begin(), a.alphabet.end());
  if (a.alphabet.empty()) throw std::invalid_argument("nfa: empty alphabet");
  for (const auto& s : a.initial)
    if (!q.count(s)) throw std::invalid_argument("nfa: unknown initial state " + s);
  for (const auto& s : a.final)
    if (!q.count(s)) throw std::invalid_argument("nfa: unknown final state " + s);
  for (const auto& t : a.trans) {
    if (!q.count(t[0]) || !q.count(t[2]))
      throw std::invalid_argument("nfa: unknown transition state");
    if (!sigma.count(t[1]))
      throw std::invalid_argument("nfa: unknown letter " + t[1]);
  }
}

/// True iff L(A) = Sigma*, by subset construction: universal iff every
/// reachable determinized state contains a final state (the empty subset is
/// nonaccepting).
inline bool nfa_universal(const Nfa& a,
                          std::size_t subset_limit = std::size_t{1} << 22) {
  validate_nfa(a);
  std::map<std::string, int> qix;
  for (const auto& s : a.states)
    qix.emplace(s, static_cast<int>(qix.size()));
  const std::size_t n = qix.size();
  std::set<int> finals;
  for (const auto& s : a.final) finals.insert(qix.at(s));
  // delta[q][letter] -> successors
  std::map<std::pair<int, std::string>, std::vector<int>> delta;
  for (const auto& t : a.trans)
    delta[{qix.at(t[0]), t[1]}].push_back(qix.at(t[2]));

  auto accepting = [&](const StateSet& sub) {
    for (int f : finals)
      if (sub.test(f)) return true;
    return false;
  };

  StateSet init(n);
  for (const auto& s : a.initial) init.set(qix.at(s));
  std::set<StateSet> visited{init};
  std::vector<StateSet> frontier{init};
  if (!accepting(init)) return false;
  while (!frontier.empty()) {
    StateSet cur = frontier.back();
    frontier.pop_back();
    for (const auto& letter : a.alphabet) {
      StateSet nxt(n);
      cur.for_each([&](std::size_t q) {
        auto it = delta.find({static_cast<int>(q), letter});
        if (it != delta.end())
          for (int t : it->second) nxt.set(t);
      });
      if (!accepting(nxt)) return false;
      if (visited.insert(nxt).second) {
        if (visited.size() > subset_limit)
          throw ResourceLimitError("nfa_universal: subset cap exceeded");
        frontier.push_back(nxt);
      }
    }
  }
  return true;
}

/// Builds the scheduled machine M(A) whose NDI status matches universality
/// of A. H privately chooses at the first step between simulating A (action
/// h) and a universal gadget (action h'); afterwards L drives letters and
/// observes 1 exactly at the accepting sink s2. A word outside L(A) yields
/// an L view that is possible overall but not under the h branch, breaking
/// NDI; if L(A) = Sigma* the branches are L-indistinguishable.
inline Machine nfa_to_machine(const Nfa& a) {
  validate_nfa(a);
  std::set<std::string> used(a.states.begin(), a.states.end());
  auto fresh = [&](std::string base) {
    while (used.count(base)) base += "_";
    used.insert(base);
    return base;
  };
  const std::string s0 = fresh("s0"), s1 = fresh("s1"), s2 = fresh("s2"),
                    s3 = fresh("s3");

  Machine m;
  m.states = a.states;
  m.states.insert(m.states.end(), {s0, s1, s2, s3});
  m.initial = s0;
  m.actions_h = {"h", "h'"};
  m.actions_l = a.alphabet;
  m.observations = {"0", "1"};
  for (const auto& s : m.states) m.obs[s] = {"0", "0"};
  m.obs[s2] = {"0", "1"};

  std::set<std::string> finals(a.final.begin(), a.final.end());
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> delta;
  for (const auto& t : a.trans) delta[{t[0], t[1]}].push_back(t[2]);

  // s0 is H-scheduled: the L component of the joint action is ignored.
  auto h_edge = [&](const std::string& src, const std::string& ah,
                    const std::string& dst) {
    for (const auto& b : m.actions_l) m.trans.push_back({src, ah, b, dst});
  };
  // all other states are L-scheduled: the H component is ignored.
  auto l_edge = [&](const std::string& src, const std::string& al,
                    const std::string& dst) {
    m.trans.push_back({src, "h", al, dst});
    m.trans.push_back({src, "h'", al, dst});
  };

  bool h_has_successor = false;
  for (const auto& q : a.initial) {
    h_edge(s0, "h", q);
    h_has_successor = true;
  }
  if (std::any_of(a.initial.begin(), a.initial.end(),
                  [&](const std::string& q) { return finals.count(q); })) {
    h_edge(s0, "h", s2);
    h_has_successor = true;
  }
  // With no initial states the h branch would be a dead end; route it to
  // the reject sink to stay input-enabled (the machine still violates NDI
  // since such an automaton is never universal).
  if (!h_has_successor) h_edge(s0, "h", s3);
  h_edge(s0, "h'", s1);
  h_edge(s0, "h'", s2);

  for (const auto& letter : a.alphabet) {
    l_edge(s1, letter, s1);
    l_edge(s1, letter, s2);
    l_edge(s2, letter, s2);
    l_edge(s3, letter, s3);
    for (const auto& q : a.states) {
      auto it = delta.find({q, letter});
      const bool dead = it == delta.end() || it->second.empty();
      if (dead) {
        l_edge(q, letter, s3);
        continue;
      }
      bool hits_final = false;
      for (const auto& t : it->second) {
        l_edge(q, letter, t);
        if (finals.count(t)) hits_final = true;
      }
      if (hits_final) l_edge(q, letter, s2);
    }
  }
  return canonicalize(m);
}

}  // namespace syncsec
