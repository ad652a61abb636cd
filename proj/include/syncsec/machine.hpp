#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "syncsec/common.hpp"

namespace syncsec {

struct Transition {
  std::string src;
  std::string act_h;
  std::string act_l;
  std::string dst;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// A synchronous two-agent machine. Both agents act simultaneously at every
/// tick; the joint action is resolved nondeterministically by `trans`, and
/// each agent observes every state through `obs`.
///
/// Identifiers are strings; the canonical (lexicographic) order of the
/// component lists fixes every enumeration order in the library.
struct Machine {
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> actions_h;
  std::vector<std::string> actions_l;
  std::vector<std::string> observations;
  // state -> {obs_H, obs_L}
  std::map<std::string, std::array<std::string, 2>> obs;
  std::vector<Transition> trans;

  friend bool operator==(const Machine&, const Machine&) = default;
};

namespace detail {
inline void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace detail

/// Sorts and deduplicates all component lists in place.
inline Machine& canonicalize(Machine& m) {
  detail::sort_unique(m.states);
  detail::sort_unique(m.actions_h);
  detail::sort_unique(m.actions_l);
  detail::sort_unique(m.observations);
  std::sort(m.trans.begin(), m.trans.end());
  m.trans.erase(std::unique(m.trans.begin(), m.trans.end()), m.trans.end());
  return m;
}

struct Violation {
  enum class Kind { missing_transition, dangling_reference, partial_observation };
  Kind kind;
  std::string element;  // human-readable description of the offender

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant of the machine model: all identifiers
/// resolve, `obs` is total on states x {H, L}, and the machine is
/// input-enabled (every state has a successor under every joint action).
inline ValidationReport validate_machine(const Machine& m) {
  ValidationReport rep;
  auto dangle = [&](const std::string& what) {
    rep.violations.push_back({Violation::Kind::dangling_reference, what});
  };
  std::set<std::string> states(m.states.begin(), m.states.end());
  std::set<std::string> ah(m.actions_h.begin(), m.actions_h.end());
  std::set<std::string> al(m.actions_l.begin(), m.actions_l.end());
  std::set<std::string> obs(m.observations.begin(), m.observations.end());

  if (m.states.empty()) dangle("states: empty");
  if (m.actions_h.empty()) dangle("actions_h: empty");
  if (m.actions_l.empty()) dangle("actions_l: empty");
  if (!states.count(m.initial)) dangle("initial: " + m.initial);

  for (const auto& [s, oo] : m.obs) {
    if (!states.count(s)) dangle("obs state: " + s);
    if (!obs.count(oo[0])) dangle("obs[" + s + "][H]: " + oo[0]);
    if (!obs.count(oo[1])) dangle("obs[" + s + "][L]: " + oo[1]);
  }
  for (const auto& s : m.states) {
    if (!m.obs.count(s))
      rep.violations.push_back({Violation::Kind::partial_observation, s});
  }

  for (const auto& t : m.trans) {
    if (!states.count(t.src)) dangle("trans src: " + t.src);
    if (!states.count(t.dst)) dangle("trans dst: " + t.dst);
    if (!ah.count(t.act_h)) dangle("trans act_h: " + t.act_h);
    if (!al.count(t.act_l)) dangle("trans act_l: " + t.act_l);
  }

  // Input-enabledness, checked only over well-formed transitions.
  std::set<std::tuple<std::string, std::string, std::string>> covered;
  for (const auto& t : m.trans) {
    if (states.count(t.src) && states.count(t.dst) && ah.count(t.act_h) &&
        al.count(t.act_l))
      covered.insert({t.src, t.act_h, t.act_l});
  }
  for (const auto& s : m.states)
    for (const auto& a : m.actions_h)
      for (const auto& b : m.actions_l)
        if (!covered.count({s, a, b}))
          rep.violations.push_back({Violation::Kind::missing_transition,
                                    s + " (" + a + "," + b + ")"});
  return rep;
}

/// A run s_0 a_1 s_1 ... a_n s_n. `states` has one more element than
/// `actions`; `actions[i]` is the joint (H, L) action of step i+1.
struct Run {
  std::vector<std::string> states;                       // n + 1
  std::vector<std::pair<std::string, std::string>> actions;  // n

  std::size_t length() const { return actions.size(); }

  friend bool operator==(const Run&, const Run&) = default;
  friend auto operator<=>(const Run&, const Run&) = default;
};

/// An agent's view of a run: obs_u(s_0) proj_u(a_1) obs_u(s_1) ... The trace
/// alternates observations and that agent's own actions and always starts and
/// ends with an observation. The length of a view is its action count.
struct View {
  Agent agent = Agent::L;
  std::vector<std::string> trace;  // o a o a ... o

  std::size_t length() const { return trace.empty() ? 0 : trace.size() / 2; }

  std::vector<std::string> observations() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < trace.size(); i += 2) out.push_back(trace[i]);
    return out;
  }

  /// Observations joined without separator; matches the compressed notation
  /// used for machines with single-character observations.
  std::string observation_string() const {
    std::string out;
    for (std::size_t i = 0; i < trace.size(); i += 2) out += trace[i];
    return out;
  }

  friend bool operator==(const View&, const View&) = default;
  friend auto operator<=>(const View&, const View&) = default;
};

/// Index-compiled form of a validated machine. All checkers work on this;
/// indices follow the canonical lexicographic order of the identifier lists.
class CompiledMachine {
 public:
  explicit CompiledMachine(const Machine& m) : src_(&m) {
    auto rep = validate_machine(m);
    if (!rep.ok())
      throw std::invalid_argument("machine fails validation (" +
                                  rep.violations.front().element + ")");
    states_ = m.states;
    actions_h_ = m.actions_h;
    actions_l_ = m.actions_l;
    observations_ = m.observations;
    std::sort(states_.begin(), states_.end());
    std::sort(actions_h_.begin(), actions_h_.end());
    std::sort(actions_l_.begin(), actions_l_.end());
    std::sort(observations_.begin(), observations_.end());
    for (std::size_t i = 0; i < states_.size(); ++i) state_ix_[states_[i]] = i;
    for (std::size_t i = 0; i < actions_h_.size(); ++i) ah_ix_[actions_h_[i]] = i;
    for (std::size_t i = 0; i < actions_l_.size(); ++i) al_ix_[actions_l_[i]] = i;
    for (std::size_t i = 0; i < observations_.size(); ++i)
      obs_ix_[observations_[i]] = i;

    initial_ = state_ix_.at(m.initial);
    obs_h_.resize(states_.size());
    obs_l_.resize(states_.size());
    for (const auto& [s, oo] : m.obs) {
      obs_h_[state_ix_.at(s)] = obs_ix_.at(oo[0]);
      obs_l_[state_ix_.at(s)] = obs_ix_.at(oo[1]);
    }

    succ_.assign(states_.size() * actions_h_.size() * actions_l_.size(), {});
    for (const auto& t : m.trans)
      succ_[flat(state_ix_.at(t.src), ah_ix_.at(t.act_h), al_ix_.at(t.act_l))]
          .push_back(static_cast<int>(state_ix_.at(t.dst)));
    for (auto& v : succ_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    succ_mask_.reserve(succ_.size());
    for (const auto& v : succ_) {
      StateSet s(states_.size());
      for (int t : v) s.set(t);
      succ_mask_.push_back(std::move(s));
    }
    obs_h_mask_.assign(observations_.size(), StateSet(states_.size()));
    obs_l_mask_.assign(observations_.size(), StateSet(states_.size()));
    for (std::size_t s = 0; s < states_.size(); ++s) {
      obs_h_mask_[obs_h_[s]].set(s);
      obs_l_mask_[obs_l_[s]].set(s);
    }
  }

  const Machine& source() const { return *src_; }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions_h() const { return actions_h_.size(); }
  std::size_t num_actions_l() const { return actions_l_.size(); }
  std::size_t num_observations() const { return observations_.size(); }

  int initial() const { return initial_; }
  int obs_h(int s) const { return obs_h_[s]; }
  int obs_l(int s) const { return obs_l_[s]; }

  const std::string& state_name(int i) const { return states_[i]; }
  const std::string& action_h_name(int i) const { return actions_h_[i]; }
  const std::string& action_l_name(int i) const { return actions_l_[i]; }
  const std::string& observation_name(int i) const { return observations_[i]; }

  int state_index(const std::string& s) const { return lookup(state_ix_, s, "state"); }
  int action_h_index(const std::string& a) const { return lookup(ah_ix_, a, "H action"); }
  int action_l_index(const std::string& a) const { return lookup(al_ix_, a, "L action"); }
  int observation_index(const std::string& o) const {
    return lookup(obs_ix_, o, "observation");
  }

  const std::vector<int>& successors(int s, int ah, int al) const {
    return succ_[flat(s, ah, al)];
  }
  const StateSet& successor_set(int s, int ah, int al) const {
    return succ_mask_[flat(s, ah, al)];
  }
  const StateSet& obs_h_mask(int o) const { return obs_h_mask_[o]; }
  const StateSet& obs_l_mask(int o) const { return obs_l_mask_[o]; }

  StateSet empty_set() const { return StateSet(states_.size()); }
  StateSet singleton(int s) const {
    StateSet out(states_.size());
    out.set(s);
    return out;
  }

  /// delta_{a,b,o}(T): successors of T under joint action (a, b) whose L
  /// observation is o.
  StateSet delta_abo(const StateSet& t_set, int ah, int al, int ol) const {
    StateSet out(states_.size());
    t_set.for_each([&](std::size_t s) {
      out |= succ_mask_[flat(static_cast<int>(s), ah, al)];
    });
    out &= obs_l_mask_[ol];
    return out;
  }

  /// delta_{aH,oH,aL,oL}(k): successors of k under (aH, aL) filtered by both
  /// agents' observations.
  StateSet knowledge_update(const StateSet& k, int ah, int oh, int al, int ol) const {
    StateSet out = delta_abo(k, ah, al, ol);
    out &= obs_h_mask_[oh];
    return out;
  }

  /// Successors of U under a given L action with L observation ol, with the
  /// H action unconstrained.
  StateSet view_step(const StateSet& u, int al, int ol) const {
    StateSet out(states_.size());
    u.for_each([&](std::size_t s) {
      for (std::size_t ah = 0; ah < actions_h_.size(); ++ah)
        out |= succ_mask_[flat(static_cast<int>(s), static_cast<int>(ah), al)];
    });
    out &= obs_l_mask_[ol];
    return out;
  }

 private:
  std::size_t flat(int s, int ah, int al) const {
    return (static_cast<std::size_t>(s) * actions_h_.size() + ah) * actions_l_.size() +
           al;
  }
  static int lookup(const std::unordered_map<std::string, std::size_t>& m,
                    const std::string& k, const char* what) {
    auto it = m.find(k);
    if (it == m.end())
      throw std::invalid_argument(std::string("unknown ") + what + ": " + k);
    return static_cast<int>(it->second);
  }

  const Machine* src_;
  std::vector<std::string> states_, actions_h_, actions_l_, observations_;
  std::unordered_map<std::string, std::size_t> state_ix_, ah_ix_, al_ix_, obs_ix_;
  int initial_ = 0;
  std::vector<int> obs_h_, obs_l_;
  std::vector<std::vector<int>> succ_;
  std::vector<StateSet> succ_mask_;
  std::vector<StateSet> obs_h_mask_, obs_l_mask_;
};

/// True iff every state's transitions depend on at most one agent's action:
/// at each state, either the L component of the joint action is irrelevant or
/// the H component is.
inline bool is_scheduled(const Machine& m) {
  CompiledMachine cm(m);
  for (std::size_t s = 0; s < cm.num_states(); ++s) {
    bool h_only = true;  // successors independent of the L action
    for (std::size_t a = 0; a < cm.num_actions_h() && h_only; ++a)
      for (std::size_t b = 1; b < cm.num_actions_l() && h_only; ++b)
        if (cm.successors(s, a, b) != cm.successors(s, a, 0)) h_only = false;
    if (h_only) continue;
    bool l_only = true;
    for (std::size_t b = 0; b < cm.num_actions_l() && l_only; ++b)
      for (std::size_t a = 1; a < cm.num_actions_h() && l_only; ++a)
        if (cm.successors(s, a, b) != cm.successors(s, 0, b)) l_only = false;
    if (!l_only) return false;
  }
  return true;
}

inline std::set<std::string> successors(const Machine& m, const std::string& s,
                                        const std::string& a_h,
                                        const std::string& a_l) {
  CompiledMachine cm(m);
  std::set<std::string> out;
  for (int t :
       cm.successors(cm.state_index(s), cm.action_h_index(a_h), cm.action_l_index(a_l)))
    out.insert(cm.state_name(t));
  return out;
}

/// True iff r starts at the initial state and every step is a transition.
inline bool is_run_of(const Machine& m, const Run& r) {
  if (r.states.empty() || r.states.front() != m.initial) return false;
  if (r.actions.size() + 1 != r.states.size()) return false;
  std::set<Transition> ts(m.trans.begin(), m.trans.end());
  for (std::size_t i = 0; i < r.actions.size(); ++i) {
    if (!ts.count({r.states[i], r.actions[i].first, r.actions[i].second,
                   r.states[i + 1]}))
      return false;
  }
  return true;
}

inline View view_of_run(const Machine& m, const Run& r, Agent u) {
  if (!is_run_of(m, r)) throw std::invalid_argument("not a run of the machine");
  View v;
  v.agent = u;
  const std::size_t oi = (u == Agent::H) ? 0 : 1;
  v.trace.push_back(m.obs.at(r.states[0])[oi]);
  for (std::size_t i = 0; i < r.actions.size(); ++i) {
    v.trace.push_back(u == Agent::H ? r.actions[i].first : r.actions[i].second);
    v.trace.push_back(m.obs.at(r.states[i + 1])[oi]);
  }
  return v;
}

/// All runs of length <= depth, lexicographic within each length, shorter
/// lengths first. Throws ResourceLimitError past `max_runs`.
inline std::vector<Run> enumerate_runs(const Machine& m, std::size_t depth,
                                       std::size_t max_runs = std::size_t{1} << 22) {
  CompiledMachine cm(m);
  std::vector<Run> out;
  Run root;
  root.states.push_back(m.initial);
  out.push_back(root);
  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      int s = cm.state_index(out[i].states.back());
      for (std::size_t a = 0; a < cm.num_actions_h(); ++a)
        for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
          for (int t : cm.successors(s, a, b)) {
            if (out.size() >= max_runs)
              throw ResourceLimitError("enumerate_runs: run cap exceeded");
            Run r = out[i];
            r.actions.emplace_back(cm.action_h_name(a), cm.action_l_name(b));
            r.states.push_back(cm.state_name(t));
            out.push_back(std::move(r));
          }
    }
    level_begin = level_end;
  }
  return out;
}

/// { view_L(r) | r a run of length <= depth }, duplicate-free.
inline std::set<View> l_view_language(const Machine& m, std::size_t depth,
                                      std::size_t max_runs = std::size_t{1} << 22) {
  std::set<View> out;
  for (const auto& r : enumerate_runs(m, depth, max_runs))
    out.insert(view_of_run(m, r, Agent::L));
  return out;
}

/// Restriction of m to the states reachable from the initial state.
inline Machine reachable_restriction(const Machine& m) {
  CompiledMachine cm(m);
  std::vector<bool> seen(cm.num_states(), false);
  std::vector<int> stack{cm.initial()};
  seen[cm.initial()] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < cm.num_actions_h(); ++a)
      for (std::size_t b = 0; b < cm.num_actions_l(); ++b)
        for (int t : cm.successors(s, a, b))
          if (!seen[t]) {
            seen[t] = true;
            stack.push_back(t);
          }
  }
  Machine out;
  out.initial = m.initial;
  out.actions_h = m.actions_h;
  out.actions_l = m.actions_l;
  out.observations = m.observations;
  for (std::size_t s = 0; s < cm.num_states(); ++s)
    if (seen[s]) {
      out.states.push_back(cm.state_name(s));
      out.obs[cm.state_name(s)] = m.obs.at(cm.state_name(s));
    }
  for (const auto& t : m.trans)
    if (seen[cm.state_index(t.src)]) out.trans.push_back(t);
  return canonicalize(out);
}

}  // namespace syncsec
