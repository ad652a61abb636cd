#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "syncsec/machine.hpp"
#include "syncsec/ndi.hpp"
#include "syncsec/nds.hpp"
#include "syncsec/nfa.hpp"
#include "syncsec/peek.hpp"
#include "syncsec/res.hpp"

namespace syncsec {

using json = nlohmann::json;

namespace detail {
inline void require_keys(const json& j, const std::set<std::string>& allowed,
                         const char* what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw std::invalid_argument(std::string(what) + ": unknown key '" + key + "'");
  for (const auto& key : allowed)
    if (!j.count(key))
      throw std::invalid_argument(std::string(what) + ": missing key '" + key + "'");
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(what) + ": expected a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw std::invalid_argument(std::string(what) + ": expected strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}
}  // namespace detail

inline json machine_to_json(const Machine& m) {
  json j;
  j["states"] = m.states;
  j["initial"] = m.initial;
  j["actions_h"] = m.actions_h;
  j["actions_l"] = m.actions_l;
  j["observations"] = m.observations;
  json obs = json::object();
  for (const auto& [s, oo] : m.obs) obs[s] = {{"H", oo[0]}, {"L", oo[1]}};
  j["obs"] = obs;
  json trans = json::array();
  for (const auto& t : m.trans)
    trans.push_back({t.src, t.act_h, t.act_l, t.dst});
  j["trans"] = trans;
  return j;
}

inline Machine machine_from_json(const json& j) {
  detail::require_keys(
      j, {"states", "initial", "actions_h", "actions_l", "observations", "obs",
          "trans"},
      "machine");
  Machine m;
  m.states = detail::string_list(j.at("states"), "machine.states");
  if (!j.at("initial").is_string())
    throw std::invalid_argument("machine.initial: expected a string");
  m.initial = j.at("initial").get<std::string>();
  m.actions_h = detail::string_list(j.at("actions_h"), "machine.actions_h");
  m.actions_l = detail::string_list(j.at("actions_l"), "machine.actions_l");
  m.observations = detail::string_list(j.at("observations"), "machine.observations");
  if (!j.at("obs").is_object())
    throw std::invalid_argument("machine.obs: expected an object");
  for (const auto& [s, entry] : j.at("obs").items()) {
    detail::require_keys(entry, {"H", "L"}, "machine.obs entry");
    m.obs[s] = {entry.at("H").get<std::string>(), entry.at("L").get<std::string>()};
  }
  if (!j.at("trans").is_array())
    throw std::invalid_argument("machine.trans: expected a list");
  for (const auto& t : j.at("trans")) {
    auto tuple = detail::string_list(t, "machine.trans entry");
    if (tuple.size() != 4)
      throw std::invalid_argument("machine.trans entry: expected [src, aH, aL, dst]");
    m.trans.push_back({tuple[0], tuple[1], tuple[2], tuple[3]});
  }
  return m;
}

inline json nfa_to_json(const Nfa& a) {
  json j;
  j["states"] = a.states;
  j["initial"] = a.initial;
  j["alphabet"] = a.alphabet;
  j["final"] = a.final;
  json trans = json::array();
  for (const auto& t : a.trans) trans.push_back({t[0], t[1], t[2]});
  j["trans"] = trans;
  return j;
}

inline Nfa nfa_from_json(const json& j) {
  detail::require_keys(j, {"states", "initial", "alphabet", "final", "trans"},
                       "nfa");
  Nfa a;
  a.states = detail::string_list(j.at("states"), "nfa.states");
  a.initial = detail::string_list(j.at("initial"), "nfa.initial");
  a.alphabet = detail::string_list(j.at("alphabet"), "nfa.alphabet");
  a.final = detail::string_list(j.at("final"), "nfa.final");
  if (!j.at("trans").is_array())
    throw std::invalid_argument("nfa.trans: expected a list");
  for (const auto& t : j.at("trans")) {
    auto tuple = detail::string_list(t, "nfa.trans entry");
    if (tuple.size() != 3)
      throw std::invalid_argument("nfa.trans entry: expected [src, letter, dst]");
    a.trans.push_back({tuple[0], tuple[1], tuple[2]});
  }
  return a;
}

inline json peek_to_json(const PeekInstance& g) {
  json j;
  j["n"] = g.n;
  j["n1"] = g.n1;
  j["phi1"] = g.phi1;
  j["phi2"] = g.phi2;
  j["nu0"] = g.nu0;
  return j;
}

inline PeekInstance peek_from_json(const json& j) {
  detail::require_keys(j, {"n", "n1", "phi1", "phi2", "nu0"}, "peek");
  PeekInstance g;
  g.n = j.at("n").get<int>();
  g.n1 = j.at("n1").get<int>();
  g.phi1 = j.at("phi1").get<std::vector<std::vector<int>>>();
  g.phi2 = j.at("phi2").get<std::vector<std::vector<int>>>();
  g.nu0 = j.at("nu0").get<std::vector<int>>();
  return g;
}

inline json ndi_witness_to_json(const NdiWitness& w) {
  json j;
  j["alpha"] = w.h_actions;
  j["view"] = w.l_view.trace;
  return j;
}

inline NdiWitness ndi_witness_from_json(const json& j) {
  detail::require_keys(j, {"alpha", "view"}, "ndi witness");
  NdiWitness w;
  w.h_actions = detail::string_list(j.at("alpha"), "ndi witness.alpha");
  w.l_view.agent = Agent::L;
  w.l_view.trace = detail::string_list(j.at("view"), "ndi witness.view");
  return w;
}

inline json nds_witness_to_json(const NdsWitness& w) {
  json j;
  j["beta"] = w.excluded_view.trace;
  json strategy = json::array();
  for (const auto& level : w.strategy.levels) {
    json entries = json::array();
    for (const auto& [knowledge, action] : level)
      entries.push_back({{"knowledge", knowledge}, {"action", action}});
    strategy.push_back(entries);
  }
  j["strategy"] = strategy;
  return j;
}

inline NdsWitness nds_witness_from_json(const json& j) {
  detail::require_keys(j, {"beta", "strategy"}, "nds witness");
  NdsWitness w;
  w.excluded_view.agent = Agent::L;
  w.excluded_view.trace = detail::string_list(j.at("beta"), "nds witness.beta");
  if (!j.at("strategy").is_array())
    throw std::invalid_argument("nds witness.strategy: expected a list");
  for (const auto& level : j.at("strategy")) {
    std::map<std::vector<std::string>, std::string> lv;
    if (!level.is_array())
      throw std::invalid_argument("nds witness.strategy level: expected a list");
    for (const auto& entry : level) {
      detail::require_keys(entry, {"knowledge", "action"}, "nds strategy entry");
      lv[detail::string_list(entry.at("knowledge"), "nds strategy knowledge")] =
          entry.at("action").get<std::string>();
    }
    w.strategy.levels.push_back(std::move(lv));
  }
  return w;
}

inline json res_verdict_to_json(const ResVerdict& v) {
  json j;
  j["verdict"] = v.satisfies ? "satisfies" : "violates";
  if (v.satisfies) {
    j["blocks"] = v.partition->blocks;
  } else {
    const auto& c = *v.counterexample;
    j["counterexample"] = {c.state, c.a_h1, c.a_h2, c.a_l};
  }
  return j;
}

}  // namespace syncsec
