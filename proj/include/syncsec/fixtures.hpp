#pragma once

#include "syncsec/machine.hpp"

namespace syncsec {

/// 5-state machine where H's first move is hidden from L for one step but a
/// knowledge-directed H strategy can steer L's next observation. Satisfies
/// NDI, violates NDS (and hence RES).
///
/// s0 branches to s1/s2 under every joint action; from s1/s2 the successor's
/// L observation is obs_H(current) xor the H action (s3 has obs_L 0, s4 has
/// obs_L 1); s3 and s4 are absorbing.
inline Machine fixture_fig1() {
  Machine m;
  m.states = {"s0", "s1", "s2", "s3", "s4"};
  m.initial = "s0";
  m.actions_h = {"0", "1"};
  m.actions_l = {"0"};
  m.observations = {"0", "1"};
  m.obs["s0"] = {"0", "0"};
  m.obs["s1"] = {"0", "0"};
  m.obs["s2"] = {"1", "0"};
  m.obs["s3"] = {"0", "0"};
  m.obs["s4"] = {"0", "1"};
  for (const char* a : {"0", "1"}) {
    m.trans.push_back({"s0", a, "0", "s1"});
    m.trans.push_back({"s0", a, "0", "s2"});
    m.trans.push_back({"s3", a, "0", "s3"});
    m.trans.push_back({"s4", a, "0", "s4"});
  }
  m.trans.push_back({"s1", "0", "0", "s3"});
  m.trans.push_back({"s1", "1", "0", "s4"});
  m.trans.push_back({"s2", "0", "0", "s4"});
  m.trans.push_back({"s2", "1", "0", "s3"});
  return canonicalize(m);
}

/// 8-state machine whose L-view observation language is the prefixes of
/// 000((00)* + (01)*). H's first action selects whether both periodic
/// futures stay open (via s1) or only one of them (via s2/s3). Satisfies
/// NDI and NDS, violates RES.
inline Machine fixture_fig2() {
  Machine m;
  m.states = {"s0", "s1", "s2", "s3", "s4", "s5", "s6", "s7"};
  m.initial = "s0";
  m.actions_h = {"0", "1"};
  m.actions_l = {"0"};
  m.observations = {"0", "1"};
  for (const auto& s : m.states) m.obs[s] = {"0", "0"};
  m.obs["s7"] = {"0", "1"};
  m.trans.push_back({"s0", "0", "0", "s1"});
  m.trans.push_back({"s0", "1", "0", "s2"});
  m.trans.push_back({"s0", "1", "0", "s3"});
  for (const char* a : {"0", "1"}) {
    m.trans.push_back({"s1", a, "0", "s4"});
    m.trans.push_back({"s1", a, "0", "s5"});
    m.trans.push_back({"s2", a, "0", "s4"});
    m.trans.push_back({"s3", a, "0", "s5"});
    m.trans.push_back({"s4", a, "0", "s4"});
    m.trans.push_back({"s5", a, "0", "s6"});
    m.trans.push_back({"s6", a, "0", "s7"});
    m.trans.push_back({"s7", a, "0", "s6"});
  }
  return canonicalize(m);
}

}  // namespace syncsec
