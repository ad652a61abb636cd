#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "syncsec/machine.hpp"
#include "syncsec/nfa.hpp"

namespace syncsec {

namespace detail {
// mt19937 output reduced by modulo: biased but identical on every platform,
// unlike std::uniform_int_distribution.
inline std::uint32_t rand_below(std::mt19937& rng, std::uint32_t n) {
  return rng() % n;
}
}  // namespace detail

struct RandomMachineParams {
  std::size_t num_states = 4;
  std::size_t num_actions_h = 2;
  std::size_t num_actions_l = 2;
  std::size_t num_observations = 2;
  // percent chance of each extra successor beyond the mandatory one
  std::uint32_t extra_edge_percent = 25;
};

/// Deterministic seeded machine generator; the output always passes
/// validate_machine (one mandatory successor per (state, joint action),
/// extra successors by coin flip, total observation maps).
inline Machine random_machine(std::uint64_t seed,
                              const RandomMachineParams& p = {}) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
  Machine m;
  for (std::size_t i = 0; i < p.num_states; ++i)
    m.states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < p.num_actions_h; ++i)
    m.actions_h.push_back("a" + std::to_string(i));
  for (std::size_t i = 0; i < p.num_actions_l; ++i)
    m.actions_l.push_back("b" + std::to_string(i));
  for (std::size_t i = 0; i < p.num_observations; ++i)
    m.observations.push_back("o" + std::to_string(i));
  m.initial = "s0";
  for (const auto& s : m.states)
    m.obs[s] = {
        m.observations[detail::rand_below(rng, p.num_observations)],
        m.observations[detail::rand_below(rng, p.num_observations)]};
  for (const auto& s : m.states)
    for (const auto& a : m.actions_h)
      for (const auto& b : m.actions_l) {
        m.trans.push_back(
            {s, a, b, m.states[detail::rand_below(rng, p.num_states)]});
        for (const auto& t : m.states)
          if (detail::rand_below(rng, 100) < p.extra_edge_percent)
            m.trans.push_back({s, a, b, t});
      }
  return canonicalize(m);
}

struct RandomNfaParams {
  std::size_t num_states = 3;
  std::size_t num_letters = 2;
  // percent chance per possible transition / initial flag / final flag
  std::uint32_t edge_percent = 50;
  std::uint32_t initial_percent = 50;
  std::uint32_t final_percent = 50;
};

/// Deterministic seeded NFA generator; initial and final sets may be empty
/// and transitions may be partial (both exercised by the reduction).
inline Nfa random_nfa(std::uint64_t seed, const RandomNfaParams& p = {}) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
  Nfa a;
  for (std::size_t i = 0; i < p.num_states; ++i)
    a.states.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < p.num_letters; ++i)
    a.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
  for (const auto& q : a.states) {
    if (detail::rand_below(rng, 100) < p.initial_percent) a.initial.push_back(q);
    if (detail::rand_below(rng, 100) < p.final_percent) a.final.push_back(q);
  }
  for (const auto& q : a.states)
    for (const auto& letter : a.alphabet)
      for (const auto& t : a.states)
        if (detail::rand_below(rng, 100) < p.edge_percent)
          a.trans.push_back({q, letter, t});
  return a;
}

}  // namespace syncsec
