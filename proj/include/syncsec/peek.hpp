#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "syncsec/machine.hpp"

namespace syncsec {

/// Two-player peek-box game in which player 1 cannot see player 2's plates.
/// Plates 1..n1 belong to player 1, n1+1..n to player 2; phi1/phi2 are DNF
/// winning conditions over plate positions (literal +k means plate k out,
/// -k means plate k in); nu0 is the initial position vector.
struct PeekInstance {
  int n = 0;
  int n1 = 0;
  std::vector<std::vector<int>> phi1, phi2;  // clauses of signed literals
  std::vector<int> nu0;                      // 0/1, size n

  friend bool operator==(const PeekInstance&, const PeekInstance&) = default;
};

inline void validate_peek(const PeekInstance& g) {
  if (g.n < 1 || g.n1 < 1 || g.n1 >= g.n)
    throw std::invalid_argument("peek: need 1 <= n1 < n");
  if (static_cast<int>(g.nu0.size()) != g.n)
    throw std::invalid_argument("peek: nu0 must assign all n plates");
  for (int v : g.nu0)
    if (v != 0 && v != 1) throw std::invalid_argument("peek: nu0 values in {0,1}");
  for (const auto* phi : {&g.phi1, &g.phi2})
    for (const auto& clause : *phi) {
      std::set<int> seen;
      for (int lit : clause) {
        const int k = lit > 0 ? lit : -lit;
        if (lit == 0 || k > g.n)
          throw std::invalid_argument("peek: literal index out of range");
        if (!seen.insert(k).second)
          throw std::invalid_argument("peek: repeated proposition in clause");
      }
    }
}

/// Open^player_hole(plate, pos): plate in position pos does not block the
/// given hole of the given player.
inline bool open_predicate(const PeekInstance& g, int player, int hole, int plate,
                           int pos) {
  validate_peek(g);
  const auto& phi = player == 1 ? g.phi1 : g.phi2;
  if (player != 1 && player != 2)
    throw std::invalid_argument("peek: player must be 1 or 2");
  if (hole < 1 || hole > static_cast<int>(phi.size()))
    throw std::invalid_argument("peek: hole index out of range");
  if (plate < 1 || plate > g.n)
    throw std::invalid_argument("peek: plate index out of range");
  if (pos != 0 && pos != 1)
    throw std::invalid_argument("peek: pos must be 0 or 1");
  for (int lit : phi[hole - 1]) {
    if (lit == plate) return pos == 1;
    if (lit == -plate) return pos == 0;
  }
  return true;  // hole never blocked by this plate
}

enum class PeekResult { win, no_win, unknown_within_bound };

namespace detail {
inline bool peek_sat(const std::vector<std::vector<int>>& phi,
                     const std::vector<int>& nu) {
  for (const auto& clause : phi) {
    bool ok = true;
    for (int lit : clause) {
      const int k = (lit > 0 ? lit : -lit) - 1;
      if ((lit > 0) != (nu[k] == 1)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}
}  // namespace detail

/// Decides whether player 1 has a winning blindfold strategy of at most
/// move_bound moves. Player 1's strategy is a plain move sequence; the
/// search keeps the frontier of undecided valuations at player 1's turn and
/// looks for a move sequence that empties it before player 2 ever wins.
/// With the frontier graph finite, exhausting it without reaching the empty
/// frontier proves no strategy of any length wins (no_win); hitting the
/// bound first yields unknown_within_bound.
inline PeekResult solve_peek(const PeekInstance& g, int move_bound = 6,
                             bool initial_win_counts = false) {
  validate_peek(g);
  if (initial_win_counts && detail::peek_sat(g.phi1, g.nu0))
    return PeekResult::win;

  using Frontier = std::set<std::vector<int>>;
  std::set<Frontier> visited;
  std::vector<Frontier> level{Frontier{g.nu0}};
  visited.insert(level.front());

  // player moves: 0 = pass, i = flip plate i
  std::vector<int> p1_moves{0}, p2_moves{0};
  for (int i = 1; i <= g.n1; ++i) p1_moves.push_back(i);
  for (int i = g.n1 + 1; i <= g.n; ++i) p2_moves.push_back(i);

  for (int depth = 0; depth < move_bound && !level.empty(); ++depth) {
    std::vector<Frontier> next_level;
    for (const Frontier& f : level)
      for (int lambda : p1_moves) {
        Frontier fp;
        bool p2_wins = false;
        for (const auto& nu : f) {
          std::vector<int> nu1 = nu;
          if (lambda) nu1[lambda - 1] ^= 1;
          if (detail::peek_sat(g.phi1, nu1)) continue;  // play won, drop
          for (int mu : p2_moves) {
            std::vector<int> nu2 = nu1;
            if (mu) nu2[mu - 1] ^= 1;
            if (detail::peek_sat(g.phi2, nu2)) {
              p2_wins = true;
              break;
            }
            fp.insert(std::move(nu2));
          }
          if (p2_wins) break;
        }
        if (p2_wins) continue;
        if (fp.empty()) return PeekResult::win;
        if (visited.insert(fp).second) next_level.push_back(std::move(fp));
      }
    level = std::move(next_level);
  }
  // empty level: the whole frontier graph was explored without a win
  return level.empty() ? PeekResult::no_win : PeekResult::unknown_within_bound;
}

/// Builds the scheduled machine M(G) whose NDS status matches the game: H's
/// strategy can exclude an L view iff player 1 has a winning blindfold
/// strategy. One plate is picked nondeterministically at the first step and
/// silently monitored; L plays player-1 moves (checkwin doubles as pass), H
/// asserts hole openness/blockedness, wrong assertions fall into error
/// states whose checkwin observations can never be excluded.
inline Machine peek_to_machine(const PeekInstance& g) {
  validate_peek(g);
  const int h1 = static_cast<int>(g.phi1.size());
  const int h2 = static_cast<int>(g.phi2.size());

  // stages C = L1, H0, L2, bot, H_1..H_h2; schedule kinds per stage
  std::vector<std::string> stages{"L1", "H0", "L2", "bot"};
  for (int j = 1; j <= h2; ++j) stages.push_back("H" + std::to_string(j));
  auto nxt = [&](int c) { return (c + 1) % static_cast<int>(stages.size()); };

  // move identifiers recorded in states / observed by H
  std::vector<std::string> moves{"bot", "pass"};
  for (int i = 1; i <= g.n; ++i) moves.push_back("move_" + std::to_string(i));

  auto plate_state = [&](int c, int i, int k, const std::string& a) {
    return stages[c] + ":" + std::to_string(i) + ":" + std::to_string(k) + ":" + a;
  };
  auto final_state = [&](int c, const std::string& r, const std::string& x) {
    return stages[c] + ":" + r + ":" + x;
  };
  // the five legal (result, observation) tags of final states
  const std::vector<std::pair<std::string, std::string>> fin_tags{
      {"win", "bot"}, {"error", "bot"}, {"win", "1"}, {"error", "1"}, {"error", "2"}};

  Machine m;
  m.initial = "s0";
  for (int i = 1; i <= g.n1; ++i)
    m.actions_l.push_back("move_" + std::to_string(i));
  m.actions_l.push_back("checkwin");
  for (int j = 1; j <= h1; ++j)
    m.actions_h.push_back("isOpen_" + std::to_string(j));
  for (int i = 1; i <= g.n; ++i)
    m.actions_h.push_back("isBlocking_" + std::to_string(i));

  m.observations = {"bot", "1", "2", "end"};
  for (const auto& a : moves)
    if (a != "bot") m.observations.push_back(a);

  m.states.push_back("s0");
  m.obs["s0"] = {"bot", "bot"};
  for (int c = 0; c < static_cast<int>(stages.size()); ++c) {
    for (int i = 1; i <= g.n; ++i)
      for (int k = 0; k <= 1; ++k)
        for (const auto& a : moves) {
          const std::string s = plate_state(c, i, k, a);
          m.states.push_back(s);
          m.obs[s] = {a, "bot"};  // H sees the last move, L sees nothing
        }
    for (const auto& [r, x] : fin_tags) {
      const std::string s = final_state(c, r, x);
      m.states.push_back(s);
      m.obs[s] = {"end", x == "bot" ? "bot" : x};
    }
  }

  auto h_edge = [&](const std::string& src, const std::string& ah,
                    const std::string& dst) {
    for (const auto& b : m.actions_l) m.trans.push_back({src, ah, b, dst});
  };
  auto l_edge = [&](const std::string& src, const std::string& al,
                    const std::string& dst) {
    for (const auto& a : m.actions_h) m.trans.push_back({src, a, al, dst});
  };
  auto sys_edge = [&](const std::string& src, const std::string& dst) {
    for (const auto& a : m.actions_h)
      for (const auto& b : m.actions_l) m.trans.push_back({src, a, b, dst});
  };

  auto open1 = [&](int j, int i, int k) { return open_predicate(g, 1, j, i, k); };
  auto open2 = [&](int j, int i, int k) { return open_predicate(g, 2, j, i, k); };

  const int c_l1 = 0, c_h0 = 1, c_l2 = 2, c_bot = 3;

  // initial step: nondeterministically pick the monitored plate
  for (int i = 1; i <= g.n; ++i)
    sys_edge("s0", plate_state(c_l1, i, g.nu0[i - 1], "bot"));

  for (int i = 1; i <= g.n; ++i)
    for (int k = 0; k <= 1; ++k)
      for (const auto& a : moves) {
        // stage L1: player 1 moves a plate or passes via checkwin
        for (int j = 1; j <= g.n1; ++j)
          l_edge(plate_state(c_l1, i, k, a), "move_" + std::to_string(j),
                 plate_state(c_h0, i, j == i ? 1 - k : k,
                             "move_" + std::to_string(j)));
        l_edge(plate_state(c_l1, i, k, a), "checkwin",
               plate_state(c_h0, i, k, "pass"));

        // stage H0: H may claim a player-1 hole is open, or decline
        for (int j = 1; j <= h1; ++j)
          h_edge(plate_state(c_h0, i, k, a), "isOpen_" + std::to_string(j),
                 final_state(c_l2, open1(j, i, k) ? "win" : "error", "bot"));
        for (int j = 1; j <= g.n; ++j)
          h_edge(plate_state(c_h0, i, k, a), "isBlocking_" + std::to_string(j),
                 plate_state(c_l2, i, k, "bot"));

        // stage L2: checkwin before any claim yields both observations
        l_edge(plate_state(c_l2, i, k, a), "checkwin",
               final_state(c_bot, "error", "1"));
        l_edge(plate_state(c_l2, i, k, a), "checkwin",
               final_state(c_bot, "error", "2"));
        for (int j = 1; j <= g.n1; ++j)
          l_edge(plate_state(c_l2, i, k, a), "move_" + std::to_string(j),
                 plate_state(c_bot, i, k, "bot"));

        // stage bot: player 2 moves one of its plates or passes
        for (int j = g.n1 + 1; j <= g.n; ++j)
          sys_edge(plate_state(c_bot, i, k, a),
                   plate_state(nxt(c_bot), i, j == i ? 1 - k : k,
                               "move_" + std::to_string(j)));
        sys_edge(plate_state(c_bot, i, k, a),
                 plate_state(nxt(c_bot), i, k, "pass"));

        // stages H_1..H_h2: H must name a blocking plate per player-2 hole
        for (int j = 1; j <= h2; ++j) {
          const int c = c_bot + j;
          for (int ip = 1; ip <= g.n; ++ip) {
            const bool truthful = ip != i || !open2(j, i, k);
            h_edge(plate_state(c, i, k, a), "isBlocking_" + std::to_string(ip),
                   truthful ? plate_state(nxt(c), i, k, "bot")
                            : final_state(nxt(c), "error", "bot"));
          }
          for (int jp = 1; jp <= h1; ++jp)
            h_edge(plate_state(c, i, k, a), "isOpen_" + std::to_string(jp),
                   final_state(nxt(c), "error", "bot"));
        }
      }

  // final-state cycling; checkwin at stage L2 resolves pending claims
  for (int c = 0; c < static_cast<int>(stages.size()); ++c)
    for (const auto& [r, x] : fin_tags) {
      const std::string s = final_state(c, r, x);
      if (c == c_l2 && x == "bot") {
        if (r == "win") {
          l_edge(s, "checkwin", final_state(nxt(c), "win", "1"));
        } else {
          l_edge(s, "checkwin", final_state(nxt(c), "error", "1"));
          l_edge(s, "checkwin", final_state(nxt(c), "error", "2"));
        }
        for (int j = 1; j <= g.n1; ++j)
          l_edge(s, "move_" + std::to_string(j), final_state(nxt(c), r, x));
      } else {
        sys_edge(s, final_state(nxt(c), r, x));
      }
    }

  return canonicalize(m);
}

}  // namespace syncsec
