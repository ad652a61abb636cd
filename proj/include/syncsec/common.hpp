#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace syncsec {

enum class Agent { H, L };

inline const char* agent_name(Agent u) { return u == Agent::H ? "H" : "L"; }

/// Thrown when a configured visited-set / enumeration cap is exceeded.
/// Checkers never return a verdict past a tripped limit.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fixed-universe bit set over state indices. All sets taking part in one
/// computation share the same universe size.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }

  bool is_subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.words_ == b.words_;
  }
  friend bool operator!=(const StateSet& a, const StateSet& b) {
    return !(a == b);
  }
  friend bool operator<(const StateSet& a, const StateSet& b) {
    // Compare as little-endian numbers: most significant word first.
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    }
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        f(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : words_) {
      h ^= static_cast<std::size_t>(w);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace syncsec
