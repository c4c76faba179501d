#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairbits {

// Coin sequences are strings over {'H','T'}; bit strings over {'0','1'}.
// The empty string is a valid (empty) value for both.
using CoinSeq = std::string;
using BitStr = std::string;

constexpr char kHead = 'H';
constexpr char kTail = 'T';

inline bool is_coin_seq(const CoinSeq& x) {
  for (char c : x)
    if (c != kHead && c != kTail) return false;
  return true;
}

inline bool is_bit_str(const BitStr& y) {
  for (char c : y)
    if (c != '0' && c != '1') return false;
  return true;
}

inline std::size_t count_heads(const CoinSeq& x) {
  std::size_t k = 0;
  for (char c : x) k += (c == kHead);
  return k;
}

inline std::size_t count_tails(const CoinSeq& x) { return x.size() - count_heads(x); }

inline void require_coin_seq(const CoinSeq& x) {
  if (!is_coin_seq(x)) throw std::invalid_argument("coin sequence must be over {H,T}");
}

}  // namespace fairbits
