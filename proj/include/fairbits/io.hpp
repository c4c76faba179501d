#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairbits/bits.hpp"
#include "fairbits/dice.hpp"

namespace fairbits {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), position(position) {}
  std::size_t position;  // byte offset of the offending input
};

// ascii-coin: H/T with 1/0 aliases (case-insensitive), whitespace ignored.
CoinSeq parse_ascii_coin(const std::string& text);

// ascii-die: whitespace-separated decimal face tokens in [0, m).
DieSeq parse_ascii_die(const std::string& text, int m);

// packed-binary: consecutive width-bit symbols, MSB-first within each byte;
// width = ceil(log2 m). symbol_count bounds how many symbols to take
// (the final byte may be padded).
std::vector<int> parse_packed(const std::string& bytes, int m,
                              std::size_t symbol_count);

// Bit packing: MSB-first within each byte, final partial byte zero-padded
// low. The true bit length must travel alongside the bytes.
std::string pack_bits(const BitStr& bits);
BitStr unpack_bits(const std::string& bytes, std::size_t bit_length);

std::string bits_to_hex(const BitStr& bits);

}  // namespace fairbits
