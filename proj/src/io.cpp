#include "fairbits/io.hpp"

#include <cctype>
#include <stdexcept>

namespace fairbits {

CoinSeq parse_ascii_coin(const std::string& text) {
  CoinSeq out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    switch (c) {
      case 'H':
      case 'h':
      case '1':
        out.push_back(kHead);
        break;
      case 'T':
      case 't':
      case '0':
        out.push_back(kTail);
        break;
      default:
        throw ParseError(
            "invalid coin symbol '" + std::string(1, c) + "' at offset " +
                std::to_string(i),
            i);
    }
  }
  return out;
}

DieSeq parse_ascii_die(const std::string& text, int m) {
  if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
  DieSeq out;
  out.m = m;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    long value = 0;
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("invalid die token at offset " + std::to_string(i), i);
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > m)
        throw ParseError("face out of range at offset " + std::to_string(start),
                         start);
      ++i;
    }
    if (value >= m)
      throw ParseError("face " + std::to_string(value) +
                           " out of range at offset " + std::to_string(start),
                       start);
    out.faces.push_back(static_cast<int>(value));
  }
  return out;
}

std::vector<int> parse_packed(const std::string& bytes, int m,
                              std::size_t symbol_count) {
  if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
  int width = tree_depth(m) + 1;
  std::size_t available = bytes.size() * 8 / width;
  if (symbol_count > available)
    throw ParseError("packed input shorter than requested symbol count",
                     bytes.size());
  std::vector<int> out;
  out.reserve(symbol_count);
  std::size_t bit = 0;
  for (std::size_t s = 0; s < symbol_count; ++s) {
    int v = 0;
    for (int j = 0; j < width; ++j, ++bit) {
      unsigned char byte = bytes[bit / 8];
      v = (v << 1) | ((byte >> (7 - bit % 8)) & 1);
    }
    if (v >= m)
      throw ParseError("packed symbol out of range at symbol " +
                           std::to_string(s),
                       bit / 8);
    out.push_back(v);
  }
  return out;
}

std::string pack_bits(const BitStr& bits) {
  std::string bytes((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1')
      bytes[i / 8] |= static_cast<char>(1 << (7 - i % 8));
  return bytes;
}

BitStr unpack_bits(const std::string& bytes, std::size_t bit_length) {
  if (bit_length > bytes.size() * 8)
    throw std::invalid_argument("bit length exceeds payload");
  BitStr bits(bit_length, '0');
  for (std::size_t i = 0; i < bit_length; ++i)
    if ((static_cast<unsigned char>(bytes[i / 8]) >> (7 - i % 8)) & 1)
      bits[i] = '1';
  return bits;
}

std::string bits_to_hex(const BitStr& bits) {
  static const char* digits = "0123456789abcdef";
  std::string packed = pack_bits(bits);
  std::string out;
  out.reserve(packed.size() * 2);
  for (unsigned char b : packed) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace fairbits
