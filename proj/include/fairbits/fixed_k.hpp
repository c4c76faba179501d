#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>

#include "fairbits/bits.hpp"
#include "fairbits/extractors.hpp"

namespace fairbits {

// Pull-based coin symbol source; next() returns 'H'/'T' or nullopt on
// exhaustion. A source has a single logical owner.
class SymbolSource {
 public:
  virtual ~SymbolSource() = default;
  virtual std::optional<char> next() = 0;
};

class StringSource : public SymbolSource {
 public:
  explicit StringSource(CoinSeq symbols) : symbols_(std::move(symbols)) {
    require_coin_seq(symbols_);
  }
  std::optional<char> next() override {
    if (pos_ >= symbols_.size()) return std::nullopt;
    return symbols_[pos_++];
  }

 private:
  CoinSeq symbols_;
  std::size_t pos_ = 0;
};

// Unbounded seeded biased-coin simulator (mt19937_64, 53-bit uniforms).
class CoinSimSource : public SymbolSource {
 public:
  CoinSimSource(double p, std::uint64_t seed);
  std::optional<char> next() override;

 private:
  double p_;
  std::mt19937_64 rng_;
};

struct InsufficientEntropy : std::runtime_error {
  InsufficientEntropy(std::string msg, CoinSeq partial)
      : std::runtime_error(std::move(msg)), partial_input(std::move(partial)) {}
  CoinSeq partial_input;
};

// Stopping criterion: min(k1,k2) >= 1 and
// min(k1,k2) * C(k1+k2, k1) >= 2^k * (k1+k2), evaluated exactly.
bool stop_check(unsigned long k1, unsigned long k2, unsigned k);

// |S_{k1,k2}|: sequences with k1 H's / k2 T's stopping exactly at (k1,k2),
// no proper prefix stopped. Zero when (k1,k2) itself does not stop.
mpz_class prefix_set_size(unsigned long k1, unsigned long k2, unsigned k);

// Lex rank (H < T) of x inside its prefix set. Throws std::invalid_argument
// when x is not a member.
mpz_class rank_in_prefix_set(const CoinSeq& x, unsigned k);

// Output assignment for prefix sets: k-bit blocks while at least 2^k members
// remain, then the Elias peeling rule on the tail. Requires r < w.
BitStr assign_output(mpz_class r, mpz_class w, unsigned k);

struct PhiResult {
  BitStr bits;              // |bits| <= k
  std::size_t consumed = 0; // tosses read
};

// One-shot variable-to-fixed step: read until the stopping criterion holds,
// then emit at most k bits. k = 0 returns immediately.
PhiResult phi_k(SymbolSource& stream, unsigned k);

struct IterReport {
  BitStr bits;                   // exactly k
  std::size_t total_consumed = 0;
  unsigned iterations = 0;
};

// Iterate phi over the remaining deficit until exactly k bits are produced.
IterReport generate_k_bits(SymbolSource& stream, unsigned k,
                           unsigned max_iterations = 64);

}  // namespace fairbits
