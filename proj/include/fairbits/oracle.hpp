#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fairbits/bits.hpp"
#include "fairbits/extractors.hpp"

namespace fairbits {

// Exact output distribution of an extractor over an enumerated input space.
// residual is the probability mass not resolved by a truncated enumeration
// (always 0 for fixed-length enumeration).
struct ExactDist {
  std::map<BitStr, mpq_class> entries;
  mpq_class residual = 0;

  mpq_class total() const;
};

// Default enumeration caps; the CLI may override via DIEXTRACT_CAP.
inline constexpr int kDefaultCoinCap = 14;
inline constexpr long kDefaultDieCap = 10'000'000;

// All 2^n coin sequences weighted p^k1 (1-p)^k2, 0 < p < 1 exact rational.
ExactDist enumerate_coin(const Extractor& psi, int n, const mpq_class& p,
                         int cap = kDefaultCoinCap);
// Single-threaded reference used to cross-check the parallel kernel.
ExactDist enumerate_coin_serial(const Extractor& psi, int n, const mpq_class& p,
                                int cap = kDefaultCoinCap);

// All m^n die sequences under the generalized scheme of psi.
ExactDist enumerate_die(const Extractor& psi, int m, int n,
                        const std::vector<mpq_class>& rho,
                        long cap = kDefaultDieCap);
ExactDist enumerate_die_serial(const Extractor& psi, int m, int n,
                               const std::vector<mpq_class>& rho,
                               long cap = kDefaultDieCap);

struct UniformityViolation {
  std::size_t length;
  BitStr y, y_prime;
  mpq_class p_y, p_y_prime;
};

struct UniformityReport {
  bool ok = true;
  std::vector<UniformityViolation> violations;
  std::map<std::size_t, mpq_class> by_length;  // common per-output probability
};

// Exact rational comparison of all equal-length output pairs.
UniformityReport verify_uniformity(const ExactDist& d);

struct Lemma1Report {
  bool ok = true;
  // Witness when !ok: class counts that disagree.
  unsigned long k1 = 0, k2 = 0;
  BitStr y, y_prime;
  unsigned long count_y = 0, count_y_prime = 0;
};

// Preimage-count equality within every constant-composition class, for every
// pair of equal-length outputs, by exhaustive integer counting.
Lemma1Report verify_lemma1_counts(const Extractor& psi, int n, int cap = kDefaultCoinCap);

struct PhiClassStat {
  unsigned long k1 = 0, k2 = 0;
  mpz_class size;            // |S_{k1,k2}|
  mpq_class prob;            // mass of stopping in this class
  mpq_class p_full_length;   // P[|bits| = k | this class]
};

struct PhiEnumeration {
  ExactDist dist;
  std::vector<PhiClassStat> classes;
  unsigned long depth = 0;   // enumeration depth reached
};

// Exact distribution of the one-shot fixed-k step by breadth-first sweep of
// the alive prefix lattice until the unresolved mass drops below the bound.
PhiEnumeration enumerate_phi(unsigned k, const mpq_class& p,
                             const mpq_class& residual_bound,
                             unsigned long max_depth = 100000);

}  // namespace fairbits
