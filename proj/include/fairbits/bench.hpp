#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fairbits/bits.hpp"
#include "fairbits/extractors.hpp"
#include "fairbits/fixed_k.hpp"

namespace fairbits {

// PRNG family pinned to std::mt19937_64; recorded in every report.
inline constexpr const char* kPrngId = "mt19937_64";

struct SourceSpec {
  enum class Kind { Coin, Die };
  Kind kind = Kind::Coin;
  double p = 0.5;                 // coin bias
  std::vector<double> rho;        // die distribution (kind == Die)
  std::uint64_t seed = 0;

  void validate() const;
  double source_entropy() const;
};

// Seeded coin stream for a coin spec.
std::unique_ptr<SymbolSource> simulate_source(const SourceSpec& spec);

// Seeded die roll simulator.
class DieSimSource {
 public:
  DieSimSource(std::vector<double> rho, std::uint64_t seed);
  int next();

 private:
  std::vector<double> cumulative_;
  std::mt19937_64 rng_;
};

// Pearson chi-square statistic of observed symbol frequencies against the
// declared distribution (diagnostic only).
double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& expected_probs);

struct EfficiencyReport {
  std::string scheme;
  std::string prng = kPrngId;
  std::uint64_t seed = 0;
  int trials = 0;
  unsigned long n = 0;        // block length (fixed-n) or 0
  unsigned k = 0;             // target bits (fixed-k) or 0
  double mean_bits_per_symbol = 0.0;   // fixed-n
  double mean_tosses_per_bit = 0.0;    // fixed-k
  double mean_iterations = 0.0;        // fixed-k
  double entropy_ref = 0.0;            // H of the source
  double ratio_to_bound = 0.0;
  double confidence_half_width = 0.0;  // normal approximation, 95%
  std::vector<double> trial_values;    // raw per-trial statistic
};

// Mean output bits per input symbol of psi over seeded fixed-length blocks.
// Die specs are run through the generalized scheme of psi.
EfficiencyReport bench_fixed_n(const Extractor& psi, const std::string& scheme,
                               const SourceSpec& spec, unsigned long n,
                               int trials);

// Mean tosses per generated bit and iteration count of the iterative
// fixed-k scheme; ratio is E[n] * H(p) / k.
EfficiencyReport bench_fixed_k(unsigned k, const SourceSpec& spec, int trials);

std::string report_text(const EfficiencyReport& rep);
std::string report_csv(const EfficiencyReport& rep);

}  // namespace fairbits
