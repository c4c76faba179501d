#include "fairbits/bench.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fairbits/dice.hpp"

namespace fairbits {

void SourceSpec::validate() const {
  if (kind == Kind::Coin) {
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("coin bias must be strictly inside (0,1)");
  } else {
    if (rho.size() < 2) throw std::invalid_argument("die needs >= 2 faces");
    double sum = 0.0;
    for (double q : rho) {
      if (q < 0.0) throw std::invalid_argument("negative probability");
      if (q >= 1.0) throw std::invalid_argument("degenerate die distribution");
      sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("probabilities must sum to 1");
  }
}

double SourceSpec::source_entropy() const {
  if (kind == Kind::Coin) return entropy({p, 1.0 - p});
  return entropy(rho);
}

std::unique_ptr<SymbolSource> simulate_source(const SourceSpec& spec) {
  spec.validate();
  if (spec.kind != SourceSpec::Kind::Coin)
    throw std::invalid_argument("simulate_source: coin specs only");
  return std::make_unique<CoinSimSource>(spec.p, spec.seed);
}

DieSimSource::DieSimSource(std::vector<double> rho, std::uint64_t seed)
    : rng_(seed) {
  SourceSpec spec;
  spec.kind = SourceSpec::Kind::Die;
  spec.rho = rho;
  spec.validate();
  double acc = 0.0;
  for (double q : rho) cumulative_.push_back(acc += q);
  cumulative_.back() = 1.0;
}

int DieSimSource::next() {
  double u = (rng_() >> 11) * 0x1.0p-53;
  for (std::size_t i = 0; i < cumulative_.size(); ++i)
    if (u < cumulative_[i]) return static_cast<int>(i);
  return static_cast<int>(cumulative_.size()) - 1;
}

double chi_square_statistic(const std::vector<std::uint64_t>& observed,
                            const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size())
    throw std::invalid_argument("size mismatch");
  std::uint64_t total = std::accumulate(observed.begin(), observed.end(),
                                        std::uint64_t{0});
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    double expect = expected_probs[i] * double(total);
    if (expect <= 0.0) continue;
    double diff = double(observed[i]) - expect;
    stat += diff * diff / expect;
  }
  return stat;
}

namespace {

void finish_stats(EfficiencyReport& rep) {
  double mean = 0.0;
  for (double v : rep.trial_values) mean += v;
  mean /= double(rep.trial_values.size());
  double var = 0.0;
  for (double v : rep.trial_values) var += (v - mean) * (v - mean);
  if (rep.trial_values.size() > 1) var /= double(rep.trial_values.size() - 1);
  rep.confidence_half_width =
      1.96 * std::sqrt(var / double(rep.trial_values.size()));
}

std::uint64_t trial_seed(std::uint64_t base, int trial) {
  // splitmix64 over (base, trial) so trials use disjoint streams.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (std::uint64_t(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

EfficiencyReport bench_fixed_n(const Extractor& psi, const std::string& scheme,
                               const SourceSpec& spec, unsigned long n,
                               int trials) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  EfficiencyReport rep;
  rep.scheme = scheme;
  rep.seed = spec.seed;
  rep.trials = trials;
  rep.n = n;
  rep.entropy_ref = spec.source_entropy();
  rep.trial_values.assign(trials, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    std::uint64_t seed = trial_seed(spec.seed, t);
    std::size_t bits = 0;
    if (spec.kind == SourceSpec::Kind::Coin) {
      CoinSimSource src(spec.p, seed);
      CoinSeq block;
      block.reserve(n);
      for (unsigned long i = 0; i < n; ++i) block.push_back(*src.next());
      bits = psi(block).size();
    } else {
      DieSimSource src(spec.rho, seed);
      DieSeq block;
      block.m = static_cast<int>(spec.rho.size());
      for (unsigned long i = 0; i < n; ++i) block.faces.push_back(src.next());
      bits = generalized_extract(block, psi).size();
    }
    rep.trial_values[t] = n == 0 ? 0.0 : double(bits) / double(n);
  }
  for (double v : rep.trial_values) rep.mean_bits_per_symbol += v;
  rep.mean_bits_per_symbol /= double(trials);
  rep.ratio_to_bound =
      rep.entropy_ref > 0.0 ? rep.mean_bits_per_symbol / rep.entropy_ref : 0.0;
  finish_stats(rep);
  return rep;
}

EfficiencyReport bench_fixed_k(unsigned k, const SourceSpec& spec, int trials) {
  spec.validate();
  if (spec.kind != SourceSpec::Kind::Coin)
    throw std::invalid_argument("fixed-k bench is coin-only");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  EfficiencyReport rep;
  rep.scheme = "fixed-k";
  rep.seed = spec.seed;
  rep.trials = trials;
  rep.k = k;
  rep.entropy_ref = spec.source_entropy();
  rep.trial_values.assign(trials, 0.0);
  std::vector<double> iters(trials, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    CoinSimSource src(spec.p, trial_seed(spec.seed, t));
    IterReport r = generate_k_bits(src, k);
    rep.trial_values[t] = double(r.total_consumed) / double(k);
    iters[t] = double(r.iterations);
  }
  for (int t = 0; t < trials; ++t) {
    rep.mean_tosses_per_bit += rep.trial_values[t];
    rep.mean_iterations += iters[t];
  }
  rep.mean_tosses_per_bit /= double(trials);
  rep.mean_iterations /= double(trials);
  rep.ratio_to_bound = rep.mean_tosses_per_bit * rep.entropy_ref;
  finish_stats(rep);
  return rep;
}

std::string report_text(const EfficiencyReport& rep) {
  std::ostringstream os;
  os << "scheme=" << rep.scheme << " prng=" << rep.prng << " seed=" << rep.seed
     << " trials=" << rep.trials;
  if (rep.n > 0) os << " n=" << rep.n;
  if (rep.k > 0) os << " k=" << rep.k;
  os.precision(6);
  os << std::fixed;
  if (rep.n > 0) os << " bits_per_symbol=" << rep.mean_bits_per_symbol;
  if (rep.k > 0)
    os << " tosses_per_bit=" << rep.mean_tosses_per_bit
       << " mean_iterations=" << rep.mean_iterations;
  os << " H=" << rep.entropy_ref << " ratio=" << rep.ratio_to_bound
     << " ci95=" << rep.confidence_half_width;
  return os.str();
}

std::string report_csv(const EfficiencyReport& rep) {
  std::ostringstream os;
  os << "trial,value\n";
  for (std::size_t i = 0; i < rep.trial_values.size(); ++i)
    os << i << "," << rep.trial_values[i] << "\n";
  return os.str();
}

}  // namespace fairbits
