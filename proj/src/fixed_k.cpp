#include "fairbits/fixed_k.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fairbits {

CoinSimSource::CoinSimSource(double p, std::uint64_t seed) : p_(p), rng_(seed) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("coin bias must be strictly inside (0,1)");
}

std::optional<char> CoinSimSource::next() {
  double u = (rng_() >> 11) * 0x1.0p-53;
  return u < p_ ? kHead : kTail;
}

bool stop_check(unsigned long k1, unsigned long k2, unsigned k) {
  unsigned long lo = std::min(k1, k2);
  if (lo == 0) return false;
  mpz_class lhs = binomial(k1 + k2, k1) * lo;
  mpz_class rhs = (mpz_class(1) << k) * (k1 + k2);
  return lhs >= rhs;
}

namespace {

// Per stopping class (k, k1, k2): the exact set size and the stopped-state
// bitmap over the [0,k1] x [0,k2] rectangle. Built once, then read-shared.
struct ClassInfo {
  mpz_class size;               // |S_{k1,k2}|, 0 when (k1,k2) does not stop
  bool final_stops = false;
  unsigned long k1 = 0, k2 = 0;
  std::vector<char> stopped;    // (k1+1) * (k2+1), row-major in a

  bool is_stopped(unsigned long a, unsigned long b) const {
    return stopped[a * (k2 + 1) + b] != 0;
  }
};

ClassInfo build_class_info(unsigned long k1, unsigned long k2, unsigned k) {
  ClassInfo info;
  info.k1 = k1;
  info.k2 = k2;
  info.stopped.assign((k1 + 1) * (k2 + 1), 0);
  unsigned long n_total = k1 + k2;
  mpz_class pow2k = mpz_class(1) << k;

  // Forward sweep over path lengths: Pascal row for the criterion and the
  // alive-path counts in lockstep.
  std::vector<mpz_class> binom(n_total + 1), alive(k1 + 1);
  binom[0] = 1;
  alive[0] = 1;
  for (unsigned long n = 0; n <= n_total; ++n) {
    if (n > 0) {
      for (unsigned long a = std::min(n, n_total); a >= 1; --a)
        binom[a] += binom[a - 1];
      unsigned long a_hi = std::min(n, k1);
      unsigned long a_lo = (n > k2) ? n - k2 : 0;
      for (unsigned long a = a_hi + 1; a-- > a_lo;) {
        mpz_class v = 0;
        unsigned long b = n - a;  // predecessor states are at length n-1
        if (a >= 1 && a - 1 >= ((n - 1 > k2) ? n - 1 - k2 : 0) &&
            !info.is_stopped(a - 1, b))
          v += alive[a - 1];
        if (b >= 1 && a <= std::min(n - 1, k1) && !info.is_stopped(a, b - 1))
          v += alive[a];
        alive[a] = v;
      }
      if (a_lo > 0) alive[a_lo - 1] = 0;
    }
    unsigned long a_hi = std::min(n, k1);
    unsigned long a_lo = (n > k2) ? n - k2 : 0;
    for (unsigned long a = a_lo; a <= a_hi; ++a) {
      unsigned long b = n - a;
      unsigned long lo = std::min(a, b);
      if (lo == 0) continue;
      if (binom[a] * lo >= pow2k * n) info.stopped[a * (k2 + 1) + b] = 1;
    }
  }
  info.final_stops = info.is_stopped(k1, k2);
  info.size = info.final_stops ? alive[k1] : 0;
  return info;
}

std::mutex g_cache_mutex;
std::map<std::tuple<unsigned, unsigned long, unsigned long>,
         std::shared_ptr<const ClassInfo>>
    g_class_cache;

std::shared_ptr<const ClassInfo> class_info(unsigned long k1, unsigned long k2,
                                            unsigned k) {
  auto key = std::make_tuple(k, k1, k2);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_class_cache.find(key);
    if (it != g_class_cache.end()) return it->second;
  }
  auto info = std::make_shared<const ClassInfo>(build_class_info(k1, k2, k));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_class_cache.emplace(key, std::move(info)).first->second;
}

}  // namespace

mpz_class prefix_set_size(unsigned long k1, unsigned long k2, unsigned k) {
  return class_info(k1, k2, k)->size;
}

mpz_class rank_in_prefix_set(const CoinSeq& x, unsigned k) {
  require_coin_seq(x);
  unsigned long k1 = count_heads(x);
  unsigned long k2 = x.size() - k1;
  auto info = class_info(k1, k2, k);
  if (!info->final_stops)
    throw std::invalid_argument("rank_in_prefix_set: final state does not stop");

  // Completions from (a,b) to (k1,k2) avoiding stopped intermediate states.
  std::vector<mpz_class> comp((k1 + 1) * (k2 + 1));
  auto at = [&](unsigned long a, unsigned long b) -> mpz_class& {
    return comp[a * (k2 + 1) + b];
  };
  at(k1, k2) = 1;
  for (unsigned long n = k1 + k2; n-- > 0;) {
    unsigned long a_hi = std::min(n, k1);
    unsigned long a_lo = (n > k2) ? n - k2 : 0;
    for (unsigned long a = a_lo; a <= a_hi; ++a) {
      unsigned long b = n - a;
      if (info->is_stopped(a, b)) {
        at(a, b) = 0;
        continue;
      }
      mpz_class v = 0;
      if (a < k1) v += at(a + 1, b);
      if (b < k2) v += at(a, b + 1);
      at(a, b) = v;
    }
  }

  mpz_class rank = 0;
  unsigned long a = 0, b = 0;
  for (char c : x) {
    if (info->is_stopped(a, b))
      throw std::invalid_argument("rank_in_prefix_set: proper prefix stops");
    if (c == kTail) {
      if (a < k1) rank += at(a + 1, b);
      ++b;
    } else {
      ++a;
    }
  }
  return rank;
}

BitStr assign_output(mpz_class r, mpz_class w, unsigned k) {
  if (r >= w) throw std::invalid_argument("assign_output: rank out of range");
  mpz_class block = mpz_class(1) << k;
  while (w >= block) {
    if (r < block) return encode_fixed(r, k);
    r -= block;
    w -= block;
  }
  return rank_to_bits(r, w);
}

PhiResult phi_k(SymbolSource& stream, unsigned k) {
  PhiResult res;
  if (k == 0) return res;

  CoinSeq x;
  unsigned long h = 0, t = 0;
  mpz_class binom = 1;  // C(h+t, h), maintained incrementally
  mpz_class pow2k = mpz_class(1) << k;
  bool prev_stopped = false;
  for (;;) {
    auto sym = stream.next();
    if (!sym)
      throw InsufficientEntropy("stream exhausted before stopping criterion",
                                x);
    x.push_back(*sym);
    unsigned long n = h + t + 1;
    if (*sym == kHead) {
      binom *= n;
      binom /= ++h;
    } else {
      binom *= n;
      binom /= ++t;
    }
    unsigned long lo = std::min(h, t);
    if (lo >= 1 && binom * lo >= pow2k * n) {
      // Under one-toss-at-a-time checking the prior prefix cannot have
      // stopped, so the removal rule of the stopping construction is vacuous.
      assert(!prev_stopped);
      (void)prev_stopped;
      break;
    }
    prev_stopped = false;
  }
  res.consumed = x.size();
  res.bits = assign_output(rank_in_prefix_set(x, k), prefix_set_size(h, t, k), k);
  return res;
}

IterReport generate_k_bits(SymbolSource& stream, unsigned k,
                           unsigned max_iterations) {
  IterReport rep;
  unsigned deficit = k;
  while (deficit > 0) {
    if (rep.iterations >= max_iterations)
      throw std::runtime_error("generate_k_bits: iteration cap exceeded");
    PhiResult step = phi_k(stream, deficit);
    rep.bits += step.bits;
    rep.total_consumed += step.consumed;
    rep.iterations += 1;
    deficit -= static_cast<unsigned>(step.bits.size());
  }
  return rep;
}

}  // namespace fairbits
