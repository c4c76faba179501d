#include "fairbits/extractors.hpp"

#include <cmath>
#include <stdexcept>

namespace fairbits {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BitStr vn_extract(const CoinSeq& x) {
  require_coin_seq(x);
  BitStr out;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
    if (x[i] == kHead && x[i + 1] == kTail)
      out.push_back('1');
    else if (x[i] == kTail && x[i + 1] == kHead)
      out.push_back('0');
  }
  return out;
}

BitStr vn_broken_extract(const CoinSeq& x) {
  require_coin_seq(x);
  BitStr out;
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
    if (x[i] == kHead && x[i + 1] == kTail)
      out.push_back('1');
    else if (x[i] == kTail && x[i + 1] == kHead)
      out.push_back('0');
    else if (x[i] == kHead && x[i + 1] == kHead)
      out.push_back('0');  // the deliberate defect
  }
  return out;
}

mpz_class lex_rank_in_class(const CoinSeq& x) {
  require_coin_seq(x);
  mpz_class rank = 0;
  unsigned long h = count_heads(x);
  unsigned long rem = x.size();
  for (char c : x) {
    // Sequences with H here and the same tail counts precede any with T.
    if (c == kTail) {
      if (h >= 1) rank += binomial(rem - 1, h - 1);
    } else {
      --h;
    }
    --rem;
  }
  return rank;
}

BitStr encode_fixed(const mpz_class& r, unsigned width) {
  BitStr out(width, '0');
  for (unsigned i = 0; i < width; ++i)
    if (mpz_tstbit(r.get_mpz_t(), i)) out[width - 1 - i] = '1';
  return out;
}

BitStr rank_to_bits(mpz_class r, mpz_class w) {
  if (r >= w) throw std::invalid_argument("rank_to_bits: rank out of range");
  for (;;) {
    unsigned j = static_cast<unsigned>(mpz_sizeinbase(w.get_mpz_t(), 2)) - 1;
    mpz_class block = mpz_class(1) << j;
    if (r < block) return encode_fixed(r, j);
    r -= block;
    w -= block;
  }
}

BitStr elias_extract(const CoinSeq& x) {
  require_coin_seq(x);
  if (x.empty()) return {};
  return rank_to_bits(lex_rank_in_class(x),
                      binomial(x.size(), count_heads(x)));
}

BitStr peres_extract(const CoinSeq& x, int max_depth) {
  require_coin_seq(x);
  if (x.size() < 2 || max_depth == 0) return {};
  std::size_t pairs = x.size() / 2;
  BitStr out;
  CoinSeq xored, seconds;
  xored.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    char a = x[2 * i], b = x[2 * i + 1];
    if (a != b) {
      out.push_back(a == kHead ? '1' : '0');
      xored.push_back(kHead);
    } else {
      xored.push_back(kTail);
      seconds.push_back(b);
    }
  }
  int next = max_depth < 0 ? -1 : max_depth - 1;
  out += peres_extract(xored, next);
  out += peres_extract(seconds, next);
  return out;
}

double entropy(const std::vector<double>& dist) {
  double sum = 0.0;
  for (double p : dist) {
    if (p < 0.0) throw std::invalid_argument("entropy: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (double p : dist)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

Extractor extractor_by_name(const std::string& name) {
  if (name == "vn") return [](const CoinSeq& x) { return vn_extract(x); };
  if (name == "elias") return [](const CoinSeq& x) { return elias_extract(x); };
  if (name == "peres") return [](const CoinSeq& x) { return peres_extract(x); };
  if (name == "peres1") return [](const CoinSeq& x) { return peres_extract(x, 1); };
  if (name == "vn-broken") return [](const CoinSeq& x) { return vn_broken_extract(x); };
  throw std::invalid_argument("unknown extractor: " + name);
}

}  // namespace fairbits
