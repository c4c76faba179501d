#pragma once

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "fairbits/bits.hpp"

namespace fairbits {

// Exact binomial coefficient; C(n,k) = 0 when k > n.
mpz_class binomial(unsigned long n, unsigned long k);

// Von Neumann: disjoint pairs, HT->1, TH->0, equal pairs dropped.
// A trailing unpaired symbol is ignored.
BitStr vn_extract(const CoinSeq& x);

// 0-based rank of x among all sequences with the same H/T counts,
// lexicographic with H < T.
mpz_class lex_rank_in_class(const CoinSeq& x);

// Big-endian fixed-width encoding of r into `width` bits; requires r < 2^width.
BitStr encode_fixed(const mpz_class& r, unsigned width);

// Elias block assignment: peel maximal power-of-two blocks off a class of
// size w, returning the bits assigned to rank r. Requires r < w.
BitStr rank_to_bits(mpz_class r, mpz_class w);

// Elias extractor under the canonical lex ordering.
BitStr elias_extract(const CoinSeq& x);

// Peres iterated extractor. max_depth < 0 means unlimited (recurse until the
// input is shorter than a pair); max_depth = 1 is exactly vn_extract.
BitStr peres_extract(const CoinSeq& x, int max_depth = -1);

// Shannon entropy in bits of a probability vector (0 log 1/0 := 0).
// Entries must be nonnegative and sum to 1 within 1e-9.
double entropy(const std::vector<double>& dist);

using Extractor = std::function<BitStr(const CoinSeq&)>;

// Named extractor lookup: "vn", "elias", "peres", "peres1" (depth 1),
// plus test fixture "vn-broken". Throws std::invalid_argument on unknown name.
Extractor extractor_by_name(const std::string& name);

// Deliberately non-uniform von Neumann variant (HH -> "0") used as a
// mutation fixture by the verification tests.
BitStr vn_broken_extract(const CoinSeq& x);

}  // namespace fairbits
