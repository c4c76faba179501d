#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "fairbits/bits.hpp"
#include "fairbits/extractors.hpp"

namespace fairbits {

struct DieSeq {
  std::vector<int> faces;   // each in [0, m)
  int m = 2;                // alphabet size, >= 2
};

struct MalformedTree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tree depth b = ceil(log2 m) - 1; each face uses b+1 binary digits.
int tree_depth(int m);

// Fixed-width binary representation of a face, MSB first, 0 -> T and 1 -> H.
CoinSeq face_bits(int face, int m);

// Complete binary tree of depth b stored in level order: node i has
// T-child 2i+1 and H-child 2i+2, so the array order is exactly the
// concatenation order phi, T, H, TT, TH, HT, HH, ...
struct BinarizationTree {
  int depth = 0;                  // b
  std::vector<CoinSeq> labels;    // 2^(b+1) - 1 slots

  std::size_t node_count() const { return labels.size(); }
  // Prefix (over {T,H}) addressed by node index, for reports.
  static CoinSeq node_prefix(std::size_t index);
};

BinarizationTree build_tree(const DieSeq& x);

// Inverse of build_tree; throws MalformedTree when the labels violate the
// per-node count consistency condition or encode a face >= m.
DieSeq reconstruct(const BinarizationTree& tree, int m);

// Apply psi to every node label in level order and concatenate.
BitStr generalized_extract(const DieSeq& x, const Extractor& psi);

struct ConditionalProbs {
  // Per node index: (q_T, q_H), or nullopt when the prefix is unreachable.
  std::vector<std::optional<std::pair<mpq_class, mpq_class>>> q;
};

ConditionalProbs conditional_probs(const std::vector<mpq_class>& rho);

// Probability of generating X under rho. Computed both as the plain product
// of face probabilities and via the per-prefix conditional product; the two
// routes are asserted equal.
mpq_class sequence_prob(const DieSeq& x, const std::vector<mpq_class>& rho);

void require_die_dist(const std::vector<mpq_class>& rho);

}  // namespace fairbits
