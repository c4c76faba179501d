#include "fairbits/dice.hpp"

#include <stdexcept>

namespace fairbits {

int tree_depth(int m) {
  if (m < 2) throw std::invalid_argument("die alphabet size must be >= 2");
  int b = 0;
  while ((1 << (b + 1)) < m) ++b;
  return b;
}

CoinSeq face_bits(int face, int m) {
  if (face < 0 || face >= m) throw std::invalid_argument("face out of range");
  int width = tree_depth(m) + 1;
  CoinSeq out(width, kTail);
  for (int i = 0; i < width; ++i)
    if ((face >> i) & 1) out[width - 1 - i] = kHead;
  return out;
}

CoinSeq BinarizationTree::node_prefix(std::size_t index) {
  // Heap numbering: the binary digits of index+1 past the leading 1 spell
  // the path, 0 = T, 1 = H.
  std::size_t node = index + 1;
  CoinSeq path;
  while (node > 1) {
    path.push_back((node & 1) ? kHead : kTail);
    node >>= 1;
  }
  return CoinSeq(path.rbegin(), path.rend());
}

static void check_faces(const DieSeq& x) {
  if (x.m < 2) throw std::invalid_argument("die alphabet size must be >= 2");
  for (int f : x.faces)
    if (f < 0 || f >= x.m) throw std::invalid_argument("face out of range");
}

BinarizationTree build_tree(const DieSeq& x) {
  check_faces(x);
  int b = tree_depth(x.m);
  BinarizationTree tree;
  tree.depth = b;
  tree.labels.assign((std::size_t(1) << (b + 1)) - 1, CoinSeq{});
  for (int f : x.faces) {
    std::size_t node = 0;
    for (int j = b; j >= 0; --j) {
      bool one = (f >> j) & 1;
      tree.labels[node].push_back(one ? kHead : kTail);
      if (j > 0) node = one ? 2 * node + 2 : 2 * node + 1;
    }
  }
  return tree;
}

DieSeq reconstruct(const BinarizationTree& tree, int m) {
  int b = tree_depth(m);
  if (tree.depth != b ||
      tree.labels.size() != (std::size_t(1) << (b + 1)) - 1)
    throw MalformedTree("tree shape does not match alphabet size");

  DieSeq out;
  out.m = m;
  std::vector<std::size_t> cursor(tree.labels.size(), 0);
  while (cursor[0] < tree.labels[0].size()) {
    std::size_t node = 0;
    int face = 0;
    for (int j = b; j >= 0; --j) {
      if (cursor[node] >= tree.labels[node].size())
        throw MalformedTree("node label exhausted mid-walk");
      char c = tree.labels[node][cursor[node]++];
      bool one = (c == kHead);
      face = (face << 1) | (one ? 1 : 0);
      if (j > 0) node = one ? 2 * node + 2 : 2 * node + 1;
    }
    if (face >= m) throw MalformedTree("reconstructed face out of range");
    out.faces.push_back(face);
  }
  for (std::size_t i = 0; i < tree.labels.size(); ++i)
    if (cursor[i] != tree.labels[i].size())
      throw MalformedTree("unconsumed label symbols");
  return out;
}

BitStr generalized_extract(const DieSeq& x, const Extractor& psi) {
  BinarizationTree tree = build_tree(x);
  BitStr out;
  for (const CoinSeq& label : tree.labels) out += psi(label);
  return out;
}

void require_die_dist(const std::vector<mpq_class>& rho) {
  if (rho.size() < 2) throw std::invalid_argument("distribution needs >= 2 faces");
  mpq_class sum = 0;
  for (const mpq_class& p : rho) {
    if (p < 0) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("probabilities must sum to 1");
}

ConditionalProbs conditional_probs(const std::vector<mpq_class>& rho) {
  require_die_dist(rho);
  int m = static_cast<int>(rho.size());
  int b = tree_depth(m);
  ConditionalProbs cp;
  cp.q.assign((std::size_t(1) << (b + 1)) - 1, std::nullopt);
  // Node at depth d with path prefix covers faces whose top d digits match;
  // the (d+1)-th digit splits the mass between the T and H branches.
  std::size_t index = 0;
  for (int d = 0; d <= b; ++d) {
    for (std::size_t s = 0; s < (std::size_t(1) << d); ++s, ++index) {
      mpq_class total = 0, tails = 0;
      for (int f = 0; f < m; ++f) {
        if ((std::size_t)(f >> (b + 1 - d)) != s) continue;
        total += rho[f];
        if (!((f >> (b - d)) & 1)) tails += rho[f];
      }
      if (total != 0) cp.q[index] = std::make_pair(tails / total, 1 - tails / total);
    }
  }
  return cp;
}

mpq_class sequence_prob(const DieSeq& x, const std::vector<mpq_class>& rho) {
  check_faces(x);
  require_die_dist(rho);
  if ((int)rho.size() != x.m)
    throw std::invalid_argument("distribution size does not match alphabet");

  mpq_class direct = 1;
  for (int f : x.faces) direct *= rho[f];

  // Per-prefix conditional product over the binarization tree.
  BinarizationTree tree = build_tree(x);
  ConditionalProbs cp = conditional_probs(rho);
  mpq_class via_tree = 1;
  for (std::size_t i = 0; i < tree.labels.size(); ++i) {
    const CoinSeq& label = tree.labels[i];
    if (label.empty()) continue;
    if (!cp.q[i]) {
      via_tree = 0;  // symbols through a zero-mass prefix
      break;
    }
    for (char c : label) via_tree *= (c == kTail) ? cp.q[i]->first : cp.q[i]->second;
  }
  if (direct != 0 && direct != via_tree)
    throw std::logic_error("sequence_prob: product routes disagree");
  return direct;
}

}  // namespace fairbits
