#include "fairbits/oracle.hpp"

#include <omp.h>

#include <cstdint>
#include <stdexcept>

#include "fairbits/dice.hpp"
#include "fairbits/fixed_k.hpp"

namespace fairbits {

namespace {

mpq_class mpq_pow(const mpq_class& base, unsigned long e) {
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

void require_bias(const mpq_class& p) {
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("bias must be strictly inside (0,1)");
}

CoinSeq coin_from_index(std::uint64_t idx, int n) {
  CoinSeq x(n, kTail);
  for (int i = 0; i < n; ++i)
    if ((idx >> (n - 1 - i)) & 1) x[i] = kHead;
  return x;
}

void merge_into(ExactDist& dst, const ExactDist& src) {
  for (const auto& [y, q] : src.entries) dst.entries[y] += q;
  dst.residual += src.residual;
}

}  // namespace

mpq_class ExactDist::total() const {
  mpq_class t = residual;
  for (const auto& [y, q] : entries) t += q;
  return t;
}

ExactDist enumerate_coin_serial(const Extractor& psi, int n, const mpq_class& p,
                                int cap) {
  if (n < 0 || n > cap) throw std::invalid_argument("enumeration cap exceeded");
  require_bias(p);
  mpq_class q = 1 - p;
  // Powers precomputed once per class weight.
  std::vector<mpq_class> pp(n + 1), qp(n + 1);
  for (int i = 0; i <= n; ++i) {
    pp[i] = mpq_pow(p, i);
    qp[i] = mpq_pow(q, i);
  }
  ExactDist d;
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx) {
    CoinSeq x = coin_from_index(idx, n);
    std::size_t h = count_heads(x);
    d.entries[psi(x)] += pp[h] * qp[n - h];
  }
  return d;
}

ExactDist enumerate_coin(const Extractor& psi, int n, const mpq_class& p,
                         int cap) {
  if (n < 0 || n > cap) throw std::invalid_argument("enumeration cap exceeded");
  require_bias(p);
  mpq_class q = 1 - p;
  std::vector<mpq_class> pp(n + 1), qp(n + 1);
  for (int i = 0; i <= n; ++i) {
    pp[i] = mpq_pow(p, i);
    qp[i] = mpq_pow(q, i);
  }
  std::uint64_t total = std::uint64_t(1) << n;
  std::vector<ExactDist> shards;
#pragma omp parallel
  {
#pragma omp single
    shards.resize(omp_get_num_threads());
    ExactDist& local = shards[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < (std::int64_t)total; ++idx) {
      CoinSeq x = coin_from_index(idx, n);
      std::size_t h = count_heads(x);
      local.entries[psi(x)] += pp[h] * qp[n - h];
    }
  }
  ExactDist d;
  for (const ExactDist& s : shards) merge_into(d, s);
  return d;
}

namespace {

std::vector<int> die_from_index(std::uint64_t idx, int m, int n) {
  std::vector<int> faces(n);
  for (int i = n - 1; i >= 0; --i) {
    faces[i] = static_cast<int>(idx % m);
    idx /= m;
  }
  return faces;
}

}  // namespace

ExactDist enumerate_die_serial(const Extractor& psi, int m, int n,
                               const std::vector<mpq_class>& rho, long cap) {
  require_die_dist(rho);
  if ((int)rho.size() != m) throw std::invalid_argument("distribution size mismatch");
  double count = std::pow(double(m), double(n));
  if (n < 0 || count > double(cap))
    throw std::invalid_argument("enumeration cap exceeded");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  ExactDist d;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    DieSeq x{die_from_index(idx, m, n), m};
    mpq_class w = 1;
    for (int f : x.faces) w *= rho[f];
    d.entries[generalized_extract(x, psi)] += w;
  }
  return d;
}

ExactDist enumerate_die(const Extractor& psi, int m, int n,
                        const std::vector<mpq_class>& rho, long cap) {
  require_die_dist(rho);
  if ((int)rho.size() != m) throw std::invalid_argument("distribution size mismatch");
  double count = std::pow(double(m), double(n));
  if (n < 0 || count > double(cap))
    throw std::invalid_argument("enumeration cap exceeded");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  std::vector<ExactDist> shards;
#pragma omp parallel
  {
#pragma omp single
    shards.resize(omp_get_num_threads());
    ExactDist& local = shards[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < (std::int64_t)total; ++idx) {
      DieSeq x{die_from_index(idx, m, n), m};
      mpq_class w = 1;
      for (int f : x.faces) w *= rho[f];
      local.entries[generalized_extract(x, psi)] += w;
    }
  }
  ExactDist d;
  for (const ExactDist& s : shards) merge_into(d, s);
  return d;
}

UniformityReport verify_uniformity(const ExactDist& d) {
  UniformityReport rep;
  std::map<std::size_t, std::vector<const std::pair<const BitStr, mpq_class>*>>
      by_len;
  for (const auto& e : d.entries) by_len[e.first.size()].push_back(&e);
  for (const auto& [len, group] : by_len) {
    const auto* ref = group.front();
    bool len_ok = true;
    for (const auto* e : group) {
      if (e->second != ref->second) {
        rep.ok = false;
        len_ok = false;
        rep.violations.push_back(
            {len, ref->first, e->first, ref->second, e->second});
      }
    }
    // Outputs of an occurring length that never occur have probability 0,
    // which must also match.
    if (len < 63 && group.size() != (std::size_t(1) << len)) {
      rep.ok = false;
      len_ok = false;
      // Find a missing pattern as the witness.
      BitStr missing;
      for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
        BitStr cand = encode_fixed(mpz_class(static_cast<unsigned long>(v)),
                                   static_cast<unsigned>(len));
        if (!d.entries.count(cand)) {
          missing = cand;
          break;
        }
      }
      rep.violations.push_back({len, ref->first, missing, ref->second, 0});
    }
    if (len_ok) rep.by_length[len] = ref->second;
  }
  return rep;
}

Lemma1Report verify_lemma1_counts(const Extractor& psi, int n, int cap) {
  if (n < 0 || n > cap) throw std::invalid_argument("enumeration cap exceeded");
  // counts[k1][Y] = |S_{k1,k2} ∩ B_Y|
  std::vector<std::map<BitStr, unsigned long>> counts(n + 1);
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << n); ++idx) {
    CoinSeq x = coin_from_index(idx, n);
    counts[count_heads(x)][psi(x)] += 1;
  }
  Lemma1Report rep;
  for (int k1 = 0; k1 <= n; ++k1) {
    std::map<std::size_t, std::vector<std::pair<BitStr, unsigned long>>> by_len;
    for (const auto& [y, c] : counts[k1]) by_len[y.size()].push_back({y, c});
    for (const auto& [len, group] : by_len) {
      unsigned long expect_outputs =
          len < 63 ? (std::size_t(1) << len) : group.size();
      const auto& ref = group.front();
      for (const auto& [y, c] : group) {
        if (c != ref.second) {
          rep.ok = false;
          rep.k1 = k1;
          rep.k2 = n - k1;
          rep.y = ref.first;
          rep.y_prime = y;
          rep.count_y = ref.second;
          rep.count_y_prime = c;
          return rep;
        }
      }
      if (group.size() != expect_outputs) {
        rep.ok = false;
        rep.k1 = k1;
        rep.k2 = n - k1;
        rep.y = ref.first;
        rep.count_y = ref.second;
        rep.count_y_prime = 0;  // some equal-length output never occurs
        return rep;
      }
    }
  }
  return rep;
}

PhiEnumeration enumerate_phi(unsigned k, const mpq_class& p,
                             const mpq_class& residual_bound,
                             unsigned long max_depth) {
  if (k > 4) throw std::invalid_argument("enumerate_phi: k capped at 4");
  if (k == 0) throw std::invalid_argument("enumerate_phi: k must be >= 1");
  require_bias(p);
  if (!(residual_bound > 0))
    throw std::invalid_argument("residual bound must be positive");
  mpq_class q = 1 - p;
  mpz_class pow2k = mpz_class(1) << k;

  PhiEnumeration out;
  out.dist.residual = 1;

  // Row sweep of the alive lattice: alive[a] = #length-n sequences with a H's
  // whose proper prefixes never stopped. Stopped states become prefix-set
  // classes and do not propagate.
  std::vector<mpz_class> alive{1}, binom{1};
  std::vector<char> stopped_row{0};
  for (unsigned long n = 1; n <= max_depth; ++n) {
    binom.push_back(0);
    for (unsigned long a = n; a >= 1; --a) binom[a] += binom[a - 1];

    std::vector<mpz_class> next(n + 1);
    for (unsigned long a = 0; a <= n; ++a) {
      mpz_class v = 0;
      if (a >= 1 && a - 1 < alive.size() && !stopped_row[a - 1])
        v += alive[a - 1];
      if (a <= n - 1 && !stopped_row[a]) v += alive[a];
      next[a] = v;
    }
    alive.swap(next);

    stopped_row.assign(n + 1, 0);
    mpq_class row_mass = 0;
    for (unsigned long a = 0; a <= n; ++a) {
      if (alive[a] == 0) continue;
      unsigned long b = n - a;
      unsigned long lo = std::min(a, b);
      bool stops = lo >= 1 && binom[a] * lo >= pow2k * n;
      mpq_class mass = alive[a] * mpq_pow(p, a) * mpq_pow(q, b);
      if (!stops) {
        stopped_row[a] = 0;
        row_mass += mass;
        continue;
      }
      stopped_row[a] = 1;
      // This (k1,k2) is a prefix-set class; spread its mass over outputs.
      PhiClassStat stat;
      stat.k1 = a;
      stat.k2 = b;
      stat.size = alive[a];
      stat.prob = mass;
      mpq_class per_member = mpq_pow(p, a) * mpq_pow(q, b);
      mpz_class full_blocks = stat.size / pow2k;
      mpz_class assigned_full = full_blocks * pow2k;
      stat.p_full_length = mpq_class(assigned_full) / mpq_class(stat.size);
      if (full_blocks > 0) {
        mpq_class per_pattern = per_member * full_blocks;
        for (unsigned long v = 0; v < (1ul << k); ++v)
          out.dist.entries[encode_fixed(mpz_class(v), k)] += per_pattern;
      }
      mpz_class tail = stat.size - assigned_full;
      while (tail > 0) {
        unsigned j =
            static_cast<unsigned>(mpz_sizeinbase(tail.get_mpz_t(), 2)) - 1;
        for (unsigned long v = 0; v < (1ul << j); ++v)
          out.dist.entries[encode_fixed(mpz_class(v), j)] += per_member;
        tail -= mpz_class(1) << j;
      }
      out.classes.push_back(std::move(stat));
    }
    out.dist.residual = row_mass;
    out.depth = n;
    if (row_mass < residual_bound) return out;
  }
  throw std::runtime_error("enumerate_phi: depth budget exhausted");
}

}  // namespace fairbits
