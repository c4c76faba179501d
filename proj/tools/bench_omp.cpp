// Compares the OpenMP enumeration kernels against the serial references:
// identical exact results, wall-clock speedup reported.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "fairbits/extractors.hpp"
#include "fairbits/oracle.hpp"

using namespace fairbits;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

bool same_dist(const ExactDist& x, const ExactDist& y) {
  return x.entries == y.entries && x.residual == y.residual;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 16;
  int die_n = argc > 2 ? std::atoi(argv[2]) : 9;
  std::cout << "threads=" << omp_get_max_threads() << "\n";

  mpq_class p(1, 3);
  for (const char* name : {"vn", "elias", "peres"}) {
    Extractor psi = extractor_by_name(name);

    auto t0 = std::chrono::steady_clock::now();
    ExactDist serial = enumerate_coin_serial(psi, n, p, n);
    auto t1 = std::chrono::steady_clock::now();
    ExactDist parallel = enumerate_coin(psi, n, p, n);
    auto t2 = std::chrono::steady_clock::now();
    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::cout << "enumerate_coin scheme=" << name << " n=" << n
              << " serial=" << ts << "s parallel=" << tp
              << "s speedup=" << ts / tp
              << " match=" << (same_dist(serial, parallel) ? "yes" : "NO")
              << "\n";
    if (!same_dist(serial, parallel)) return 1;
  }

  std::vector<mpq_class> rho{mpq_class(1, 5), mpq_class(3, 10), mpq_class(1, 2)};
  Extractor psi = extractor_by_name("elias");
  auto t0 = std::chrono::steady_clock::now();
  ExactDist serial = enumerate_die_serial(psi, 3, die_n, rho);
  auto t1 = std::chrono::steady_clock::now();
  ExactDist parallel = enumerate_die(psi, 3, die_n, rho);
  auto t2 = std::chrono::steady_clock::now();
  double ts = seconds(t0, t1), tp = seconds(t1, t2);
  std::cout << "enumerate_die scheme=elias m=3 n=" << die_n << " serial=" << ts
            << "s parallel=" << tp << "s speedup=" << ts / tp
            << " match=" << (same_dist(serial, parallel) ? "yes" : "NO")
            << "\n";
  return same_dist(serial, parallel) ? 0 : 1;
}
