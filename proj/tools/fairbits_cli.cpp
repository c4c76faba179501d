#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fairbits/bench.hpp"
#include "fairbits/dice.hpp"
#include "fairbits/extractors.hpp"
#include "fairbits/fixed_k.hpp"
#include "fairbits/io.hpp"
#include "fairbits/oracle.hpp"
#include "json.hpp"

namespace {

using namespace fairbits;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitInsufficientEntropy = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mpq_class parse_rational(const std::string& text) {
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw UsageError("bad rational: " + text);
    mpz_class num(digits.empty() ? "0" : digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  try {
    mpq_class q(text);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw UsageError("bad rational: " + text);
  }
}

std::vector<mpq_class> parse_rho(const std::string& text) {
  std::vector<mpq_class> rho;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) rho.push_back(parse_rational(tok));
  return rho;
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_all(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output: " + path);
  out << data;
}

void emit_report(const std::string& path, const json& summary) {
  if (path.empty())
    std::cerr << summary.dump() << "\n";
  else
    write_all(path, summary.dump(2) + "\n");
}

int enumeration_cap(int cli_cap) {
  if (cli_cap > 0) return cli_cap;
  if (const char* env = std::getenv("DIEXTRACT_CAP")) return std::atoi(env);
  return kDefaultCoinCap;
}

struct ExtractArgs {
  std::string scheme = "elias";
  int m = 2;
  unsigned long n = 0;  // 0: whole input as one block
  std::string in_path, out_path, report_path;
  std::string in_format = "ascii-coin";
  std::string out_format = "ascii-bits";
};

std::string format_bits(const BitStr& bits, const std::string& fmt) {
  if (fmt == "ascii-bits") return bits + "\n";
  if (fmt == "hex") return bits_to_hex(bits) + "\n";
  if (fmt == "packed-bytes") return pack_bits(bits);
  throw UsageError("unknown output format: " + fmt);
}

int cmd_extract(const ExtractArgs& a) {
  bool die_scheme = a.scheme.rfind("generalized:", 0) == 0;
  Extractor psi =
      extractor_by_name(die_scheme ? a.scheme.substr(12) : a.scheme);

  std::string raw = read_all(a.in_path);
  BitStr bits;
  std::size_t symbols = 0;
  std::size_t blocks = 0;
  if (!die_scheme) {
    CoinSeq input;
    if (a.in_format == "ascii-coin")
      input = parse_ascii_coin(raw);
    else if (a.in_format == "packed-binary") {
      for (int f : parse_packed(raw, 2, raw.size() * 8))
        input.push_back(f ? kHead : kTail);
    } else
      throw UsageError("coin scheme needs ascii-coin or packed-binary input");
    symbols = input.size();
    unsigned long block = a.n == 0 ? input.size() : a.n;
    if (block == 0) block = 1;
    for (std::size_t off = 0; off < input.size(); off += block, ++blocks)
      bits += psi(input.substr(off, block));
    if (input.empty()) blocks = 0;
  } else {
    if (a.m < 2) throw UsageError("--m must be >= 2 for die schemes");
    DieSeq input;
    if (a.in_format == "ascii-die")
      input = parse_ascii_die(raw, a.m);
    else if (a.in_format == "packed-binary") {
      int width = tree_depth(a.m) + 1;
      input.m = a.m;
      input.faces = parse_packed(raw, a.m, raw.size() * 8 / width);
    } else
      throw UsageError("die scheme needs ascii-die or packed-binary input");
    symbols = input.faces.size();
    unsigned long block = a.n == 0 ? input.faces.size() : a.n;
    if (block == 0) block = 1;
    for (std::size_t off = 0; off < input.faces.size(); off += block, ++blocks) {
      DieSeq chunk;
      chunk.m = a.m;
      chunk.faces.assign(
          input.faces.begin() + off,
          input.faces.begin() + std::min(input.faces.size(), off + block));
      bits += generalized_extract(chunk, psi);
    }
    if (input.faces.empty()) blocks = 0;
  }

  write_all(a.out_path, format_bits(bits, a.out_format));
  json summary = {
      {"scheme", a.scheme},
      {"symbols_in", symbols},
      {"bits_out", bits.size()},
      {"blocks", blocks},
      {"bit_length", bits.size()},
      {"efficiency", symbols ? double(bits.size()) / double(symbols) : 0.0},
  };
  emit_report(a.report_path, summary);
  return kExitOk;
}

struct GetBitsArgs {
  unsigned k = 0;
  std::string in_path, out_path, report_path;
  std::string in_format = "ascii-coin";
  std::string out_format = "ascii-bits";
  double sim_p = 0.0;  // > 0: use a seeded simulator instead of input
  std::uint64_t seed = 0;
};

int cmd_getbits(const GetBitsArgs& a) {
  if (a.k == 0) throw UsageError("--k must be >= 1");
  std::unique_ptr<SymbolSource> src;
  if (a.sim_p > 0.0) {
    src = std::make_unique<CoinSimSource>(a.sim_p, a.seed);
  } else {
    std::string raw = read_all(a.in_path);
    CoinSeq input;
    if (a.in_format == "ascii-coin")
      input = parse_ascii_coin(raw);
    else if (a.in_format == "packed-binary") {
      for (int f : parse_packed(raw, 2, raw.size() * 8))
        input.push_back(f ? kHead : kTail);
    } else
      throw UsageError("getbits needs ascii-coin or packed-binary input");
    src = std::make_unique<StringSource>(input);
  }
  IterReport rep;
  try {
    rep = generate_k_bits(*src, a.k);
  } catch (const InsufficientEntropy& e) {
    // All-or-nothing: no partial bits are emitted.
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficientEntropy;
  }
  write_all(a.out_path, format_bits(rep.bits, a.out_format));
  json summary = {
      {"k", a.k},
      {"bits_out", rep.bits.size()},
      {"bit_length", rep.bits.size()},
      {"tosses_consumed", rep.total_consumed},
      {"iterations", rep.iterations},
  };
  emit_report(a.report_path, summary);
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::string scheme = "vn";
  int n = 8;
  int m = 3;
  unsigned k = 2;
  std::string p = "1/2";
  std::string rho;
  int cap = 0;
};

int cmd_verify(const VerifyArgs& a) {
  int cap = enumeration_cap(a.cap);
  Extractor psi = extractor_by_name(a.scheme);
  if (a.suite == "uniformity") {
    ExactDist d = enumerate_coin(psi, a.n, parse_rational(a.p), cap);
    UniformityReport rep = verify_uniformity(d);
    if (rep.ok) {
      std::cout << "uniformity: pass (scheme=" << a.scheme << " n=" << a.n
                << " p=" << a.p << ")\n";
      return kExitOk;
    }
    for (const auto& v : rep.violations)
      std::cout << "violation: length=" << v.length << " Y=\"" << v.y
                << "\" P=" << v.p_y << " Y'=\"" << v.y_prime
                << "\" P'=" << v.p_y_prime << "\n";
    return kExitVerifyFail;
  }
  if (a.suite == "lemma1") {
    Lemma1Report rep = verify_lemma1_counts(psi, a.n, cap);
    if (rep.ok) {
      std::cout << "lemma1: pass (scheme=" << a.scheme << " n=" << a.n << ")\n";
      return kExitOk;
    }
    std::cout << "violation: class k1=" << rep.k1 << " k2=" << rep.k2
              << " Y=\"" << rep.y << "\" count=" << rep.count_y << " Y'=\""
              << rep.y_prime << "\" count=" << rep.count_y_prime << "\n";
    return kExitVerifyFail;
  }
  if (a.suite == "dice") {
    std::vector<mpq_class> rho =
        a.rho.empty() ? std::vector<mpq_class>{mpq_class(1, 5), mpq_class(3, 10),
                                               mpq_class(1, 2)}
                      : parse_rho(a.rho);
    ExactDist d = enumerate_die(psi, static_cast<int>(rho.size()), a.n, rho);
    UniformityReport rep = verify_uniformity(d);
    if (rep.ok) {
      std::cout << "dice: pass (scheme=" << a.scheme << " m=" << rho.size()
                << " n=" << a.n << ")\n";
      return kExitOk;
    }
    for (const auto& v : rep.violations)
      std::cout << "violation: length=" << v.length << " Y=\"" << v.y
                << "\" P=" << v.p_y << " Y'=\"" << v.y_prime
                << "\" P'=" << v.p_y_prime << "\n";
    return kExitVerifyFail;
  }
  if (a.suite == "phik") {
    mpq_class bound = mpq_class(1, mpz_class(1) << 30);
    PhiEnumeration e = enumerate_phi(a.k, parse_rational(a.p), bound);
    bool ok = verify_uniformity(e.dist).ok;
    mpz_class pow2k = mpz_class(1) << a.k;
    for (const auto& c : e.classes) {
      if (c.size < pow2k) ok = false;
      if (c.p_full_length < mpq_class(1, 2)) ok = false;
    }
    std::cout << (ok ? "phik: pass" : "phik: fail") << " (k=" << a.k
              << " p=" << a.p << " depth=" << e.depth
              << " residual=" << e.dist.residual.get_d()
              << " classes=" << e.classes.size() << ")\n";
    return ok ? kExitOk : kExitVerifyFail;
  }
  throw UsageError("unknown suite: " + a.suite);
}

struct BenchArgs {
  std::string scheme = "vn";
  unsigned long n = 4096;
  unsigned k = 0;
  double p = 0.5;
  std::string rho;
  std::uint64_t seed = 1;
  int trials = 0;
  std::string csv_path, report_path;
};

int cmd_bench(const BenchArgs& a) {
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  SourceSpec spec;
  spec.seed = a.seed;
  if (!a.rho.empty()) {
    spec.kind = SourceSpec::Kind::Die;
    for (const mpq_class& q : parse_rho(a.rho)) spec.rho.push_back(q.get_d());
  } else {
    spec.p = a.p;
  }
  EfficiencyReport rep;
  if (a.scheme == "fixed-k") {
    if (a.k == 0) throw UsageError("fixed-k bench needs --k");
    rep = bench_fixed_k(a.k, spec, a.trials);
  } else {
    rep = bench_fixed_n(extractor_by_name(a.scheme), a.scheme, spec, a.n,
                        a.trials);
  }
  std::cout << report_text(rep) << "\n";
  if (!a.csv_path.empty()) write_all(a.csv_path, report_csv(rep));
  return kExitOk;
}

int cmd_info() {
  std::cout << "schemes: vn, elias, peres, peres1, generalized:<scheme>, fixed-k\n"
            << "input formats: ascii-coin (H/T or 1/0), ascii-die (decimal faces), "
               "packed-binary\n"
            << "output formats: ascii-bits, hex, packed-bytes (MSB-first, "
               "zero-padded; true bit length in the report)\n"
            << "exit codes: 0 success, 2 parse/validation, 3 verification "
               "failure, 4 insufficient entropy\n"
            << "env: DIEXTRACT_CAP overrides enumeration caps\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomness extraction toolkit"};
  app.require_subcommand(1);

  int workers = 0;
  app.add_option("--workers", workers, "worker thread count (0 = default)");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "extract bits from symbols");
  extract->add_option("--scheme", ex.scheme);
  extract->add_option("--m", ex.m);
  extract->add_option("--n", ex.n, "block length (0 = whole input)");
  extract->add_option("--in", ex.in_path);
  extract->add_option("--out", ex.out_path);
  extract->add_option("--in-format", ex.in_format);
  extract->add_option("--out-format", ex.out_format);
  extract->add_option("--report", ex.report_path);

  GetBitsArgs gb;
  auto* getbits = app.add_subcommand("getbits", "generate exactly k bits");
  getbits->add_option("--k", gb.k)->required();
  getbits->add_option("--in", gb.in_path);
  getbits->add_option("--out", gb.out_path);
  getbits->add_option("--in-format", gb.in_format);
  getbits->add_option("--out-format", gb.out_format);
  getbits->add_option("--report", gb.report_path);
  getbits->add_option("--sim-p", gb.sim_p, "simulate a coin with this bias");
  getbits->add_option("--seed", gb.seed);

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "run exact verification suites");
  verify->add_option("--suite", vf.suite)->required();
  verify->add_option("--scheme", vf.scheme);
  verify->add_option("--n", vf.n);
  verify->add_option("--m", vf.m);
  verify->add_option("--k", vf.k);
  verify->add_option("--p", vf.p);
  verify->add_option("--rho", vf.rho);
  verify->add_option("--cap", vf.cap);

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "efficiency benchmarks");
  bench->add_option("--scheme", be.scheme);
  bench->add_option("--n", be.n);
  bench->add_option("--k", be.k);
  bench->add_option("--p", be.p);
  bench->add_option("--rho", be.rho);
  bench->add_option("--seed", be.seed);
  bench->add_option("--trials", be.trials);
  bench->add_option("--csv", be.csv_path);

  auto* info = app.add_subcommand("info", "describe schemes and formats");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (workers > 0) omp_set_num_threads(workers);

  try {
    if (extract->parsed()) return cmd_extract(ex);
    if (getbits->parsed()) return cmd_getbits(gb);
    if (verify->parsed()) return cmd_verify(vf);
    if (bench->parsed()) return cmd_bench(be);
    if (info->parsed()) return cmd_info();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
