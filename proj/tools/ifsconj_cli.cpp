// Command-line front end: computes the invariants (gamma, p, entropy) of a
// two-branch overlapping interval IFS, verifies the conjugacy with its
// piecewise-linear model, renders the graph of the conjugating homeomorphism
// by rectangle iteration, runs the prime-itinerary demonstration, and
// evaluates fractal transformations between systems.
//
// Exit codes: 0 success, 1 malformed input, 2 no root below one,
// 3 precision exhausted, 4 I/O error, 5 address-space mismatch,
// 6 verification residual above tolerance.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ifsconj/homeomorphism.hpp"
#include "ifsconj/io.hpp"
#include "ifsconj/kneading.hpp"
#include "ifsconj/symbolic.hpp"

namespace {

using namespace ifsconj;
using nlohmann::json;

constexpr int kExitBadInput = 1;
constexpr int kExitNoRoot = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitIo = 4;
constexpr int kExitMismatch = 5;
constexpr int kExitResidual = 6;

struct CommonArgs {
  std::string system;
  int n = 400;
  double tol = 1e-10;
  int samples = 512;
  uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_system = true) {
  auto* opt = cmd->add_option("--system", args.system,
                              "system spec: inline JSON or a file path");
  if (needs_system) opt->required();
  cmd->add_option("--n", args.n, "itinerary truncation depth (>= 16)")
      ->check(CLI::Range(16, 1000000));
  cmd->add_option("--tol", args.tol, "solver/check tolerance (> 0)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", args.samples, "sample/grid count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "RNG seed (default 0)");
}

KneadingResult solve_spec(const SystemSpec& spec, int n, double tol) {
  for (const std::string& note : spec.notes) std::cerr << "note: " << note << "\n";
  AffineSpec aff = spec.as_affine();
  KneadingPair kp = alpha_beta(aff.ifs, aff.mask.rho, n);
  if (!kp.starts_ok)
    std::cerr << "note: kneading pair lacks the 01/10 leading pattern "
                 "(degenerate mask position)\n";
  KneadingResult kr = solve_gamma(kp.alpha, kp.beta, tol);
  kr.n_trunc = n;
  return kr;
}

std::vector<int> primes_up_to(int limit) {
  std::vector<bool> sieve(size_t(limit) + 1, true);
  std::vector<int> out;
  for (int i = 2; i <= limit; ++i) {
    if (!sieve[size_t(i)]) continue;
    out.push_back(i);
    for (int j = 2 * i; j <= limit; j += i) sieve[size_t(j)] = false;
  }
  return out;
}

bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

int cmd_entropy(const CommonArgs& args) {
  SystemSpec spec = parse_system_spec(args.system);
  KneadingResult kr = solve_spec(spec, args.n, args.tol);
  std::cout << kneading_result_json(kr) << "\n";
  return 0;
}

int cmd_verify(const CommonArgs& args, double delta) {
  SystemSpec spec = parse_system_spec(args.system);
  KneadingResult kr = solve_spec(spec, args.n, args.tol);
  AffineSpec aff = spec.as_affine();
  ConjugacyReport report =
      verify_conjugacy(aff.ifs, aff.mask, kr, args.samples, delta, args.seed);
  std::cout << conjugacy_report_json(report) << "\n";
  if (!(report.sup_residual < args.tol)) {
    std::cerr << "verify: sup residual " << report.sup_residual
              << " is not below tolerance " << args.tol << "\n";
    return kExitResidual;
  }
  return 0;
}

int cmd_graph(const CommonArgs& args, int iters, int res,
              const std::string& out, bool with_direct, bool merge) {
  SystemSpec spec = parse_system_spec(args.system);
  KneadingResult kr = solve_spec(spec, args.n, args.tol);
  AffineSpec aff = spec.as_affine();
  GraphOptions opts;
  opts.merge = merge;
  RegionSet region = graph_iterate(aff.ifs, aff.mask, kr, iters, opts);

  std::ofstream pgm(out + ".pgm", std::ios::binary);
  if (!pgm) {
    std::cerr << "graph: cannot open " << out << ".pgm for writing\n";
    return kExitIo;
  }
  write_region_pgm(pgm, region, res);
  std::ofstream csv(out + "_rects.csv");
  if (!csv) {
    std::cerr << "graph: cannot open " << out << "_rects.csv for writing\n";
    return kExitIo;
  }
  write_rects_csv(csv, region);
  if (with_direct) {
    std::ofstream direct(out + "_direct.csv");
    if (!direct) {
      std::cerr << "graph: cannot open " << out << "_direct.csv for writing\n";
      return kExitIo;
    }
    direct << "x,H(x)\n";
    int grid = std::max(args.samples, 2);
    for (int i = 0; i < grid; ++i) {
      Rational x(i, grid - 1);
      x.canonicalize();
      char buf[80];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x.get_d(),
                    H_eval(aff.ifs, aff.mask, kr, x));
      direct << buf;
    }
  }
  if (!pgm.good() || !csv.good()) {
    std::cerr << "graph: write failure\n";
    return kExitIo;
  }
  std::cerr << "graph: stage " << region.stage << ", " << region.rects.size()
            << " rectangles\n";
  return 0;
}

int cmd_primes(int limit, int horizon, double tol) {
  std::vector<int> primes = primes_up_to(limit);
  if (primes.empty()) {
    std::cerr << "primes: no primes up to " << limit << "\n";
    return kExitBadInput;
  }
  std::vector<uint8_t> indicator(size_t(limit), 0);
  for (int p : primes) indicator[size_t(p) - 1] = 1;  // bit k <=> k+1 prime

  XiExtremes xi = xi_extremes([&](int k) { return int(indicator[size_t(k)]); },
                              limit);
  if (!xi.alpha) {
    std::cerr << "primes: extremal shifts undefined\n";
    return kExitBadInput;
  }
  // The truncated equation sum_{P<=limit} z^P = z corresponds to the
  // indicator itinerary with an exact all-zero tail, paired with beta = 10bar
  // (prime gaps grow without bound, pushing the infimum there).
  SymbolSeq alpha = xi.alpha->with_zero_tail();
  SymbolSeq beta = SymbolSeq::eventually_periodic({1}, {0});

  KneadingResult kr;
  try {
    kr = solve_gamma(alpha, beta, tol);
  } catch (const NoRootBelowOne& e) {
    std::cerr << "primes: " << e.what() << "\n";
    return kExitNoRoot;
  }

  // Dyadic refinement of the root for the exact orbit check: bisection of
  // F(z) = sum z^P - z on a 2^-120 grid (exact rational arithmetic).
  auto F_neg = [&](const Rational& z) {
    Rational acc = 0;
    Rational zp = 1;
    int prev = 0;
    for (int p : primes) {
      for (int i = prev; i < p; ++i) zp *= z;
      prev = p;
      acc += zp;
    }
    return acc < z;
  };
  Rational lo = rational_from_double(kr.bracket_lo) - Rational(1, 1000000);
  Rational hi = rational_from_double(kr.bracket_hi) + Rational(1, 1000000);
  for (int i = 0; i < 140; ++i) {
    Rational mid = (lo + hi) / 2;
    if (F_neg(mid))
      lo = mid;
    else
      hi = mid;
  }
  Rational z_hat = (lo + hi) / 2;
  Rational p_hat = 1 - z_hat;

  json table = json::array();
  bool all_agree = true;
  double min_margin = 1.0;
  Rational x = p_hat;
  // horizon = 0 requests an empty check table; otherwise n runs over
  // 0..horizon inclusive.
  for (int n = 0; horizon > 0 && n <= horizon; ++n) {
    bool upper = x > p_hat;  // x in (1-z, 1]
    bool next_prime = is_prime(n + 1);
    bool agree = upper == next_prime;
    all_agree = all_agree && agree;
    if (n > 0)
      min_margin = std::min(min_margin, std::abs(x.get_d() - p_hat.get_d()));
    table.push_back({{"n", n},
                     {"L_n", x.get_d()},
                     {"in_upper_cell", upper},
                     {"n_plus_1_prime", next_prime},
                     {"agree", agree}});
    x = (x <= p_hat) ? Rational(x / z_hat) : Rational((x - p_hat) / z_hat);
  }

  json j;
  j["limit"] = limit;
  j["horizon"] = horizon;
  j["gamma"] = kr.gamma;
  j["p"] = kr.p;
  j["entropy"] = kr.entropy;
  j["bracket"] = json::array({kr.bracket_lo, kr.bracket_hi});
  j["residual"] = kr.residual;
  j["alpha"] = kr.alpha.str();
  j["beta"] = kr.beta.str();
  j["table"] = table;
  j["all_agree"] = all_agree;
  j["min_margin"] = min_margin;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_transform(const CommonArgs& args, const std::string& system2,
                  const std::string& out) {
  SystemSpec spec_f = parse_system_spec(args.system);
  SystemSpec spec_g = parse_system_spec(system2);
  AffineSpec f = spec_f.as_affine(), g = spec_g.as_affine();

  FractalTransform transform(f.ifs, f.mask, g.ifs, g.mask, args.n);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "transform: cannot open " << out << " for writing\n";
      return kExitIo;
    }
    os = &file;
  }
  *os << "x,T(x)\n";
  int grid = std::max(args.samples, 2);
  for (int i = 0; i < grid; ++i) {
    Rational x(i, grid - 1);
    x.canonicalize();
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x.get_d(), transform(x));
    *os << buf;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topological invariants and conjugacies of overlapping interval IFSs"};
  app.require_subcommand(1);

  CommonArgs entropy_args, verify_args, graph_args, transform_args;
  double delta = 1e-9;
  int iters = 12, res = 512, prime_limit = 29, horizon = 19;
  double primes_tol = 1e-12;
  std::string graph_out = "graph", transform_out, system2;
  bool with_direct = false, merge = false;

  auto* c_entropy = app.add_subcommand("entropy", "solve for gamma, p, entropy");
  add_common(c_entropy, entropy_args);

  auto* c_verify =
      app.add_subcommand("verify", "check H(W(x)) = L(H(x)) on random samples");
  add_common(c_verify, verify_args);
  c_verify->add_option("--delta", delta, "exclusion radius around preimages of rho");

  auto* c_graph =
      app.add_subcommand("graph", "rectangle-iteration graph of the conjugacy");
  add_common(c_graph, graph_args);
  c_graph->add_option("--iters", iters, "iteration count k")->check(CLI::NonNegativeNumber);
  c_graph->add_option("--res", res, "raster resolution (pixels per side)")
      ->check(CLI::PositiveNumber);
  c_graph->add_option("--out", graph_out, "output path prefix");
  c_graph->add_flag("--with-direct", with_direct, "also write (x, H(x)) samples");
  c_graph->add_flag("--merge", merge, "merge adjacent congruent rectangles");

  auto* c_primes = app.add_subcommand(
      "primes", "prime-itinerary system: root of sum z^P = z and orbit check");
  c_primes->add_option("--prime-limit", prime_limit, "use primes <= limit")
      ->check(CLI::Range(2, 100000));
  c_primes->add_option("--horizon", horizon, "orbit steps to check")
      ->check(CLI::NonNegativeNumber);
  c_primes->add_option("--tol", primes_tol, "root tolerance")->check(CLI::PositiveNumber);

  auto* c_transform =
      app.add_subcommand("transform", "fractal transformation between two systems");
  add_common(c_transform, transform_args);
  c_transform->add_option("--system2", system2, "target system spec")->required();
  c_transform->add_option("--out", transform_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_entropy->parsed()) return cmd_entropy(entropy_args);
    if (c_verify->parsed()) return cmd_verify(verify_args, delta);
    if (c_graph->parsed())
      return cmd_graph(graph_args, iters, res, graph_out, with_direct, merge);
    if (c_primes->parsed()) return cmd_primes(prime_limit, horizon, primes_tol);
    if (c_transform->parsed())
      return cmd_transform(transform_args, system2, transform_out);
  } catch (const NoRootBelowOne& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoRoot;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const AddressSpaceMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
