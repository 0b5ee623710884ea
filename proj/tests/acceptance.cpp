// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ifsconj/homeomorphism.hpp"
#include "ifsconj/io.hpp"
#include "ifsconj/kneading.hpp"
#include "ifsconj/symbolic.hpp"

using namespace ifsconj;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, const std::string& what, bool pass, double secs,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL",
              criterion, what.c_str(), secs, detail.empty() ? "" : " -- ",
              detail.c_str());
  if (!pass) ++g_failures;
}

bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

SymbolSeq prime_alpha(int limit) {
  std::vector<uint8_t> bits(size_t(limit), 0);
  for (int m = 2; m <= limit; ++m)
    if (is_prime(m)) bits[size_t(m) - 1] = 1;
  return SymbolSeq::eventually_periodic(bits, {0});
}

// Dyadic bisection of sum_{P<=limit} z^P = z to 2^-prec.
Rational refine_prime_root(int limit, const KneadingResult& kr, int prec) {
  std::vector<int> primes;
  for (int m = 2; m <= limit; ++m)
    if (is_prime(m)) primes.push_back(m);
  auto below = [&](const Rational& z) {
    Rational acc = 0, zp = 1;
    int prev = 0;
    for (int p : primes) {
      for (int i = prev; i < p; ++i) zp *= z;
      prev = p;
      acc += zp;
    }
    return acc < z;
  };
  Rational lo = rational_from_double(kr.bracket_lo) - Rational(1, 1000);
  Rational hi = rational_from_double(kr.bracket_hi) + Rational(1, 1000);
  for (int i = 0; i < prec; ++i) {
    Rational mid = (lo + hi) / 2;
    (below(mid) ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

struct NamedSystem {
  const char* label;
  AffineIfs ifs;
  Rational rho;
};

std::vector<NamedSystem> acceptance_systems() {
  // the worked example plus two fixed interior simplex points
  return {
      {"a=7/10 b=3/5 rho=11/20", AffineIfs(Rational(7, 10), Rational(3, 5)),
       Rational(11, 20)},
      {"a=3/4 b=2/3 rho=1/2", AffineIfs(Rational(3, 4), Rational(2, 3)),
       Rational(1, 2)},
      {"a=5/8 b=4/5 rho=7/16", AffineIfs(Rational(5, 8), Rational(4, 5)),
       Rational(7, 16)},
  };
}

void criterion1() {
  Timer t;
  KneadingResult kr = solve_gamma(prime_alpha(29), *SymbolSeq::parse("1(0)"), 1e-12);
  double err = std::abs(kr.gamma - 0.55785866);
  char detail[160];
  std::snprintf(detail, sizeof detail, "z=%.10f, |z - 0.55785866| = %.2e", kr.gamma,
                err);
  double secs = t.seconds();
  report(1, "prime-system root, primes <= 29, within 1e-7", err < 1e-7 && secs < 1.0,
         secs, detail);
}

void criterion2() {
  Timer t;
  KneadingResult kr = solve_gamma(prime_alpha(29), *SymbolSeq::parse("1(0)"), 1e-12);
  Rational z = refine_prime_root(29, kr, 120);
  Rational p = 1 - z;
  Rational x = p;
  bool agree = true;
  double min_margin = 1.0;
  for (int n = 0; n <= 19; ++n) {
    bool upper = x > p;
    if (upper != is_prime(n + 1)) agree = false;
    if (n > 0) min_margin = std::min(min_margin, std::abs(x.get_d() - p.get_d()));
    x = (x <= p) ? Rational(x / z) : Rational((x - p) / z);
  }
  double secs = t.seconds();
  char detail[128];
  std::snprintf(detail, sizeof detail, "min orbit margin %.3e", min_margin);
  report(2, "prime-orbit agreement: L^n(1-z) in (1-z,1] iff n+1 prime, n <= 19",
         agree && secs < 1.0, secs, detail);

  // stretch check (reported, not asserted): limit 101, n <= 50
  KneadingResult kr2 = solve_gamma(prime_alpha(101), *SymbolSeq::parse("1(0)"), 1e-12);
  Rational z2 = refine_prime_root(101, kr2, 160);
  Rational p2 = 1 - z2, y = p2;
  int agree_count = 0, first_miss = -1;
  for (int n = 0; n <= 50; ++n) {
    bool upper = y > p2;
    if (upper == is_prime(n + 1))
      ++agree_count;
    else if (first_miss < 0)
      first_miss = n;
    y = (y <= p2) ? Rational(y / z2) : Rational((y - p2) / z2);
  }
  std::printf("       stretch (limit 101, n <= 50, report only): %d/51 agree%s\n",
              agree_count,
              first_miss < 0 ? ", no disagreement"
                             : (", first miss at n=" + std::to_string(first_miss)).c_str());
}

void criterion3() {
  Timer t;
  KneadingResult kr = solve_system(AffineIfs(Rational(1, 2), Rational(1, 2)),
                                   Rational(1, 2), 1e-12, 64);
  double secs = t.seconds();
  bool pass = std::abs(kr.gamma - 0.5) < 1e-10 && std::abs(kr.p - 0.5) < 1e-10 &&
              secs < 0.1;
  char detail[128];
  std::snprintf(detail, sizeof detail, "gamma=%.12f p=%.12f", kr.gamma, kr.p);
  report(3, "touching case solves to gamma = p = 1/2 within 1e-10", pass, secs,
         detail);
}

void criterion4() {
  Timer t;
  bool all = true;
  std::string detail;
  for (const NamedSystem& s : acceptance_systems()) {
    KneadingResult kr = solve_system(s.ifs, s.rho, 1e-12, 200);
    KneadingPair kp = alpha_beta(s.ifs, s.rho, 64);
    uint64_t c24 = count_admissible_words(kp.alpha, kp.beta, 24);
    uint64_t c25 = count_admissible_words(kp.alpha, kp.beta, 25);
    double ratio_entropy = std::log(double(c25) / double(c24));
    double diff = std::abs(kr.entropy - ratio_entropy);
    all = all && diff < 5e-3;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s[%s diff %.2e]", detail.empty() ? "" : " ",
                  s.label, diff);
    detail += buf;
  }
  double secs = t.seconds();
  report(4, "entropy vs admissible-word growth at n=24 within 5e-3",
         all && secs < 30.0, secs, detail);
}

void criterion5() {
  Timer t;
  bool all = true;
  std::string detail;
  for (const NamedSystem& s : acceptance_systems()) {
    KneadingResult kr = solve_system(s.ifs, s.rho, 1e-12, 200);
    ConjugacyReport rep =
        verify_conjugacy(s.ifs, Mask(s.rho), kr, 2000, 1e-9, 0);
    all = all && rep.sup_residual < 1e-6 && rep.monotonicity_violations == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s[%s residual %.2e, excluded %d, mono %d]",
                  detail.empty() ? "" : " ", s.label, rep.sup_residual,
                  rep.excluded, rep.monotonicity_violations);
    detail += buf;
  }
  double secs = t.seconds();
  report(5, "conjugacy residual < 1e-6 over 2000 samples, no monotonicity faults",
         all && secs < 60.0, secs, detail);
}

void criterion6() {
  Timer t;
  AffineIfs sys(Rational(7, 10), Rational(3, 5));
  Mask mask{Rational(11, 20)};
  KneadingResult kr = solve_system(sys, Rational(11, 20), 1e-12, 200);
  RegionSet r20 = graph_iterate(sys, mask, kr, 20);
  RegionSet r21 = graph_iterate(sys, mask, kr, 21);

  Rational width = 1;
  for (int i = 0; i < 20; ++i) width *= r20.gamma_hat;
  bool widths_exact = true;
  for (const Rect& r : r20.rects) widths_exact = widths_exact && (r.x1 - r.x0 == width);

  bool nested = region_subset(r21, r20);

  // graph samples (PL coordinate first): (H(t), t) on a 512-point grid
  bool contained = true;
  for (int i = 0; i < 512; ++i) {
    Rational tpt(i, 511);
    tpt.canonicalize();
    double h = H_eval(sys, mask, kr, tpt);
    contained = contained && region_contains(r20, h, tpt, 1e-9);
  }
  double secs = t.seconds();
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu rects at k=20, widths==gamma^20 %s, nesting %s, containment %s",
                r20.rects.size(), widths_exact ? "yes" : "NO",
                nested ? "yes" : "NO", contained ? "yes" : "NO");
  report(6, "rectangle iteration: exact width law, nesting, graph containment",
         widths_exact && nested && contained && secs < 30.0, secs, detail);
}

void criterion7() {
  Timer t;
  AffineIfs sys(Rational(7, 10), Rational(3, 5));
  Mask mask{Rational(11, 20)};
  KneadingResult kr = solve_system(sys, Rational(11, 20), 1e-12, 200);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> unif(0, 1);

  // order preservation below the root: 1000 admissible pairs, 10 zeta values
  int order_fails = 0;
  int pairs = 0;
  while (pairs < 1000) {
    Rational x = rational_from_double(unif(rng));
    Rational y = rational_from_double(unif(rng));
    if (y < x) std::swap(x, y);
    if (y - x < Rational(1, 1000)) continue;  // keep the series gap certifiable
    SymbolSeq sx = itinerary(sys, mask, x, 200);
    SymbolSeq sy = itinerary(sys, mask, y, 200);
    if (compare(sx, sy) != Ordering::Less) continue;
    for (int j = 0; j < 10; ++j) {
      double z = 1.0 / 3.0 + (kr.gamma - 0.02 - 1.0 / 3.0) * j / 9.0;
      SeriesValue vx = series_eval(sx, z), vy = series_eval(sy, z);
      if (!(vx.value + vx.tail_bound < vy.value - vy.tail_bound)) ++order_fails;
    }
    ++pairs;
  }

  // gap bound on a zeta grid below gamma
  int gap_fails = 0;
  for (int j = 1; j <= 40; ++j) {
    double z = 1.0 / 3.0 + (kr.gamma - 1e-3 - 1.0 / 3.0) * j / 40.0;
    if (!gap_bound_check(kr.alpha, kr.beta, z)) ++gap_fails;
  }

  // monotonicity of the sections and shift commutation on 1000 points
  int mono_fails = 0, shift_fails = 0;
  Mask right(mask.rho, MaskVariant::RightClosed);
  for (int i = 0; i < 1000; ++i) {
    Rational x = rational_from_double(unif(rng));
    Rational y = rational_from_double(unif(rng));
    if (y < x) std::swap(x, y);
    if (x == y) continue;
    SymbolSeq tx = itinerary(sys, mask, x, 120);
    SymbolSeq txp = itinerary(sys, right, x, 120);
    SymbolSeq ty = itinerary(sys, mask, y, 120);
    Ordering o1 = compare(tx, txp), o2 = compare(txp, ty);
    if (o1 == Ordering::Greater || o2 == Ordering::Greater) ++mono_fails;
    SymbolSeq swx = itinerary(sys, mask, masked_step(sys, mask, x), 119);
    if (tx.shifted().first_bits(119) != swx.first_bits(119)) ++shift_fails;
  }

  // series self-similarity identity to 1e-12
  int identity_fails = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<uint8_t> bits(40);
    for (auto& b : bits) b = uint8_t(rng() & 1);
    SymbolSeq s = SymbolSeq::truncated(bits);
    double z = 0.1 + 0.8 * double(rng() % 1000) / 1000.0;
    double lhs = series_eval(s, z).value;
    double rhs = (1 - z) * s[0] + z * series_eval(s.shifted(), z).value;
    if (std::abs(lhs - rhs) > 1e-12) ++identity_fails;
  }

  double secs = t.seconds();
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "order fails %d, gap fails %d, monotonicity fails %d, "
                "shift fails %d, identity fails %d",
                order_fails, gap_fails, mono_fails, shift_fails, identity_fails);
  bool pass = order_fails == 0 && gap_fails == 0 && mono_fails == 0 &&
              shift_fails == 0 && identity_fails == 0;
  report(7, "property suites (order, gap bound, sections, shift, identity)", pass,
         secs, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
