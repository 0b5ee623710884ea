#include "ifsconj/kneading.hpp"

#include <cmath>
#include <sstream>

namespace ifsconj {

namespace {

// Allowance for double rounding in series evaluation; truncation tails are
// tracked separately and exactly.
constexpr double kRoundSlack = 1e-11;

double horner(const std::vector<uint8_t>& bits, double z) {
  double acc = 0;
  for (size_t i = bits.size(); i-- > 0;) acc = acc * z + bits[i];
  return acc;
}

}  // namespace

SeriesValue series_eval(const SymbolSeq& s, double zeta) {
  if (!(zeta > 0 && zeta < 1))
    throw std::domain_error("series_eval: zeta must be in (0,1)");
  SeriesValue out;
  // The constant addresses evaluate to the exact endpoints; the closed form
  // below would only reach them up to rounding.
  if (s.identical(SymbolSeq::zero_bar())) return {0.0, 0.0, 1};
  if (s.identical(SymbolSeq::one_bar())) return {1.0, 0.0, 1};
  double acc = horner(s.prefix(), zeta);
  double zl = std::pow(zeta, double(s.prefix().size()));
  if (s.periodic()) {
    size_t m = s.period().size();
    double ps = horner(s.period(), zeta);
    acc += zl * ps / (1.0 - std::pow(zeta, double(m)));
    out.tail_bound = 0;
    out.terms_used = int(s.prefix().size() + m);
  } else {
    out.tail_bound = zl;  // |(1-z) sum_{k>=N} s_k z^k| <= z^N
    out.terms_used = int(s.prefix().size());
  }
  out.value = (1.0 - zeta) * acc;
  return out;
}

Rational series_eval_exact(const SymbolSeq& s, const Rational& zeta) {
  if (!(zeta > 0 && zeta < 1))
    throw std::domain_error("series_eval_exact: zeta must be in (0,1)");
  Rational acc = 0;
  const auto& pre = s.prefix();
  for (size_t i = pre.size(); i-- > 0;) acc = acc * zeta + int(pre[i]);
  if (s.periodic()) {
    Rational ps = 0, zm = 1;
    for (size_t i = s.period().size(); i-- > 0;) ps = ps * zeta + int(s.period()[i]);
    for (size_t i = 0; i < s.period().size(); ++i) zm *= zeta;
    Rational zl = 1;
    for (size_t i = 0; i < pre.size(); ++i) zl *= zeta;
    acc += zl * ps / (1 - zm);
  }
  return (1 - zeta) * acc;
}

SeriesValue pi_ab(const SymbolSeq& s, double a, double b) {
  if (!(a > 0 && a < 1 && b > 0 && b < 1))
    throw std::domain_error("pi_ab: parameters must be in (0,1)");
  SeriesValue out;
  if (s.identical(SymbolSeq::zero_bar())) return {0.0, 0.0, 1};
  if (s.identical(SymbolSeq::one_bar())) return {1.0, 0.0, 1};
  double lambda = std::max(a, b);
  double acc = 0, coef = 1;  // coef = a^(k - S_k) b^(S_k)
  const auto& pre = s.prefix();
  for (uint8_t bit : pre) {
    if (bit) acc += coef;
    coef *= bit ? b : a;
  }
  if (s.periodic()) {
    // One period contributes P = sum_j c_j p_j with c_j the running branch
    // coefficient; repetitions scale by q = a^(zeros) b^(ones) per period.
    double P = 0, c = 1;
    for (uint8_t bit : s.period()) {
      if (bit) P += c;
      c *= bit ? b : a;
    }
    acc += coef * P / (1.0 - c);
    out.tail_bound = 0;
    out.terms_used = int(pre.size() + s.period().size());
  } else {
    out.tail_bound = (1 - b) * std::pow(lambda, double(pre.size()) + 1) /
                     (1 - lambda);
    out.terms_used = int(pre.size());
  }
  out.value = (1 - b) * acc;
  return out;
}

Rational pi_ab_exact(const SymbolSeq& s, const Rational& a, const Rational& b) {
  if (!(a > 0 && a < 1 && b > 0 && b < 1))
    throw std::domain_error("pi_ab_exact: parameters must be in (0,1)");
  Rational acc = 0, coef = 1;
  for (uint8_t bit : s.prefix()) {
    if (bit) acc += coef;
    coef *= bit ? b : a;
  }
  if (s.periodic()) {
    Rational P = 0, c = 1;
    for (uint8_t bit : s.period()) {
      if (bit) P += c;
      c *= bit ? b : a;
    }
    acc += coef * P / (1 - c);
  }
  return (1 - b) * acc;
}

namespace {

struct Gap {
  double value = 0;  // series(beta) - series(alpha)
  double tails = 0;  // combined truncation bounds
};

Gap eval_gap(const SymbolSeq& alpha, const SymbolSeq& beta, double z) {
  SeriesValue sa = series_eval(alpha, z), sb = series_eval(beta, z);
  return {sb.value - sa.value, sa.tail_bound + sb.tail_bound};
}

}  // namespace

KneadingResult solve_gamma(const SymbolSeq& alpha, const SymbolSeq& beta,
                           double tol, const SolveOptions& opts) {
  if (!(tol > 0)) throw std::invalid_argument("solve_gamma: tol must be > 0");
  if (compare(alpha, beta) != Ordering::Less)
    throw std::invalid_argument("solve_gamma: need alpha < beta");

  const double lo0 = 1.0 / 3.0;
  Gap g0 = eval_gap(alpha, beta, lo0);
  if (!(g0.value - g0.tails > 0))
    throw PrecisionExhausted(
        "solve_gamma: series order not certified at zeta = 1/3");

  // Coarse forward scan for the first sign change.
  double prev = lo0;
  double cur = lo0;
  bool bracketed = false;
  while (true) {
    cur = std::min(cur + opts.scan_step, 1.0 - tol);
    Gap g = eval_gap(alpha, beta, cur);
    if (g.value <= 0) {
      bracketed = true;
      break;
    }
    if (cur >= 1.0 - tol) break;
    prev = cur;
  }
  if (!bracketed)
    throw NoRootBelowOne(
        "solve_gamma: series gap stays positive up to 1 - tol (zero-entropy "
        "inconsistency or insufficient truncation depth)");

  // Fine re-scan from 1/3 guards the minimality requirement: take the
  // earliest sign change at the finer grid as the bracket.
  double lo = prev, hi = cur;
  for (double z = lo0; z < prev; z += opts.verify_step) {
    double z2 = std::min(z + opts.verify_step, prev);
    Gap g = eval_gap(alpha, beta, z2);
    if (g.value <= 0) {
      lo = z;
      hi = z2;
      break;
    }
    if (z2 >= prev) break;
  }

  for (int i = 0; i < opts.max_bisect && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    Gap g = eval_gap(alpha, beta, mid);
    if (g.value > 0)
      lo = mid;
    else
      hi = mid;
  }

  // Certificate: opposite signs at the bracket endpoints with truncation
  // bounds folded in (periodic tails are exact, bound 0). A bisection
  // endpoint may land too close to the root for its own certificate; widen
  // outward geometrically until the sign clears the tail bound.
  // Total widening per side is capped at ~2048 tol: past that the tails, not
  // the endpoint placement, are what blocks certification.
  double lo_c = lo, hi_c = hi;
  Gap glo = eval_gap(alpha, beta, lo_c), ghi = eval_gap(alpha, beta, hi_c);
  for (double step = tol;
       !(glo.value - glo.tails > 0) && step <= 1024 * tol && lo_c - step > lo0;
       step *= 2) {
    lo_c -= step;
    glo = eval_gap(alpha, beta, lo_c);
  }
  for (double step = tol;
       !(ghi.value + ghi.tails <= 0) && step <= 1024 * tol && hi_c + step < 1.0;
       step *= 2) {
    hi_c += step;
    ghi = eval_gap(alpha, beta, hi_c);
  }
  if (!(glo.value - glo.tails > 0) || !(ghi.value + ghi.tails <= 0)) {
    std::ostringstream msg;
    msg << "solve_gamma: truncation bounds (" << glo.tails << ", " << ghi.tails
        << ") exceed the residual near the root; raise the itinerary depth";
    throw PrecisionExhausted(msg.str());
  }

  KneadingResult kr;
  kr.gamma = 0.5 * (lo + hi);
  kr.bracket_lo = lo_c;
  kr.bracket_hi = hi_c;
  kr.alpha = alpha;
  kr.beta = beta;
  kr.p = series_eval(alpha, kr.gamma).value;
  kr.entropy = -std::log(kr.gamma);
  kr.residual = std::abs(eval_gap(alpha, beta, kr.gamma).value);
  size_t ka = alpha.periodic() ? alpha.prefix().size() + alpha.period().size()
                               : alpha.known_length();
  size_t kb = beta.periodic() ? beta.prefix().size() + beta.period().size()
                              : beta.known_length();
  kr.n_trunc = int(std::max(ka, kb));
  return kr;
}

KneadingResult solve_system(const AffineIfs& sys, const Rational& rho,
                            double tol, int n) {
  KneadingPair kp = alpha_beta(sys, rho, n);
  KneadingResult kr = solve_gamma(kp.alpha, kp.beta, tol);
  kr.n_trunc = n;
  return kr;
}

bool gap_bound_check(const SymbolSeq& alpha, const SymbolSeq& beta, double zeta,
                     std::string* why) {
  Gap g = eval_gap(alpha, beta, zeta);
  double bound = (1 - zeta) / (1 + zeta);
  bool lower = g.value - g.tails - kRoundSlack > 0;
  bool upper = g.value + g.tails + kRoundSlack < bound;
  if (lower && upper) return true;
  if (why) {
    std::ostringstream msg;
    msg << "gap " << g.value << " (tails " << g.tails << ") vs bound " << bound
        << " at zeta " << zeta << (lower ? "" : "; positivity failed")
        << (upper ? "" : "; upper bound failed");
    *why = msg.str();
  }
  return false;
}

}  // namespace ifsconj
