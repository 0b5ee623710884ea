#pragma once

#include <stdexcept>
#include <string>

#include "ifsconj/rational.hpp"
#include "ifsconj/symbol_seq.hpp"
#include "ifsconj/symbolic.hpp"

namespace ifsconj {

// Value of an itinerary series with a rigorous truncation bound.
// tail_bound covers only the unknown tail: zeta^(known bits) for a truncated
// sequence, 0 for a periodic one (summed in closed form). Floating-point
// rounding is handled by a fixed slack inside comparisons, not here.
struct SeriesValue {
  double value = 0;
  double tail_bound = 0;
  int terms_used = 0;
};

// tau(x)(zeta) = (1-zeta) sum sigma_k zeta^k, for zeta in (0,1).
SeriesValue series_eval(const SymbolSeq& s, double zeta);

// Exact rational evaluation over the known bits (periodic tails in closed
// form, truncated tails dropped). Used where downstream arithmetic is exact.
Rational series_eval_exact(const SymbolSeq& s, const Rational& zeta);

// General affine coding map pi_{a,b}(sigma) = (1-b) sum a^(k-S_k) b^(S_k)
// sigma_k with S_k = sigma_0+...+sigma_{k-1}. pi_{s,s} = series_eval(.,s).
SeriesValue pi_ab(const SymbolSeq& s, double a, double b);
Rational pi_ab_exact(const SymbolSeq& s, const Rational& a, const Rational& b);

struct NoRootBelowOne : std::runtime_error {
  explicit NoRootBelowOne(const std::string& what) : std::runtime_error(what) {}
};
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

struct KneadingResult {
  double gamma = 0;       // smallest root of series(alpha,.) = series(beta,.)
  double p = 0;           // series(alpha, gamma)
  double entropy = 0;     // -ln gamma
  double bracket_lo = 0;  // certified root bracket
  double bracket_hi = 0;
  SymbolSeq alpha = SymbolSeq::zero_bar();
  SymbolSeq beta = SymbolSeq::one_bar();
  int n_trunc = 0;        // truncation depth the inputs carried
  double residual = 0;    // |series(beta,gamma) - series(alpha,gamma)|
};

struct SolveOptions {
  double scan_step = 1e-3;     // forward scan step from 1/3
  double verify_step = 1e-4;   // positivity grid on [1/3, gamma)
  int max_bisect = 200;
};

// Solves Eq. g(s) := series(beta,s) - series(alpha,s) = 0 for the smallest
// root gamma in (1/3, 1): checks g(1/3) > 0, scans forward until a sign
// change, bisects to width tol, then re-verifies g > 0 on a finer grid over
// [1/3, gamma) (guards the minimality the equation demands). Throws
// NoRootBelowOne if g stays positive up to 1 - tol, PrecisionExhausted if
// truncation bounds are too coarse to certify signs near the root.
KneadingResult solve_gamma(const SymbolSeq& alpha, const SymbolSeq& beta,
                           double tol, const SolveOptions& opts = {});

// Convenience: kneading pair at depth n, then solve.
KneadingResult solve_system(const AffineIfs& sys, const Rational& rho,
                            double tol, int n);

// Gap bound 0 < series(beta,zeta) - series(alpha,zeta)
// < (1-zeta)/(1+zeta), with truncation bounds folded in. zeta must lie
// strictly below the root. Returns false (with *why filled in) on violation.
bool gap_bound_check(const SymbolSeq& alpha, const SymbolSeq& beta, double zeta,
                     std::string* why = nullptr);

}  // namespace ifsconj
