#pragma once

#include <functional>
#include <vector>

#include "ifsconj/rational.hpp"

namespace ifsconj {

enum class MaskVariant { LeftClosed, RightClosed };

// Two-branch overlapping affine IFS on [0,1]:
//   f0(x) = a x        (fixes 0)
//   f1(x) = b x + 1-b  (fixes 1)
// Parameters satisfy 0 < a,b < 1 and a+b >= 1 (branch images overlap or touch).
struct AffineIfs {
  Rational a, b;

  AffineIfs(Rational a_, Rational b_);

  Rational f0(const Rational& x) const { return a * x; }
  Rational f1(const Rational& x) const { return b * x + (1 - b); }
  Rational f0_inv(const Rational& x) const { return x / a; }
  Rational f1_inv(const Rational& x) const { return (x - (1 - b)) / b; }

  double f0(double x) const { return a.get_d() * x; }
  double f1(double x) const { return b.get_d() * x + (1 - b.get_d()); }

  Rational lambda() const { return a > b ? a : b; }
  bool touching() const { return a + b == 1; }
};

// Generic monotone-increasing contraction branches with callable inverses.
// Double precision throughout; itinerary digits beyond ~50 steps are not
// trustworthy near cell boundaries (errors grow by a factor >= 1/lambda per
// step of the expanding masked system).
struct GenericIfs {
  std::function<double(double)> f0, f1;
  std::function<double(double)> f0_inv, f1_inv;
  double lambda_bound;  // contractivity bound in (0,1)

  // Spot-checks f_i(i)=i, monotonicity and the contraction bound on sampled
  // pairs, and the overlap f0(1) >= f1(0); throws std::invalid_argument.
  GenericIfs(std::function<double(double)> f0_, std::function<double(double)> f1_,
             std::function<double(double)> f0_inv_,
             std::function<double(double)> f1_inv_, double lambda_bound_);

  double a() const { return f0(1.0); }
  double b() const { return 1.0 - f1(0.0); }
};

// Mask M_rho: M0=[0,rho], M1=(rho,1] (LeftClosed, the default) or
// M_rho^+: M0=[0,rho), M1=[rho,1] (RightClosed). rho must lie in the overlap
// [1-b, a]; the closed endpoints are allowed and flagged by callers.
struct Mask {
  Rational rho;
  MaskVariant variant = MaskVariant::LeftClosed;

  Mask(Rational rho_, MaskVariant variant_ = MaskVariant::LeftClosed)
      : rho(std::move(rho_)), variant(variant_) {}

  // True when x belongs to the mask's first cell.
  bool in_cell0(const Rational& x) const {
    return variant == MaskVariant::LeftClosed ? x <= rho : x < rho;
  }
  bool in_cell0(double x) const {
    double r = rho.get_d();
    return variant == MaskVariant::LeftClosed ? x <= r : x < r;
  }
};

void validate_mask(const AffineIfs& sys, const Mask& mask);
void validate_mask(const GenericIfs& sys, const Mask& mask);

// The canonical piecewise-linear model L(gamma, p): both branch slopes are
// 1/gamma > 1, cut at p. L(y) = y/gamma on [0,p], (y-(1-gamma))/gamma on
// (p,1] (LeftClosed; RightClosed cuts at [0,p), [p,1]).
// Mapping [0,1] into itself requires 1-gamma <= p <= gamma.
struct PLSystem {
  double gamma, p;
  PLSystem(double gamma_, double p_);
};

// One step of the masked dynamical system W (or W+ under a RightClosed mask):
// f0^{-1} on the first cell, f1^{-1} on the second. Exact for rational input.
Rational masked_step(const AffineIfs& sys, const Mask& mask, const Rational& x);
double masked_step(const AffineIfs& sys, const Mask& mask, double x);
double masked_step(const GenericIfs& sys, const Mask& mask, double x);

// One step of L under the chosen cut closure.
double pl_step(const PLSystem& L, double x,
               MaskVariant variant = MaskVariant::LeftClosed);

// [x, W(x), ..., W^n(x)].
std::vector<Rational> orbit(const AffineIfs& sys, const Mask& mask,
                            const Rational& x, int n);
std::vector<double> orbit(const GenericIfs& sys, const Mask& mask, double x,
                          int n);

// Trapping region D = [f1^{-1}(rho), f0^{-1}(rho)]; every interior orbit
// eventually enters (W1(rho), W0(rho)] and stays.
struct TrappingRegion {
  Rational lo, hi;  // lo = W1(rho), hi = W0(rho)
  bool contains_halfopen(const Rational& x) const { return lo < x && x <= hi; }
};
TrappingRegion trapping_region(const AffineIfs& sys, const Mask& mask);

// First K such that W^k(x) in (W1(rho), W0(rho)] for all k in (K, max_iters],
// or nullopt if the tail never settles within the cap.
std::optional<int> orbit_entry_time(const AffineIfs& sys, const Mask& mask,
                                    const Rational& x, int max_iters);

}  // namespace ifsconj
