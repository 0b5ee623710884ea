#include "ifsconj/interval_ifs.hpp"

#include <cmath>
#include <stdexcept>

namespace ifsconj {

namespace {

void check_unit_interval(const Rational& x) {
  if (x < 0 || x > 1)
    throw std::domain_error("masked_step: point outside [0,1]");
}

void check_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("masked_step: point outside [0,1]");
}

}  // namespace

AffineIfs::AffineIfs(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
  if (!(a > 0 && a < 1 && b > 0 && b < 1))
    throw std::invalid_argument("AffineIfs: need 0 < a,b < 1");
  if (a + b < 1)
    throw std::invalid_argument("AffineIfs: need a+b >= 1 (overlap or touching)");
}

GenericIfs::GenericIfs(std::function<double(double)> f0_,
                       std::function<double(double)> f1_,
                       std::function<double(double)> f0_inv_,
                       std::function<double(double)> f1_inv_,
                       double lambda_bound_)
    : f0(std::move(f0_)),
      f1(std::move(f1_)),
      f0_inv(std::move(f0_inv_)),
      f1_inv(std::move(f1_inv_)),
      lambda_bound(lambda_bound_) {
  if (!(lambda_bound > 0 && lambda_bound < 1))
    throw std::invalid_argument("GenericIfs: lambda_bound must be in (0,1)");
  const double tol = 1e-9;
  if (std::abs(f0(0.0)) > tol || std::abs(f1(1.0) - 1.0) > tol)
    throw std::invalid_argument("GenericIfs: branches must fix 0 and 1");
  if (f0(1.0) + 1e-12 < f1(0.0))
    throw std::invalid_argument("GenericIfs: need f0(1) >= f1(0) (overlap)");
  // Monotone contraction spot-check on a deterministic grid of pairs.
  for (int i = 0; i < 16; ++i) {
    for (int j = i + 1; j <= 16; ++j) {
      double x = i / 16.0, y = j / 16.0;
      for (const auto& f : {f0, f1}) {
        double d = f(y) - f(x);
        if (!(d > 0.0) || d > lambda_bound * (y - x) + tol)
          throw std::invalid_argument(
              "GenericIfs: branch violates 0 < f(y)-f(x) < lambda (y-x)");
      }
    }
  }
  for (int i = 0; i <= 16; ++i) {
    double x = i / 16.0;
    if (std::abs(f0_inv(f0(x)) - x) > 1e-7 || std::abs(f1_inv(f1(x)) - x) > 1e-7)
      throw std::invalid_argument("GenericIfs: inverse callables inconsistent");
  }
}

void validate_mask(const AffineIfs& sys, const Mask& mask) {
  if (mask.rho < 1 - sys.b || mask.rho > sys.a)
    throw std::invalid_argument("Mask: rho must lie in the overlap [1-b, a]");
}

void validate_mask(const GenericIfs& sys, const Mask& mask) {
  double r = mask.rho.get_d();
  if (r + 1e-12 < sys.f1(0.0) || r - 1e-12 > sys.f0(1.0))
    throw std::invalid_argument("Mask: rho must lie in the overlap [1-b, a]");
}

PLSystem::PLSystem(double gamma_, double p_) : gamma(gamma_), p(p_) {
  if (!(gamma > 0 && gamma < 1 && p > 0 && p < 1))
    throw std::invalid_argument("PLSystem: need gamma, p in (0,1)");
  // L maps [0,1] into itself iff 1-gamma <= p <= gamma. Parameters usually
  // come from a numerical solve (often with p on the boundary, e.g. the
  // touching case p = gamma = 1/2), so the check carries slack; pl_step
  // clamps the residual overshoot.
  if (p > gamma + 1e-3 || p < 1 - gamma - 1e-3)
    throw std::invalid_argument("PLSystem: need 1-gamma <= p <= gamma");
}

Rational masked_step(const AffineIfs& sys, const Mask& mask, const Rational& x) {
  check_unit_interval(x);
  validate_mask(sys, mask);
  return mask.in_cell0(x) ? sys.f0_inv(x) : sys.f1_inv(x);
}

double masked_step(const AffineIfs& sys, const Mask& mask, double x) {
  check_unit_interval(x);
  validate_mask(sys, mask);
  if (mask.in_cell0(x)) return x / sys.a.get_d();
  return (x - (1 - sys.b.get_d())) / sys.b.get_d();
}

double masked_step(const GenericIfs& sys, const Mask& mask, double x) {
  check_unit_interval(x);
  validate_mask(sys, mask);
  double y = mask.in_cell0(x) ? sys.f0_inv(x) : sys.f1_inv(x);
  return std::min(1.0, std::max(0.0, y));
}

double pl_step(const PLSystem& L, double x, MaskVariant variant) {
  check_unit_interval(x);
  bool cell0 = variant == MaskVariant::LeftClosed ? x <= L.p : x < L.p;
  double y = cell0 ? x / L.gamma : (x - (1 - L.gamma)) / L.gamma;
  return std::min(1.0, std::max(0.0, y));
}

std::vector<Rational> orbit(const AffineIfs& sys, const Mask& mask,
                            const Rational& x, int n) {
  if (n < 0) throw std::invalid_argument("orbit: n must be >= 0");
  std::vector<Rational> pts;
  pts.reserve(size_t(n) + 1);
  pts.push_back(x);
  for (int k = 0; k < n; ++k) pts.push_back(masked_step(sys, mask, pts.back()));
  return pts;
}

std::vector<double> orbit(const GenericIfs& sys, const Mask& mask, double x,
                          int n) {
  if (n < 0) throw std::invalid_argument("orbit: n must be >= 0");
  std::vector<double> pts;
  pts.reserve(size_t(n) + 1);
  pts.push_back(x);
  for (int k = 0; k < n; ++k) pts.push_back(masked_step(sys, mask, pts.back()));
  return pts;
}

TrappingRegion trapping_region(const AffineIfs& sys, const Mask& mask) {
  validate_mask(sys, mask);
  return {sys.f1_inv(mask.rho), sys.f0_inv(mask.rho)};
}

std::optional<int> orbit_entry_time(const AffineIfs& sys, const Mask& mask,
                                    const Rational& x, int max_iters) {
  TrappingRegion trap = trapping_region(sys, mask);
  Rational y = x;
  int entry = -1;
  for (int k = 0; k <= max_iters; ++k) {
    if (trap.contains_halfopen(y)) {
      entry = k;
      break;
    }
    y = masked_step(sys, mask, y);
  }
  if (entry < 0) return std::nullopt;
  // The half-open region (W1(rho), W0(rho)] is forward invariant; a short
  // window re-checks that instead of trusting it.
  for (int k = 0; k < 64; ++k) {
    y = masked_step(sys, mask, y);
    if (!trap.contains_halfopen(y)) return std::nullopt;
  }
  return entry == 0 ? 0 : entry - 1;  // all k > K stay inside, K = entry-1
}

}  // namespace ifsconj
