#include <cmath>
#include <random>

#include "doctest.h"
#include "ifsconj/interval_ifs.hpp"

using namespace ifsconj;

namespace {

const AffineIfs kTouching{Rational(1, 2), Rational(1, 2)};
const AffineIfs kAsym{Rational(7, 10), Rational(3, 5)};
const Mask kTouchMask{Rational(1, 2)};
const Mask kAsymMask{Rational(11, 20)};

GenericIfs moebius_ifs() {
  // f0(x) = a x / (1 + c(1-x)), f1(x) = 1 - b(1-x)/(1 + c x): monotone
  // nonlinear contractions fixing 0 and 1 with closed-form inverses.
  const double a = 0.7, b = 0.6, c = 0.2;
  return GenericIfs(
      [=](double x) { return a * x / (1 + c * (1 - x)); },
      [=](double x) { return 1 - b * (1 - x) / (1 + c * x); },
      [=](double y) { return y * (1 + c) / (a + c * y); },
      [=](double y) { return (y - (1 - b)) / (b + c * (1 - y)); }, 0.85);
}

}  // namespace

TEST_CASE("AffineIfs rejects invalid parameters") {
  CHECK_THROWS_AS(AffineIfs(Rational(1, 3), Rational(1, 3)),
                  std::invalid_argument);  // a+b < 1
  CHECK_THROWS_AS(AffineIfs(Rational(1), Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(AffineIfs(Rational(0), Rational(1, 2)), std::invalid_argument);
  CHECK_NOTHROW(AffineIfs(Rational(1, 2), Rational(1, 2)));  // touching allowed
}

TEST_CASE("mask validation bounds rho to the overlap") {
  CHECK_THROWS_AS(masked_step(kAsym, Mask(Rational(3, 10)), Rational(1, 2)),
                  std::invalid_argument);  // rho < 1-b
  CHECK_THROWS_AS(masked_step(kAsym, Mask(Rational(4, 5)), Rational(1, 2)),
                  std::invalid_argument);  // rho > a
  // degenerate rho = a and rho = 1-b are accepted (closed simplex)
  CHECK_NOTHROW(masked_step(kAsym, Mask(Rational(7, 10)), Rational(1, 2)));
  CHECK_NOTHROW(masked_step(kAsym, Mask(Rational(2, 5)), Rational(1, 2)));
}

TEST_CASE("masked_step: examples") {
  CHECK(masked_step(kTouching, kTouchMask, Rational(0)) == 0);
  // f0^{-1}(1/2) = 1: the left-closed cell contains rho
  CHECK(masked_step(kTouching, kTouchMask, Rational(1, 2)) == 1);
  // x = 3/5 > rho: (3/5 - 2/5) / (3/5) = 1/3
  CHECK(masked_step(kAsym, kAsymMask, Rational(3, 5)) == Rational(1, 3));
  // RightClosed sends rho through the second branch
  Mask right(Rational(1, 2), MaskVariant::RightClosed);
  CHECK(masked_step(kTouching, right, Rational(1, 2)) == 0);
  CHECK_THROWS_AS(masked_step(kTouching, kTouchMask, Rational(3, 2)),
                  std::domain_error);
}

TEST_CASE("pl_step: examples") {
  PLSystem half(0.5, 0.5);
  CHECK(pl_step(half, 0.25) == doctest::Approx(0.5));
  CHECK(pl_step(half, 0.75) == doctest::Approx(0.5));
  CHECK(pl_step(half, 0.5) == doctest::Approx(1.0));  // left-closed cell
  CHECK(pl_step(half, 0.5, MaskVariant::RightClosed) == doctest::Approx(0.0));

  const double z = 0.55785866;
  PLSystem prime_model(z, 1 - z);
  CHECK(pl_step(prime_model, 1 - z) == doctest::Approx((1 - z) / z));
  CHECK_THROWS_AS(pl_step(half, -0.1), std::domain_error);
  CHECK_THROWS_AS(PLSystem(0.5, 0.9), std::invalid_argument);  // p > gamma
}

TEST_CASE("orbit: fixed endpoints and exact rational values") {
  auto zeros = orbit(kAsym, kAsymMask, Rational(0), 5);
  for (const auto& v : zeros) CHECK(v == 0);
  auto ones = orbit(kAsym, kAsymMask, Rational(1), 3);
  CHECK(ones.size() == 4);
  for (const auto& v : ones) CHECK(v == 1);

  auto o = orbit(kAsym, kAsymMask, Rational(1, 2), 2);
  CHECK(o[0] == Rational(1, 2));
  CHECK(o[1] == Rational(5, 7));
  CHECK(o[2] == Rational(11, 21));
}

TEST_CASE("orbit: rational and double evaluation agree for 30 steps") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Rational x = rational_from_double(unif(rng));
    auto exact = orbit(kAsym, kAsymMask, x, 30);
    // per-step: the double fast path applied to the exact point agrees to
    // well below 1e-12 (a full double recursion would compound the branch
    // expansion, ~(1/b)^k, past that bound)
    for (int k = 0; k < 30; ++k) {
      double stepped = masked_step(kAsym, kAsymMask, exact[size_t(k)].get_d());
      CHECK(std::abs(exact[size_t(k) + 1].get_d() - stepped) < 1e-12);
    }
    // full double recursion stays within the expansion envelope
    double xd = x.get_d();
    for (int k = 0; k < 30; ++k) xd = masked_step(kAsym, kAsymMask, xd);
    CHECK(std::abs(exact[30].get_d() - xd) < 1e-8);
  }
  // dyadic-parameter systems divide exactly in binary: zero drift
  Rational x0 = rational_from_double(1.0 / 7.0);
  auto exact = orbit(kTouching, kTouchMask, x0, 30);
  double xd = x0.get_d();
  for (int k = 0; k <= 30; ++k) {
    CHECK(std::abs(exact[size_t(k)].get_d() - xd) < 1e-12);
    if (k < 30) xd = masked_step(kTouching, kTouchMask, xd);
  }
}

TEST_CASE("expansion: same-cell increments scale by exactly 1/a or 1/b") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0, 1);
  Rational lambda = kAsym.lambda();
  for (int trial = 0; trial < 200; ++trial) {
    Rational x = rational_from_double(unif(rng));
    Rational y = rational_from_double(unif(rng));
    if (y < x) std::swap(x, y);
    if (x == y) continue;
    bool same_cell = kAsymMask.in_cell0(x) == kAsymMask.in_cell0(y);
    if (!same_cell) continue;
    Rational d = masked_step(kAsym, kAsymMask, y) - masked_step(kAsym, kAsymMask, x);
    Rational expect = kAsymMask.in_cell0(x) ? (y - x) / kAsym.a : (y - x) / kAsym.b;
    CHECK(d == expect);
    CHECK(d >= (y - x) / lambda);
  }
}

TEST_CASE("masked systems fix both endpoints for every valid mask") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    Rational a(60 + int(rng() % 39), 100), b(60 + int(rng() % 39), 100);
    a.canonicalize();
    b.canonicalize();
    AffineIfs sys(a, b);
    Rational lo = 1 - b, hi = a;
    Rational rho = lo + (hi - lo) * Rational(int(rng() % 11), 10);
    rho.canonicalize();
    for (MaskVariant v : {MaskVariant::LeftClosed, MaskVariant::RightClosed}) {
      Mask mask(rho, v);
      CHECK(masked_step(sys, mask, Rational(0)) == 0);
      CHECK(masked_step(sys, mask, Rational(1)) == 1);
    }
  }
}

TEST_CASE("trapping region: examples") {
  TrappingRegion t1 = trapping_region(kTouching, kTouchMask);
  CHECK(t1.lo == 0);
  CHECK(t1.hi == 1);
  TrappingRegion t2 = trapping_region(kAsym, kAsymMask);
  CHECK(t2.lo == Rational(1, 4));
  CHECK(t2.hi == Rational(11, 14));
}

TEST_CASE("trapping: interior orbits enter and stay (property)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.001, 0.999);
  for (int trial = 0; trial < 100; ++trial) {
    Rational x = rational_from_double(unif(rng));
    auto entry = orbit_entry_time(kAsym, kAsymMask, x, 10000);
    REQUIRE(entry.has_value());
    CHECK(*entry < 10000);
  }
  // the orbit of 1/2 specifically: membership after burn-in
  TrappingRegion trap = trapping_region(kAsym, kAsymMask);
  auto o = orbit(kAsym, kAsymMask, Rational(1, 2), 1000);
  auto k0 = orbit_entry_time(kAsym, kAsymMask, Rational(1, 2), 1000);
  REQUIRE(k0.has_value());
  for (size_t k = size_t(*k0) + 1; k < o.size(); ++k)
    CHECK(trap.contains_halfopen(o[k]));
}

TEST_CASE("generic ifs: validation and stepping") {
  GenericIfs sys = moebius_ifs();
  CHECK(sys.a() == doctest::Approx(0.7));
  CHECK(sys.b() == doctest::Approx(0.6));
  Mask mask(Rational(11, 20));
  CHECK(masked_step(sys, mask, 0.0) == doctest::Approx(0.0));
  CHECK(masked_step(sys, mask, 1.0) == doctest::Approx(1.0));
  // inverse really inverts on a grid
  for (int i = 0; i <= 20; ++i) {
    double x = i / 20.0;
    CHECK(sys.f0_inv(sys.f0(x)) == doctest::Approx(x).epsilon(1e-9));
    CHECK(sys.f1_inv(sys.f1(x)) == doctest::Approx(x).epsilon(1e-9));
  }
  auto o = orbit(sys, mask, 0.37, 50);
  CHECK(o.size() == 51);
  for (double v : o) CHECK((v >= 0 && v <= 1));
}

TEST_CASE("generic ifs: constructor rejects non-contractions") {
  auto ident = [](double x) { return x; };
  CHECK_THROWS_AS(GenericIfs(ident, ident, ident, ident, 0.9),
                  std::invalid_argument);
}
