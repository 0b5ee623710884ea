#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifsconj/interval_ifs.hpp"
#include "ifsconj/kneading.hpp"

namespace ifsconj {

// H(x) = tau(x)(gamma): evaluates the conjugating homeomorphism from the
// masked system W onto its piecewise-linear model L(gamma, p).
// H(0)=0, H(1)=1 exactly; H(rho)=p.
double H_eval(const AffineIfs& sys, const Mask& mask, const KneadingResult& kr,
              const Rational& x);
double H_eval(const GenericIfs& sys, const Mask& mask, const KneadingResult& kr,
              double x);

struct HValue {
  double value = 0;
  double bound = 0;  // certified series truncation bound
};
HValue H_eval_certified(const AffineIfs& sys, const Mask& mask,
                        const KneadingResult& kr, const Rational& x);

// H^{-1}(y) = pi_{a,b}(itinerary of y under L(gamma,p), LeftClosed at p).
double H_inverse(const AffineIfs& sys, const KneadingResult& kr, double y);

struct ConjugacyReport {
  double sup_residual = 0;
  int samples = 0;
  int excluded = 0;  // near mask-boundary preimages or indeterminate itinerary
  std::string direction;  // the verified identity
  int monotonicity_violations = 0;
};

// Checks |H(W(x)) - L(H(x))| over seeded random samples, excluding points
// within delta of the first `samples` exact preimages of rho (where the two
// sides may legitimately disagree at truncation level), and checks strict
// monotonicity of H over the sampled points.
ConjugacyReport verify_conjugacy(const AffineIfs& sys, const Mask& mask,
                                 const KneadingResult& kr, int samples,
                                 double delta, uint64_t seed = 0);

// Axis-aligned rectangle of the graph-refinement iteration, with exact rational
// coordinates. word holds the branch choices (outermost first) that created
// it; the x-extent is the full PL cylinder of that word (width gamma^k
// exactly), the y-extent the interval of points realizing it as an itinerary
// prefix.
struct Rect {
  Rational x0, x1, y0, y1;
  std::vector<uint8_t> word;
};

struct RegionSet {
  std::vector<Rect> rects;
  int stage = 0;
  Rational gamma_hat{0};  // exact parameters the x-maps used
  Rational p_hat{0};
};

struct GraphOptions {
  bool merge = false;        // merge congruent adjacent rectangles
  double rationalize_eps = 1e-12;
};

// k applications of the plane map S -> F0(S n P) u F1(S n Q) starting from
// the unit square, where F0=(gamma x, f0(y)), F1=(gamma x + 1-gamma, f1(y)),
// P = {x <= p/gamma, y <= f0^{-1}(rho)}, Q = {x >= (p-(1-gamma))/gamma,
// y >= f1^{-1}(rho)}. Pruning is decided exactly on the y-side (rational
// (a,b,rho) only); gamma and p enter through continued-fraction
// rationalizations of the solved values. Rectangles are sorted by
// lower-left corner; deterministic.
RegionSet graph_iterate(const AffineIfs& sys, const Mask& mask,
                        const KneadingResult& kr, int k,
                        const GraphOptions& opts = {});

// Containment of a graph sample (x = PL coordinate, y = W coordinate);
// slack dilates in x only (y is exact).
bool region_contains(const RegionSet& region, double x, const Rational& y,
                     double x_slack);

// Stage-(k+1) set contained in stage-k set (word-prefix containment).
bool region_subset(const RegionSet& finer, const RegionSet& coarser);

struct AddressSpaceMismatch : std::runtime_error {
  explicit AddressSpaceMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

// Fractal transformation T_FG = pi_G o tau_F between two overlapping affine
// systems sharing an address space. Construction checks that the two
// kneading pairs agree (to the documented depth, capped at 48 because
// double-entered parameters limit trustworthy itinerary depth); throws
// AddressSpaceMismatch otherwise. When the check passes, operator() is an
// orientation-preserving homeomorphism with inverse FractalTransform(G, F).
class FractalTransform {
 public:
  FractalTransform(AffineIfs sys_f, Mask mask_f, AffineIfs sys_g, Mask mask_g,
                   int n);
  double operator()(const Rational& x) const;
  int checked_depth() const { return checked_depth_; }

  static constexpr int kMaxCheckDepth = 48;

 private:
  AffineIfs f_, g_;
  Mask mask_f_, mask_g_;
  int n_;
  int checked_depth_ = 0;
};

}  // namespace ifsconj
