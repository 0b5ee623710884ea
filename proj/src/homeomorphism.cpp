#include "ifsconj/homeomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ifsconj/symbolic.hpp"

namespace ifsconj {

double H_eval(const AffineIfs& sys, const Mask& mask, const KneadingResult& kr,
              const Rational& x) {
  return series_eval(itinerary(sys, mask, x, std::max(kr.n_trunc, 2)), kr.gamma)
      .value;
}

double H_eval(const GenericIfs& sys, const Mask& mask, const KneadingResult& kr,
              double x) {
  return series_eval(itinerary(sys, mask, x, std::max(kr.n_trunc, 2)), kr.gamma)
      .value;
}

HValue H_eval_certified(const AffineIfs& sys, const Mask& mask,
                        const KneadingResult& kr, const Rational& x) {
  SeriesValue sv =
      series_eval(itinerary(sys, mask, x, std::max(kr.n_trunc, 2)), kr.gamma);
  return {sv.value, sv.tail_bound};
}

double H_inverse(const AffineIfs& sys, const KneadingResult& kr, double y) {
  if (!(y >= 0 && y <= 1)) throw std::domain_error("H_inverse: y outside [0,1]");
  int n = std::max(kr.n_trunc, 2);
  std::vector<uint8_t> bits;
  bits.reserve(size_t(n));
  double t = y;
  for (int k = 0; k < n; ++k) {
    bool cell0 = t <= kr.p;  // LeftClosed at p, matching the W-side mask
    bits.push_back(cell0 ? 0 : 1);
    t = cell0 ? t / kr.gamma : (t - (1 - kr.gamma)) / kr.gamma;
    t = std::min(1.0, std::max(0.0, t));
  }
  return pi_ab(SymbolSeq::truncated(std::move(bits)), sys.a.get_d(),
               sys.b.get_d())
      .value;
}

namespace {

// True preimages of rho under W up to `count` points (breadth first): x is a
// preimage of t via branch i iff f_i(t) lands in cell i.
std::vector<Rational> rho_preimages(const AffineIfs& sys, const Mask& mask,
                                    int count) {
  std::vector<Rational> out;
  std::set<Rational> seen;
  std::vector<Rational> level{mask.rho};
  out.push_back(mask.rho);
  seen.insert(mask.rho);
  while (int(out.size()) < count && !level.empty()) {
    std::vector<Rational> next;
    for (const Rational& t : level) {
      for (int branch : {0, 1}) {
        Rational x = branch == 0 ? sys.f0(t) : sys.f1(t);
        bool valid = branch == 0 ? mask.in_cell0(x) : !mask.in_cell0(x);
        if (valid && x >= 0 && x <= 1 && seen.insert(x).second) {
          next.push_back(x);
          out.push_back(x);
          if (int(out.size()) >= count) return out;
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

ConjugacyReport verify_conjugacy(const AffineIfs& sys, const Mask& mask,
                                 const KneadingResult& kr, int samples,
                                 double delta, uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("verify_conjugacy: samples must be >= 1");
  ConjugacyReport report;
  report.samples = samples;
  report.direction = "H(W(x)) = L(H(x))  [equivalently W = H^-1 . L . H]";

  std::vector<Rational> preimages = rho_preimages(sys, mask, samples);
  std::vector<double> pre_d(preimages.size());
  for (size_t i = 0; i < preimages.size(); ++i) pre_d[i] = preimages[i].get_d();
  std::sort(pre_d.begin(), pre_d.end());

  PLSystem L(kr.gamma, kr.p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<std::pair<Rational, double>> kept;  // (x, H(x)) for monotonicity
  kept.reserve(size_t(samples));
  for (int i = 0; i < samples; ++i) {
    Rational x = rational_from_double(unif(rng));  // exact dyadic sample
    double xd = x.get_d();
    // Exclusion: within delta of an exact preimage of rho (double prefilter,
    // the margin is generous against rounding).
    auto it = std::lower_bound(pre_d.begin(), pre_d.end(), xd - delta * 1.01);
    bool near = it != pre_d.end() && *it <= xd + delta * 1.01;
    double h = H_eval(sys, mask, kr, x);
    // H(x) within rounding distance of p makes L's branch choice
    // indeterminate at truncation level; excluded and counted.
    if (near || std::abs(h - kr.p) < 1e-12) {
      ++report.excluded;
      continue;
    }
    Rational wx = masked_step(sys, mask, x);
    double lhs = H_eval(sys, mask, kr, wx);
    double rhs = pl_step(L, h, mask.variant);
    report.sup_residual = std::max(report.sup_residual, std::abs(lhs - rhs));
    kept.emplace_back(x, h);
  }

  std::sort(kept.begin(), kept.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  for (size_t i = 1; i < kept.size(); ++i) {
    if (kept[i].first == kept[i - 1].first) continue;
    if (!(kept[i].second > kept[i - 1].second)) ++report.monotonicity_violations;
  }
  return report;
}

RegionSet graph_iterate(const AffineIfs& sys, const Mask& mask,
                        const KneadingResult& kr, int k,
                        const GraphOptions& opts) {
  if (k < 0) throw std::invalid_argument("graph_iterate: k must be >= 0");
  validate_mask(sys, mask);

  RegionSet region;
  region.gamma_hat = rationalize(kr.gamma, opts.rationalize_eps);
  region.p_hat = rationalize(kr.p, opts.rationalize_eps);
  region.rects.push_back(Rect{0, 1, 0, 1, {}});

  const Rational cut0 = sys.f0_inv(mask.rho);  // W0(rho): keep y <= cut0
  const Rational cut1 = sys.f1_inv(mask.rho);  // W1(rho): keep y >= cut1
  const Rational& g = region.gamma_hat;

  for (int stage = 0; stage < k; ++stage) {
    std::vector<Rect> next;
    next.reserve(region.rects.size() * 2);
    for (const Rect& r : region.rects) {
      if (r.y0 <= cut0) {  // branch 0: P-part, maps into cell0 x cell0
        Rect c;
        c.x0 = g * r.x0;
        c.x1 = g * r.x1;
        c.y0 = sys.f0(r.y0);
        c.y1 = sys.f0(std::min(r.y1, cut0));
        c.word.reserve(r.word.size() + 1);
        c.word.push_back(0);
        c.word.insert(c.word.end(), r.word.begin(), r.word.end());
        next.push_back(std::move(c));
      }
      if (r.y1 >= cut1) {  // branch 1: Q-part
        Rect c;
        c.x0 = g * r.x0 + (1 - g);
        c.x1 = g * r.x1 + (1 - g);
        c.y0 = sys.f1(std::max(r.y0, cut1));
        c.y1 = sys.f1(r.y1);
        c.word.reserve(r.word.size() + 1);
        c.word.push_back(1);
        c.word.insert(c.word.end(), r.word.begin(), r.word.end());
        next.push_back(std::move(c));
      }
    }
    region.rects = std::move(next);
    region.stage = stage + 1;
  }

  std::sort(region.rects.begin(), region.rects.end(),
            [](const Rect& u, const Rect& v) {
              if (u.x0 != v.x0) return u.x0 < v.x0;
              return u.y0 < v.y0;
            });

  if (opts.merge) {
    std::vector<Rect> merged;
    for (Rect& r : region.rects) {
      if (!merged.empty() && merged.back().y0 == r.y0 &&
          merged.back().y1 == r.y1 && merged.back().x1 == r.x0) {
        merged.back().x1 = r.x1;
        merged.back().word.clear();
      } else {
        merged.push_back(std::move(r));
      }
    }
    region.rects = std::move(merged);
  }
  return region;
}

bool region_contains(const RegionSet& region, double x, const Rational& y,
                     double x_slack) {
  for (const Rect& r : region.rects) {
    if (y < r.y0 || y > r.y1) continue;
    if (x >= r.x0.get_d() - x_slack && x <= r.x1.get_d() + x_slack) return true;
  }
  return false;
}

bool region_subset(const RegionSet& finer, const RegionSet& coarser) {
  std::map<std::vector<uint8_t>, const Rect*> by_word;
  for (const Rect& r : coarser.rects) by_word[r.word] = &r;
  for (const Rect& r : finer.rects) {
    if (r.word.empty()) return false;  // merged rects lose provenance
    std::vector<uint8_t> parent(r.word.begin(), r.word.end() - 1);
    auto it = by_word.find(parent);
    if (it == by_word.end()) return false;
    const Rect& p = *it->second;
    if (r.x0 < p.x0 || r.x1 > p.x1 || r.y0 < p.y0 || r.y1 > p.y1) return false;
  }
  return true;
}

FractalTransform::FractalTransform(AffineIfs sys_f, Mask mask_f,
                                   AffineIfs sys_g, Mask mask_g, int n)
    : f_(std::move(sys_f)),
      g_(std::move(sys_g)),
      mask_f_(std::move(mask_f)),
      mask_g_(std::move(mask_g)),
      n_(n) {
  if (n_ < 2) throw std::invalid_argument("FractalTransform: need n >= 2");
  checked_depth_ = std::min(n_, kMaxCheckDepth);
  KneadingPair kf = alpha_beta(f_, mask_f_.rho, n_);
  KneadingPair kg = alpha_beta(g_, mask_g_.rho, n_);
  for (int k = 0; k < checked_depth_; ++k) {
    if (kf.alpha[size_t(k)] != kg.alpha[size_t(k)] ||
        kf.beta[size_t(k)] != kg.beta[size_t(k)]) {
      std::ostringstream msg;
      msg << "fractal transform: kneading pairs disagree at depth " << k
          << " (alpha_F=" << kf.alpha.str() << ", alpha_G=" << kg.alpha.str()
          << ")";
      throw AddressSpaceMismatch(msg.str());
    }
  }
}

double FractalTransform::operator()(const Rational& x) const {
  SymbolSeq tau = itinerary(f_, mask_f_, x, n_);
  return pi_ab(tau, g_.a.get_d(), g_.b.get_d()).value;
}

}  // namespace ifsconj
