#include "ifsconj/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace ifsconj {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rational require_rational(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw std::invalid_argument(std::string("system spec: missing \"") + key +
                                "\" (rational \"num/den\" string)");
  auto q = parse_rational(j[key].get<std::string>());
  if (!q)
    throw std::invalid_argument(std::string("system spec: malformed rational for \"") +
                                key + "\"");
  return *q;
}

}  // namespace

AffineSpec SystemSpec::as_affine() const {
  if (const auto* aff = std::get_if<AffineSpec>(&sys)) return *aff;
  const auto& pl = std::get<PLSystem>(sys);
  if (pl.gamma < 0.5)
    throw std::invalid_argument(
        "pl system: gamma < 1/2 has no overlapping-IFS realization (a+b<1)");
  Rational g = rational_from_double(pl.gamma);
  Rational p = rational_from_double(pl.p);
  // Exact dyadic images of the doubles; clamp rho into the exact overlap
  // (the double validation allows slack at the corners).
  if (p < 1 - g) p = 1 - g;
  if (p > g) p = g;
  return AffineSpec{AffineIfs(g, g), Mask(p, MaskVariant::LeftClosed)};
}

SystemSpec parse_system_spec(const std::string& text) {
  json j;
  try {
    if (!text.empty() && text.front() == '{') {
      j = json::parse(text);
    } else {
      std::ifstream in(text);
      if (!in) throw std::invalid_argument("system spec: cannot open " + text);
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("system spec: JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("system spec: need an object with \"kind\"");
  std::string kind = j["kind"].get<std::string>();

  std::vector<std::string> notes;
  if (kind == "affine") {
    Rational a = require_rational(j, "a");
    Rational b = require_rational(j, "b");
    Rational rho = require_rational(j, "rho");
    MaskVariant variant = MaskVariant::LeftClosed;
    if (j.contains("mask")) {
      std::string m = j["mask"].get<std::string>();
      if (m == "left")
        variant = MaskVariant::LeftClosed;
      else if (m == "right")
        variant = MaskVariant::RightClosed;
      else
        throw std::invalid_argument("system spec: mask must be \"left\" or \"right\"");
    }
    AffineIfs ifs(a, b);  // throws on invalid parameters
    Mask mask(rho, variant);
    validate_mask(ifs, mask);
    if (ifs.touching()) notes.push_back("a+b=1: touching case (overlap is a single point)");
    if (rho == a) notes.push_back("rho = a: mask at the right edge of the overlap");
    if (rho == 1 - b) notes.push_back("rho = 1-b: mask at the left edge of the overlap");
    return SystemSpec{AffineSpec{std::move(ifs), std::move(mask)}, std::move(notes)};
  }
  if (kind == "pl") {
    if (!j.contains("gamma") || !j.contains("p") || !j["gamma"].is_number() ||
        !j["p"].is_number())
      throw std::invalid_argument("system spec: pl kind needs numeric gamma and p");
    return SystemSpec{PLSystem(j["gamma"].get<double>(), j["p"].get<double>()),
                      std::move(notes)};
  }
  throw std::invalid_argument("system spec: kind must be \"affine\" or \"pl\"");
}

std::string kneading_result_json(const KneadingResult& kr) {
  json j;
  j["gamma"] = kr.gamma;
  j["p"] = kr.p;
  j["entropy"] = kr.entropy;
  j["bracket"] = json::array({kr.bracket_lo, kr.bracket_hi});
  j["N"] = kr.n_trunc;
  j["residual"] = kr.residual;
  j["alpha"] = kr.alpha.str();
  j["beta"] = kr.beta.str();
  return j.dump();
}

std::string conjugacy_report_json(const ConjugacyReport& report) {
  json j;
  j["sup_residual"] = report.sup_residual;
  j["samples"] = report.samples;
  j["excluded"] = report.excluded;
  j["direction"] = report.direction;
  j["monotonicity_violations"] = report.monotonicity_violations;
  return j.dump();
}

void write_rects_csv(std::ostream& os, const RegionSet& region) {
  os << "x0,x1,y0,y1\n";
  for (const Rect& r : region.rects) {
    os << fmt_double(r.x0.get_d()) << ',' << fmt_double(r.x1.get_d()) << ','
       << fmt_double(r.y0.get_d()) << ',' << fmt_double(r.y1.get_d()) << '\n';
  }
}

void write_region_pgm(std::ostream& os, const RegionSet& region, int res) {
  if (res < 1) throw std::invalid_argument("write_region_pgm: res must be >= 1");
  // A pixel is dark iff its square and some rectangle overlap with positive
  // area. (Center sampling would miss rectangles once stages shrink them
  // below a pixel; boundary-only touches stay light.)
  std::vector<uint8_t> img(size_t(res) * size_t(res), 255);
  for (const Rect& r : region.rects) {
    double x0 = r.x0.get_d(), x1 = r.x1.get_d();
    double y0 = r.y0.get_d(), y1 = r.y1.get_d();
    // pixel col covers x in [col/res, (col+1)/res]; row 0 is the top band
    int c0 = std::max(0, int(std::floor(x0 * res)));
    int c1 = std::min(res - 1, int(std::ceil(x1 * res)) - 1);
    int r0 = std::max(0, int(std::floor((1.0 - y1) * res)));
    int r1 = std::min(res - 1, int(std::ceil((1.0 - y0) * res)) - 1);
    for (int row = r0; row <= r1; ++row)
      for (int col = c0; col <= c1; ++col) img[size_t(row) * res + col] = 0;
  }
  os << "P5\n" << res << ' ' << res << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.data()), std::streamsize(img.size()));
}

}  // namespace ifsconj
