#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "ifsconj/homeomorphism.hpp"
#include "ifsconj/interval_ifs.hpp"
#include "ifsconj/kneading.hpp"

namespace ifsconj {

// A system as given on the command line / in a JSON document:
//   {"kind":"affine","a":"7/10","b":"3/5","rho":"11/20","mask":"left"}
//   {"kind":"pl","gamma":0.5578,"p":0.4421}
// Rationals are "num/den" strings; mask defaults to "left".
struct AffineSpec {
  AffineIfs ifs;
  Mask mask;
};

struct SystemSpec {
  std::variant<AffineSpec, PLSystem> sys;
  std::vector<std::string> notes;  // boundary-case diagnostics (a+b=1, rho=a, ...)

  bool is_pl() const { return std::holds_alternative<PLSystem>(sys); }
  // PL systems are realized as the affine IFS (a=gamma, b=gamma, rho=p) with
  // exact dyadic parameters; requires gamma >= 1/2.
  AffineSpec as_affine() const;
};

// text is inline JSON when it starts with '{', otherwise a file path.
// Throws std::invalid_argument with a diagnostic on malformed input.
SystemSpec parse_system_spec(const std::string& text);

std::string kneading_result_json(const KneadingResult& kr);
std::string conjugacy_report_json(const ConjugacyReport& report);

// CSV "x0,x1,y0,y1" per rectangle.
void write_rects_csv(std::ostream& os, const RegionSet& region);
// Binary PGM (P5, maxval 255), res x res; a pixel is dark iff its square
// overlaps some rectangle with positive area (deep stages shrink rectangles
// below pixel size, so center sampling would miss them). Row 0 is y=1.
void write_region_pgm(std::ostream& os, const RegionSet& region, int res);

}  // namespace ifsconj
