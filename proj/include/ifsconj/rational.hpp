#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace ifsconj {

// Exact rational arithmetic (GMP). Orbits of affine masked systems are
// rational-preserving, so itineraries computed on Rational are exact.
using Rational = mpq_class;

// Parses "num/den" or a plain integer string. Returns nullopt on malformed
// input or zero denominator. The result is canonicalized.
std::optional<Rational> parse_rational(std::string_view text);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

// Best rational approximation of x with |x - q| <= eps, by walking the
// continued-fraction convergents of the (exact) dyadic expansion of x.
// Keeps denominators small so downstream exact arithmetic stays cheap.
Rational rationalize(double x, double eps);

}  // namespace ifsconj
