#include "ifsconj/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ifsconj {

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  size_t slash = text.find('/');
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos
                        ? "1"
                        : std::string(text.substr(slash + 1));
  if (!digits(num) || !digits(den)) return std::nullopt;
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
    return std::nullopt;
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

Rational rationalize(double x, double eps) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
  if (!(eps > 0)) throw std::invalid_argument("rationalize: eps must be > 0");
  Rational target(x);
  mpz_class n = target.get_num(), d = target.get_den();
  bool neg = n < 0;
  if (neg) n = -n;
  // Continued-fraction convergents of |x|; stop at the first within eps.
  mpz_class h0 = 0, k0 = 1, h1 = 1, k1 = 0;
  Rational eps_q(eps);
  while (true) {
    mpz_class a = n / d;  // floor (n, d nonnegative)
    mpz_class h = a * h1 + h0, k = a * k1 + k0;
    Rational conv(h, k);
    conv.canonicalize();
    if (neg) conv = -conv;
    if (abs(conv - target) <= eps_q) return conv;
    mpz_class rem = n - a * d;
    if (rem == 0) return target;  // CF terminated: conv == target
    h0 = h1; k0 = k1; h1 = h; k1 = k;
    n = d;
    d = rem;
  }
}

}  // namespace ifsconj
