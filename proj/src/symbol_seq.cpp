#include "ifsconj/symbol_seq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ifsconj {

namespace {

// Minimal d | n with w[i] = w[i mod d]; the minimal period of w^inf divides
// |w| (Fine-Wilf applied to the infinite repetition).
size_t minimal_period(const std::vector<uint8_t>& w) {
  size_t n = w.size();
  for (size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i % d]);
    if (ok) return d;
  }
  return n;
}

}  // namespace

SymbolSeq SymbolSeq::truncated(std::vector<uint8_t> bits) {
  if (bits.empty())
    throw std::invalid_argument("SymbolSeq: need at least one known bit");
  for (uint8_t b : bits)
    if (b > 1) throw std::invalid_argument("SymbolSeq: bits must be 0/1");
  SymbolSeq s;
  s.prefix_ = std::move(bits);
  return s;
}

SymbolSeq SymbolSeq::eventually_periodic(std::vector<uint8_t> prefix,
                                         std::vector<uint8_t> period) {
  if (period.empty())
    throw std::invalid_argument("SymbolSeq: empty periodic word");
  for (uint8_t b : prefix)
    if (b > 1) throw std::invalid_argument("SymbolSeq: bits must be 0/1");
  for (uint8_t b : period)
    if (b > 1) throw std::invalid_argument("SymbolSeq: bits must be 0/1");

  size_t d = minimal_period(period);
  period.resize(d);
  // Absorb the prefix into the tail: rotating the period right while its
  // last symbol matches the prefix's last makes the representation unique.
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.begin(), period.end() - 1, period.end());
  }
  SymbolSeq s;
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

SymbolSeq SymbolSeq::zero_bar() { return eventually_periodic({}, {0}); }
SymbolSeq SymbolSeq::one_bar() { return eventually_periodic({}, {1}); }

size_t SymbolSeq::known_length() const {
  return periodic() ? SIZE_MAX : prefix_.size();
}

uint8_t SymbolSeq::operator[](size_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  if (!periodic()) throw std::out_of_range("SymbolSeq: bit beyond truncation");
  return period_[(k - prefix_.size()) % period_.size()];
}

SymbolSeq SymbolSeq::shifted() const {
  if (!periodic()) {
    if (prefix_.size() < 2)
      throw std::invalid_argument("SymbolSeq: shift needs >= 2 known bits");
    return truncated({prefix_.begin() + 1, prefix_.end()});
  }
  if (!prefix_.empty())
    return eventually_periodic({prefix_.begin() + 1, prefix_.end()}, period_);
  std::vector<uint8_t> rot(period_.begin() + 1, period_.end());
  rot.push_back(period_.front());
  return eventually_periodic({}, std::move(rot));
}

SymbolSeq SymbolSeq::shifted(size_t k) const {
  SymbolSeq s = *this;
  for (size_t i = 0; i < k; ++i) s = s.shifted();
  return s;
}

SymbolSeq SymbolSeq::prepended(uint8_t bit) const {
  std::vector<uint8_t> pre;
  pre.reserve(prefix_.size() + 1);
  pre.push_back(bit);
  pre.insert(pre.end(), prefix_.begin(), prefix_.end());
  if (periodic()) return eventually_periodic(std::move(pre), period_);
  return truncated(std::move(pre));
}

SymbolSeq SymbolSeq::with_zero_tail() const {
  if (periodic()) return *this;
  return eventually_periodic(prefix_, {0});
}

std::vector<uint8_t> SymbolSeq::first_bits(size_t n) const {
  if (!periodic() && n > prefix_.size())
    throw std::out_of_range("SymbolSeq: not determined to requested depth");
  std::vector<uint8_t> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = (*this)[k];
  return out;
}

std::string SymbolSeq::str() const {
  std::string s;
  for (uint8_t b : prefix_) s += char('0' + b);
  if (periodic()) {
    s += '(';
    for (uint8_t b : period_) s += char('0' + b);
    s += ')';
  }
  return s;
}

std::optional<SymbolSeq> SymbolSeq::parse(std::string_view text) {
  std::vector<uint8_t> pre, per;
  bool in_period = false, closed = false;
  for (char c : text) {
    if (closed) return std::nullopt;
    if (c == '(') {
      if (in_period) return std::nullopt;
      in_period = true;
    } else if (c == ')') {
      if (!in_period || per.empty()) return std::nullopt;
      closed = true;
    } else if (c == '0' || c == '1') {
      (in_period ? per : pre).push_back(uint8_t(c - '0'));
    } else {
      return std::nullopt;
    }
  }
  if (in_period != closed) return std::nullopt;
  if (in_period) return eventually_periodic(std::move(pre), std::move(per));
  if (pre.empty()) return std::nullopt;
  return truncated(std::move(pre));
}

Ordering compare(const SymbolSeq& s, const SymbolSeq& t) {
  if (s.periodic() && t.periodic()) {
    if (s.identical(t)) return Ordering::Equal;  // canonical forms are unique
    // Distinct eventually periodic sequences must differ within
    // max(prefixes) + lcm(periods) bits.
    size_t bound = std::max(s.prefix().size(), t.prefix().size()) +
                   std::lcm(s.period().size(), t.period().size());
    for (size_t k = 0; k <= bound; ++k) {
      if (s[k] != t[k]) return s[k] < t[k] ? Ordering::Less : Ordering::Greater;
    }
    throw std::logic_error("compare: canonical forms differ but bits agree");
  }
  size_t known = std::min(s.known_length(), t.known_length());
  for (size_t k = 0; k < known; ++k) {
    if (s[k] != t[k]) return s[k] < t[k] ? Ordering::Less : Ordering::Greater;
  }
  return Ordering::UnknownBeyondN;
}

std::optional<bool> definitely_leq(const SymbolSeq& s, const SymbolSeq& t) {
  switch (compare(s, t)) {
    case Ordering::Less:
    case Ordering::Equal:
      return true;
    case Ordering::Greater:
      return false;
    default:
      return std::nullopt;
  }
}

std::optional<bool> definitely_less(const SymbolSeq& s, const SymbolSeq& t) {
  switch (compare(s, t)) {
    case Ordering::Less:
      return true;
    case Ordering::Equal:
    case Ordering::Greater:
      return false;
    default:
      return std::nullopt;
  }
}

CantorValue cantor_value(const SymbolSeq& s) {
  // pi_C(sigma) = sum 2 sigma_k / 3^(k+1) = (1-z) sum sigma_k z^k at z=1/3.
  CantorValue out;
  if (s.periodic()) {
    size_t lp = s.prefix().size(), m = s.period().size();
    double acc = 0, w = 2.0 / 3.0;
    for (size_t k = 0; k < lp; ++k, w /= 3.0) acc += w * s[k];
    double ps = 0, wp = 1.0;
    for (size_t j = 0; j < m; ++j, wp /= 3.0) ps += wp * s.period()[j];
    acc += w * ps / (1.0 - std::pow(1.0 / 3.0, double(m)));
    out.value = acc;
    out.tail_bound = 0;
    return out;
  }
  double acc = 0, w = 2.0 / 3.0;
  size_t n = s.known_length();
  for (size_t k = 0; k < n; ++k, w /= 3.0) acc += w * s[k];
  out.value = acc;
  out.tail_bound = std::pow(1.0 / 3.0, double(n));
  return out;
}

}  // namespace ifsconj
