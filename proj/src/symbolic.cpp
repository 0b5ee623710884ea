#include "ifsconj/symbolic.hpp"

#include <map>
#include <stdexcept>

namespace ifsconj {

SymbolSeq itinerary(const AffineIfs& sys, const Mask& mask, const Rational& x,
                    int n) {
  if (n < 1) throw std::invalid_argument("itinerary: need n >= 1");
  validate_mask(sys, mask);
  if (x < 0 || x > 1) throw std::domain_error("itinerary: point outside [0,1]");

  std::vector<uint8_t> bits;
  bits.reserve(size_t(n));
  std::map<Rational, size_t> seen;  // exact orbit point -> step index
  Rational y = x;
  for (int k = 0; k < n; ++k) {
    auto [it, fresh] = seen.emplace(y, size_t(k));
    if (!fresh) {
      size_t j = it->second;  // orbit recurrence: bits from j repeat forever
      std::vector<uint8_t> pre(bits.begin(), bits.begin() + j);
      std::vector<uint8_t> per(bits.begin() + j, bits.end());
      return SymbolSeq::eventually_periodic(std::move(pre), std::move(per));
    }
    bool c0 = mask.in_cell0(y);
    bits.push_back(c0 ? 0 : 1);
    y = c0 ? sys.f0_inv(y) : sys.f1_inv(y);
  }
  return SymbolSeq::truncated(std::move(bits));
}

SymbolSeq itinerary(const GenericIfs& sys, const Mask& mask, double x, int n) {
  if (n < 1) throw std::invalid_argument("itinerary: need n >= 1");
  validate_mask(sys, mask);
  if (!(x >= 0 && x <= 1)) throw std::domain_error("itinerary: point outside [0,1]");
  std::vector<uint8_t> bits;
  bits.reserve(size_t(n));
  double y = x;
  for (int k = 0; k < n; ++k) {
    bool c0 = mask.in_cell0(y);
    bits.push_back(c0 ? 0 : 1);
    y = masked_step(sys, mask, y);
  }
  return SymbolSeq::truncated(std::move(bits));
}

namespace {

template <class Itin>
KneadingPair make_pair(Itin&& itin, bool at_boundary) {
  KneadingPair kp{itin(MaskVariant::LeftClosed), itin(MaskVariant::RightClosed)};
  kp.rho_at_boundary = at_boundary;
  const SymbolSeq& al = kp.alpha;
  const SymbolSeq& be = kp.beta;
  kp.starts_ok = al.is_known(1) && be.is_known(1) && al[0] == 0 && al[1] == 1 &&
                 be[0] == 1 && be[1] == 0;
  auto lt = [](const SymbolSeq& s, const SymbolSeq& t) {
    return compare(s, t) == Ordering::Less;
  };
  kp.chain_ok = kp.starts_ok && lt(be.shifted(), al) && lt(al, be) &&
                lt(be, al.shifted());
  return kp;
}

}  // namespace

KneadingPair alpha_beta(const AffineIfs& sys, const Rational& rho, int n) {
  bool boundary = (rho == sys.a) || (rho == 1 - sys.b);
  return make_pair(
      [&](MaskVariant v) { return itinerary(sys, Mask(rho, v), rho, n); },
      boundary);
}

KneadingPair alpha_beta(const GenericIfs& sys, double rho, int n) {
  bool boundary = rho == sys.f0(1.0) || rho == sys.f1(0.0);
  return make_pair(
      [&](MaskVariant v) {
        return itinerary(sys, Mask(Rational(rho), v), rho, n);
      },
      boundary);
}

Membership membership(const SymbolSeq& s, const SymbolSeq& alpha,
                      const SymbolSeq& beta, AddressSpace space, int depth) {
  if (depth < 0) throw std::invalid_argument("membership: depth must be >= 0");
  bool indeterminate = false;
  for (int k = 0; k <= depth; ++k) {
    if (!s.periodic() && size_t(k) >= s.known_length()) {
      indeterminate = true;  // shift would drop below one known bit
      break;
    }
    SymbolSeq sk = s.shifted(size_t(k));
    // An identical truncated representation denotes the same sequence, so a
    // closed bracket endpoint contains it even though bitwise comparison
    // cannot decide.
    if (space != AddressSpace::OmegaPlus && sk.identical(alpha)) continue;
    if (space != AddressSpace::Omega && sk.identical(beta)) continue;
    // lower disjunct: sigma <= alpha (closed) or sigma < alpha (open)
    std::optional<bool> low = space == AddressSpace::OmegaPlus
                                  ? definitely_less(sk, alpha)
                                  : definitely_leq(sk, alpha);
    if (low.has_value() && *low) continue;
    // upper disjunct: sigma > beta (Omega) or sigma >= beta (others)
    std::optional<bool> up = space == AddressSpace::Omega
                                 ? definitely_less(beta, sk)
                                 : definitely_leq(beta, sk);
    if (up.has_value() && *up) continue;
    if (!low.has_value() || !up.has_value()) {
      indeterminate = true;
      continue;
    }
    return Membership::Out;  // both disjuncts decided false
  }
  return indeterminate ? Membership::Indeterminate : Membership::In;
}

namespace {

// Prefix function (KMP failure) of the word w.
std::vector<int> prefix_function(const std::vector<uint8_t>& w) {
  std::vector<int> pi(w.size(), 0);
  for (size_t i = 1; i < w.size(); ++i) {
    int j = pi[i - 1];
    while (j > 0 && w[i] != w[size_t(j)]) j = pi[size_t(j) - 1];
    if (w[i] == w[size_t(j)]) ++j;
    pi[i] = j;
  }
  return pi;
}

int automaton_step(const std::vector<uint8_t>& w, const std::vector<int>& pi,
                   int m, uint8_t c) {
  while (true) {
    if (m < int(w.size()) && w[size_t(m)] == c) return m + 1;
    if (m == 0) return 0;
    m = pi[size_t(m) - 1];
  }
}

}  // namespace

uint64_t count_admissible_words(const SymbolSeq& alpha, const SymbolSeq& beta,
                                int n) {
  if (n < 0 || n > 62)
    throw std::invalid_argument("count_admissible_words: need 0 <= n <= 62");
  if (n == 0) return 1;
  if (!alpha.is_known(size_t(n) - 1) || !beta.is_known(size_t(n) - 1))
    throw std::invalid_argument(
        "count_admissible_words: alpha/beta not determined to depth n");
  std::vector<uint8_t> A = alpha.first_bits(size_t(n));
  std::vector<uint8_t> B = beta.first_bits(size_t(n));
  if (A[0] != 0 || B[0] != 1)
    throw std::invalid_argument(
        "count_admissible_words: need alpha starting 0 and beta starting 1");

  std::vector<int> piA = prefix_function(A), piB = prefix_function(B);

  // A suffix that is a live prefix-match of alpha dies fatally when extended
  // above alpha (it starts with 0, hence lies strictly below beta forever);
  // kill1[m] says whether appending 1 to a length-m alpha-match chain does
  // that. Symmetric for beta with appended 0.
  std::vector<uint8_t> kill1A(size_t(n) + 1, 0), kill0B(size_t(n) + 1, 0);
  for (int m = 1; m <= n; ++m) {
    for (int mm = m; mm >= 1; mm = piA[size_t(mm) - 1]) {
      if (mm < n && A[size_t(mm)] == 0) {
        kill1A[size_t(m)] = 1;
        break;
      }
    }
    for (int mm = m; mm >= 1; mm = piB[size_t(mm) - 1]) {
      if (mm < n && B[size_t(mm)] == 1) {
        kill0B[size_t(m)] = 1;
        break;
      }
    }
  }

  // DP over (longest alpha-match, longest beta-match); the border chains of
  // those maxima are exactly the live suffix matches.
  size_t states = size_t(n) + 1;
  std::vector<uint64_t> dp(states * states, 0), next(states * states, 0);
  dp[0] = 1;
  for (int t = 0; t < n; ++t) {
    std::fill(next.begin(), next.end(), 0);
    for (size_t mA = 0; mA < states; ++mA) {
      for (size_t mB = 0; mB < states; ++mB) {
        uint64_t c = dp[mA * states + mB];
        if (c == 0) continue;
        for (uint8_t bit : {uint8_t(0), uint8_t(1)}) {
          if (bit == 1 && kill1A[mA]) continue;
          if (bit == 0 && kill0B[mB]) continue;
          size_t nA = size_t(automaton_step(A, piA, int(mA), bit));
          size_t nB = size_t(automaton_step(B, piB, int(mB), bit));
          next[nA * states + nB] += c;
        }
      }
    }
    dp.swap(next);
  }
  uint64_t total = 0;
  for (uint64_t c : dp) total += c;
  return total;
}

XiExtremes xi_extremes(const std::function<int(int)>& bit_source, int horizon) {
  if (horizon < 1) throw std::invalid_argument("xi_extremes: need horizon >= 1");
  std::vector<uint8_t> bits(static_cast<size_t>(horizon), 0);
  for (int k = 0; k < horizon; ++k) {
    int b = bit_source(k);
    if (b != 0 && b != 1)
      throw std::invalid_argument("xi_extremes: source must emit 0/1");
    bits[size_t(k)] = uint8_t(b);
  }

  // A shift whose known bits beyond index 0 are all zero (at least one such
  // zero observed) is taken to continue with zeros forever, per the
  // unbounded-0-run convention; otherwise it stays a truncated sequence.
  auto candidate = [&](int j) {
    std::vector<uint8_t> suf(bits.begin() + j, bits.end());
    bool zero_run = suf.size() >= 2;
    for (size_t i = 1; i < suf.size(); ++i)
      if (suf[i] != 0) {
        zero_run = false;
        break;
      }
    if (zero_run)
      return SymbolSeq::eventually_periodic({suf[0]}, {0});
    return SymbolSeq::truncated(std::move(suf));
  };

  XiExtremes out;
  for (int j = 0; j < horizon; ++j) {
    SymbolSeq cand = candidate(j);
    if (bits[size_t(j)] == 0) {
      if (!out.alpha || compare(*out.alpha, cand) == Ordering::Less)
        out.alpha = cand;
    } else {
      if (!out.beta || compare(cand, *out.beta) == Ordering::Less)
        out.beta = cand;
    }
  }
  return out;
}

}  // namespace ifsconj
