#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ifsconj/interval_ifs.hpp"
#include "ifsconj/symbol_seq.hpp"

namespace ifsconj {

// Itinerary tau_M(x): bit k records the mask cell of W^k(x). The affine
// overload runs on exact rationals and detects orbit recurrence (repeated
// exact point), in which case the result carries a periodic tail; otherwise
// the sequence is truncated at n bits.
SymbolSeq itinerary(const AffineIfs& sys, const Mask& mask, const Rational& x,
                    int n);
SymbolSeq itinerary(const GenericIfs& sys, const Mask& mask, double x, int n);

// Kneading pair: alpha = tau(rho) under the LeftClosed mask, beta =
// tau^+(rho) under the RightClosed mask, plus sanity diagnostics
// (alpha begins 01, beta begins 10, S(beta) < alpha < beta < S(alpha));
// failures signal a boundary/degenerate rho rather than throwing.
struct KneadingPair {
  SymbolSeq alpha, beta;
  bool starts_ok = false;       // alpha begins 01 and beta begins 10
  bool chain_ok = false;        // S(beta) < alpha < beta < S(alpha) decided
  bool rho_at_boundary = false; // rho == a or rho == 1-b
};
KneadingPair alpha_beta(const AffineIfs& sys, const Rational& rho, int n);
KneadingPair alpha_beta(const GenericIfs& sys, double rho, int n);

// Address-space membership per the bracket characterization:
//   Omega     uses [0bar, alpha] u (beta, 1bar]
//   OmegaPlus uses [0bar, alpha) u [beta, 1bar]
//   OmegaBar  uses [0bar, alpha] u [beta, 1bar]
// checked for S^k(s), k = 0..depth. Indeterminate when a comparison runs out
// of known bits before deciding.
enum class AddressSpace { Omega, OmegaPlus, OmegaBar };
enum class Membership { In, Out, Indeterminate };

Membership membership(const SymbolSeq& s, const SymbolSeq& alpha,
                      const SymbolSeq& beta, AddressSpace space, int depth);

// Number of length-n binary words whose every suffix u satisfies
// u <= alpha| or u >= beta| (the cylinder form of the OmegaBar bracket
// condition: exactly the words extendable to admissible sequences).
// Computed with a prefix-automaton DP; deterministic. Requires alpha, beta
// known to depth >= n, alpha starting with 0 and beta with 1, and n <= 62.
uint64_t count_admissible_words(const SymbolSeq& alpha, const SymbolSeq& beta,
                                int n);

// Extremal shifts of an observed symbolic orbit: alpha = sup of the shifts
// starting with 0, beta = inf of the shifts starting with 1, both truncated
// at the horizon. Convention for unbounded 0-runs: a candidate whose known
// bits beyond index 0 are all zero (at least one observed) is taken to
// continue with zeros forever, so the inf of e.g. a prime-indicator source's
// 1-shifts becomes exactly 10bar. A side with no candidate is absent.
struct XiExtremes {
  std::optional<SymbolSeq> alpha, beta;
};
XiExtremes xi_extremes(const std::function<int(int)>& bit_source, int horizon);

}  // namespace ifsconj
