#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ifsconj {

// A point of binary code space, known either completely (eventually periodic)
// or up to a finite truncation depth. Canonical form: periodic sequences carry
// the minimal period and the shortest prefix (the prefix is absorbed into the
// tail as far as possible), so structural equality decides Equal.
class SymbolSeq {
 public:
  // Truncated sequence: bits known on [0, bits.size()), nothing beyond.
  // Requires at least one known bit.
  static SymbolSeq truncated(std::vector<uint8_t> bits);
  // prefix then period repeated forever; period must be nonempty.
  static SymbolSeq eventually_periodic(std::vector<uint8_t> prefix,
                                       std::vector<uint8_t> period);
  static SymbolSeq zero_bar();  // 000...
  static SymbolSeq one_bar();   // 111...

  bool periodic() const { return !period_.empty(); }
  // Number of leading bits that are known. SIZE_MAX when periodic.
  size_t known_length() const;
  bool is_known(size_t k) const { return k < known_length(); }
  uint8_t operator[](size_t k) const;

  const std::vector<uint8_t>& prefix() const { return prefix_; }
  const std::vector<uint8_t>& period() const { return period_; }

  // Left shift S (drop the head bit). A truncated sequence must have at
  // least 2 known bits.
  SymbolSeq shifted() const;
  SymbolSeq shifted(size_t k) const;
  // s_i(sigma) = i sigma.
  SymbolSeq prepended(uint8_t bit) const;
  // Replaces an Unknown tail by 0-bar (used by the truncated-sum convention).
  SymbolSeq with_zero_tail() const;

  // First n bits (requires n <= known_length()).
  std::vector<uint8_t> first_bits(size_t n) const;

  // "01101" for truncated, "01(10)" for eventually periodic.
  std::string str() const;
  static std::optional<SymbolSeq> parse(std::string_view text);

  bool identical(const SymbolSeq& other) const {
    return prefix_ == other.prefix_ && period_ == other.period_;
  }

 private:
  SymbolSeq() = default;
  std::vector<uint8_t> prefix_;
  std::vector<uint8_t> period_;  // empty <=> truncated (Unknown tail)
};

enum class Ordering { Less, Equal, Greater, UnknownBeyondN };

// Lexicographic order at the first differing bit. Equal only when both are
// fully determined and identical; UnknownBeyondN when the known bits agree
// but at least one side is truncated.
Ordering compare(const SymbolSeq& s, const SymbolSeq& t);

// Convenience three-valued predicates (true / false / nullopt = unknown).
std::optional<bool> definitely_leq(const SymbolSeq& s, const SymbolSeq& t);
std::optional<bool> definitely_less(const SymbolSeq& s, const SymbolSeq& t);

struct CantorValue {
  double value = 0;
  double tail_bound = 0;  // 3^-N for a truncation at depth N; 0 if periodic
};

// Order isomorphism onto the standard Cantor set: sum 2 sigma_k / 3^(k+1).
CantorValue cantor_value(const SymbolSeq& s);

}  // namespace ifsconj
