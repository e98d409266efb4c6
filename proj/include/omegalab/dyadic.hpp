#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "omegalab/bitstring.hpp"

namespace omegalab {

enum class Ordering { Less, Equal, Greater };

// Exact nonnegative dyadic rational stored as a sparse set of exponents:
//
//   value = sum over e in exps of 2^(-e)
//
// with exps strictly increasing and distinct (canonical form).  Exponents
// e >= 1 are fractional bits; e <= 0 carry the integer part, so carries out
// of the fraction need no special case.  Exponents may be astronomically
// large (~1e8 and beyond) without materializing dense bit arrays, which is
// what makes entangled-regime values representable at all.
class SparseDyadic {
 public:
  SparseDyadic() = default;  // zero

  SparseDyadic(std::uint64_t integer_part, std::initializer_list<std::int64_t> fraction_exponents);

  // Validates: every fractional exponent >= 1, strictly increasing.
  static SparseDyadic from_parts(std::uint64_t integer_part,
                                 const std::vector<std::int64_t>& fraction_exponents);
  static SparseDyadic one() { return SparseDyadic(1, {}); }

  bool is_zero() const { return exps_.empty(); }

  // Throws if the integer part does not fit in 64 bits (never reached by the
  // model, which only ever adds fractional powers).
  std::uint64_t integer_part() const;

  std::vector<std::int64_t> fraction_exponents() const;

  // Largest fractional exponent present, 0 if the fraction is empty.
  std::int64_t max_fraction_exponent() const;

  // Bit i (i >= 1) of the fractional expansion.
  int bit_at(std::int64_t i) const;

  // Bits 1..n of the fractional expansion as a string.
  BitString prefix_bits(std::int64_t n) const;

  // Canonical text form "int.{e1,e2,...}", e.g. "0.{1,3}".
  std::string str() const;

  // Lossy value for logging and fitting; +inf is never produced (values in
  // this model stay below ~2^64).
  double to_double() const;

  // Raw signed exponent view (ascending; e <= 0 are integer bits).
  const std::vector<std::int64_t>& all_exponents() const { return exps_; }

  friend bool operator==(const SparseDyadic&, const SparseDyadic&) = default;

 private:
  friend SparseDyadic add_power(const SparseDyadic& v, std::int64_t e);
  friend Ordering compare(const SparseDyadic& v, const SparseDyadic& w);
  std::vector<std::int64_t> exps_;
};

// v + 2^(-e) in canonical form, e >= 1.  Two copies of 2^(-e) carry into
// 2^(-(e-1)) and the chain may cascade into the integer part.
SparseDyadic add_power(const SparseDyadic& v, std::int64_t e);

// Total order on values.  Runs in time proportional to the stored exponent
// counts, independent of exponent magnitude.
Ordering compare(const SparseDyadic& v, const SparseDyadic& w);

inline bool operator<(const SparseDyadic& a, const SparseDyadic& b) {
  return compare(a, b) == Ordering::Less;
}
inline bool operator>(const SparseDyadic& a, const SparseDyadic& b) {
  return compare(a, b) == Ordering::Greater;
}
inline bool operator<=(const SparseDyadic& a, const SparseDyadic& b) {
  return compare(a, b) != Ordering::Greater;
}
inline bool operator>=(const SparseDyadic& a, const SparseDyadic& b) {
  return compare(a, b) != Ordering::Less;
}

}  // namespace omegalab
