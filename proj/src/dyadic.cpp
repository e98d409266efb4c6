#include "omegalab/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace omegalab {

namespace {

// Integer part as exponents: bit b of n contributes 2^b = 2^(-(-b)).
void append_integer_exponents(std::uint64_t n, std::vector<std::int64_t>* exps) {
  while (n != 0) {
    int b = std::countr_zero(n);
    exps->push_back(-static_cast<std::int64_t>(b));
    n &= n - 1;
  }
}

}  // namespace

SparseDyadic::SparseDyadic(std::uint64_t integer_part,
                           std::initializer_list<std::int64_t> fraction_exponents)
    : SparseDyadic(from_parts(integer_part, std::vector<std::int64_t>(fraction_exponents))) {}

SparseDyadic SparseDyadic::from_parts(std::uint64_t integer_part,
                                      const std::vector<std::int64_t>& fraction_exponents) {
  SparseDyadic v;
  append_integer_exponents(integer_part, &v.exps_);
  std::sort(v.exps_.begin(), v.exps_.end());
  for (std::size_t i = 0; i < fraction_exponents.size(); ++i) {
    std::int64_t e = fraction_exponents[i];
    if (e < 1) throw std::invalid_argument("SparseDyadic: fractional exponent must be >= 1");
    if (i > 0 && fraction_exponents[i - 1] >= e) {
      throw std::invalid_argument("SparseDyadic: exponents must be strictly increasing");
    }
    v.exps_.push_back(e);
  }
  return v;
}

std::uint64_t SparseDyadic::integer_part() const {
  std::uint64_t n = 0;
  for (std::int64_t e : exps_) {
    if (e >= 1) break;
    std::int64_t b = -e;
    if (b >= 64) throw std::overflow_error("SparseDyadic: integer part exceeds 64 bits");
    n |= (std::uint64_t{1} << b);
  }
  return n;
}

std::vector<std::int64_t> SparseDyadic::fraction_exponents() const {
  std::vector<std::int64_t> out;
  for (std::int64_t e : exps_) {
    if (e >= 1) out.push_back(e);
  }
  return out;
}

std::int64_t SparseDyadic::max_fraction_exponent() const {
  if (exps_.empty() || exps_.back() < 1) return 0;
  return exps_.back();
}

int SparseDyadic::bit_at(std::int64_t i) const {
  return std::binary_search(exps_.begin(), exps_.end(), i) ? 1 : 0;
}

BitString SparseDyadic::prefix_bits(std::int64_t n) const {
  BitString out = BitString::zeros(static_cast<std::size_t>(n));
  auto it = std::lower_bound(exps_.begin(), exps_.end(), std::int64_t{1});
  for (; it != exps_.end() && *it <= n; ++it) {
    out.set(static_cast<std::size_t>(*it - 1), 1);
  }
  return out;
}

std::string SparseDyadic::str() const {
  std::string out = std::to_string(integer_part());
  out += ".{";
  bool first = true;
  for (std::int64_t e : exps_) {
    if (e < 1) continue;
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

double SparseDyadic::to_double() const {
  double total = 0.0;
  for (std::int64_t e : exps_) total += std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(e, 1100)));
  return total;
}

SparseDyadic add_power(const SparseDyadic& v, std::int64_t e) {
  if (e < 1) throw std::invalid_argument("add_power: exponent must be >= 1");
  SparseDyadic out = v;
  auto& exps = out.exps_;
  // Carry chain: while 2^(-e) is already present, merging doubles it.
  auto it = std::lower_bound(exps.begin(), exps.end(), e);
  while (it != exps.end() && *it == e) {
    it = exps.erase(it);
    --e;
    it = std::lower_bound(exps.begin(), it, e);
  }
  exps.insert(it, e);
  return out;
}

Ordering compare(const SparseDyadic& v, const SparseDyadic& w) {
  // Canonical forms compare like bit streams read most-significant first:
  // at the first position where the exponent lists differ, the value holding
  // the smaller exponent (bigger power of two) is greater.
  const auto& a = v.exps_;
  const auto& b = w.exps_;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Greater : Ordering::Less;
  }
  if (a.size() == b.size()) return Ordering::Equal;
  return a.size() > b.size() ? Ordering::Greater : Ordering::Less;
}

}  // namespace omegalab
