#include "omegalab/oracle.hpp"

#include <algorithm>

#include "omegalab/errors.hpp"

namespace omegalab {

int RandomOmegaOracle::omega_bit(std::int64_t i) const {
  return static_cast<int>(Rng::mix64(seed_ ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i))) & 1u);
}

void RandomOmegaOracle::touch(std::uint64_t i) const {
  std::uint64_t seen = max_index_.load(std::memory_order_relaxed);
  while (i > seen && !max_index_.compare_exchange_weak(seen, i, std::memory_order_relaxed)) {
  }
}

// Compares 0.v1 v2 v3 ... (set bits given by the ascending exponent stream)
// against 0.w1 w2 w3 ...; the first differing position decides.  If the
// streams agree through the last set exponent, the value's tail is all zeros
// and the scan looks for the next 1 bit of w.
template <typename NextExp>
QueryResult RandomOmegaOracle::query_stream(NextExp next_exp) const {
  std::int64_t prev = 0;
  std::uint64_t local_max = 0;
  auto examine = [&](std::int64_t i) {
    local_max = std::max<std::uint64_t>(local_max, static_cast<std::uint64_t>(i));
    return omega_bit(i);
  };
  for (std::optional<std::int64_t> e = next_exp(); e; e = next_exp()) {
    for (std::int64_t g = prev + 1; g < *e; ++g) {
      if (examine(g) == 1) {
        touch(local_max);
        return QueryResult::Below;  // value has 0, oracle number has 1
      }
    }
    if (examine(*e) == 0) {
      touch(local_max);
      return QueryResult::NotBelow;  // value has 1, oracle number has 0
    }
    prev = *e;
  }
  for (std::int64_t g = prev + 1; g <= prev + kScanCap; ++g) {
    if (examine(g) == 1) {
      touch(local_max);
      return QueryResult::Below;
    }
  }
  touch(local_max);
  throw CapExceededError("RandomOmegaOracle: no 1 bit within scan cap past index " +
                         std::to_string(prev));
}

QueryResult RandomOmegaOracle::query(const SparseDyadic& v) const {
  const auto& exps = v.all_exponents();
  if (!exps.empty() && exps.front() < 1) return QueryResult::NotBelow;  // v >= 1 > omega
  touch(static_cast<std::uint64_t>(v.max_fraction_exponent()));
  std::size_t i = 0;
  auto next = [&]() -> std::optional<std::int64_t> {
    if (i >= exps.size()) return std::nullopt;
    return exps[i++];
  };
  return query_stream(next);
}

QueryResult RandomOmegaOracle::query_plus_power(const SparseDyadic& v, std::int64_t e) const {
  if (v.bit_at(e)) return query(add_power(v, e));  // carry chain: materialize
  const auto& exps = v.all_exponents();
  if (!exps.empty() && exps.front() < 1) return QueryResult::NotBelow;
  touch(static_cast<std::uint64_t>(std::max(v.max_fraction_exponent(), e)));
  std::size_t i = 0;
  bool extra_pending = true;
  auto next = [&]() -> std::optional<std::int64_t> {
    if (extra_pending && (i >= exps.size() || e < exps[i])) {
      extra_pending = false;
      return e;
    }
    if (i >= exps.size()) return std::nullopt;
    return exps[i++];
  };
  return query_stream(next);
}

BitString RandomOmegaOracle::true_bits(std::int64_t n) const {
  BitString out;
  for (std::int64_t i = 1; i <= n; ++i) out.push_back(omega_bit(i));
  return out;
}

namespace {

SparseDyadic add_tail(const SparseDyadic& lower, const std::vector<std::uint64_t>& lengths) {
  SparseDyadic upper = lower;
  for (std::uint64_t len : lengths) {
    if (len == 0) return SparseDyadic::one();  // root unresolved: no information at all
    upper = add_power(upper, static_cast<std::int64_t>(len));
  }
  return upper;
}

std::int64_t count_certified_bits(const SparseDyadic& lower, const SparseDyadic& upper) {
  if (lower == upper) return 0;
  if (upper == SparseDyadic::one()) {
    // Interval [lower, 1): bit i is pinned only while lower's bits are all 1.
    std::int64_t i = 1;
    while (lower.bit_at(i) == 1) ++i;
    return i - 1;
  }
  // First fractional position where the two expansions differ.
  auto a = lower.fraction_exponents();
  auto b = upper.fraction_exponents();
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  std::int64_t first_diff;
  if (i < a.size() && i < b.size()) {
    first_diff = std::min(a[i], b[i]);
  } else if (i < a.size()) {
    first_diff = a[i];
  } else if (i < b.size()) {
    first_diff = b[i];
  } else {
    return 0;  // equal fractions (unreachable: lower < upper)
  }
  return first_diff - 1;
}

}  // namespace

EnumeratedOmegaOracle::EnumeratedOmegaOracle(const DomainResult& domain)
    : lower_(omega_lower_bound(domain)),
      upper_(add_tail(lower_, domain.unresolved_prefix_lengths)),
      certified_bits_(count_certified_bits(lower_, upper_)) {}

EnumeratedOmegaOracle::EnumeratedOmegaOracle(unsigned max_len, std::uint64_t step_budget,
                                             unsigned jobs)
    : EnumeratedOmegaOracle(enumerate_domain(max_len, step_budget, jobs)) {}

QueryResult EnumeratedOmegaOracle::query(const SparseDyadic& v) const {
  if (compare(v, lower_) == Ordering::Less) return QueryResult::Below;
  if (compare(v, upper_) != Ordering::Less) return QueryResult::NotBelow;
  return QueryResult::Unknown;
}

BitString EnumeratedOmegaOracle::true_bits(std::int64_t n) const {
  if (n > certified_bits_) {
    throw OracleUnknownError("EnumeratedOmegaOracle: only " + std::to_string(certified_bits_) +
                             " bits certified, " + std::to_string(n) + " requested");
  }
  return lower_.prefix_bits(n);
}

}  // namespace omegalab
