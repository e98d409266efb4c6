#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "omegalab/bitstring.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/toy_machine.hpp"

namespace omegalab {

enum class QueryResult { Below, NotBelow, Unknown };

// Decides whether a candidate value lies strictly below a fixed real number
// in (0,1) held by the oracle.  The fixed number plays the role of the
// fitness ceiling the evolution scenarios climb toward; its bits are exposed
// through true_bits only for measuring scenario success, never to samplers.
class OmegaOracle {
 public:
  virtual ~OmegaOracle() = default;

  virtual QueryResult query(const SparseDyadic& v) const = 0;

  // query(v + 2^-e) without materializing the sum; hot path for runners.
  virtual QueryResult query_plus_power(const SparseDyadic& v, std::int64_t e) const {
    return query(add_power(v, e));
  }

  // First n fractional bits of the oracle's number.
  virtual BitString true_bits(std::int64_t n) const = 0;
};

// Oracle whose number is 0.w1 w2 w3 ... with w_i a keyed deterministic bit
// derived from (seed, i).  Index-addressable with no sequential state, so
// queries can touch bit positions near 1e8 (entangled regime) directly.
// Such a number is non-dyadic except with vanishing probability, so strict
// comparisons never tie.
class RandomOmegaOracle final : public OmegaOracle {
 public:
  explicit RandomOmegaOracle(std::uint64_t seed) : seed_(seed) {}

  int omega_bit(std::int64_t i) const;

  QueryResult query(const SparseDyadic& v) const override;
  QueryResult query_plus_power(const SparseDyadic& v, std::int64_t e) const override;
  BitString true_bits(std::int64_t n) const override;

  std::uint64_t seed() const { return seed_; }

  // Largest fractional bit index that has appeared in any query so far:
  // set bits of submitted values and oracle bits examined.  Diagnostic only.
  std::uint64_t max_index_touched() const { return max_index_.load(std::memory_order_relaxed); }

  // A zero run this long past the last set bit would be needed for a scan to
  // fail; the event has probability 2^-1e6 and is treated as a hard error.
  static constexpr std::int64_t kScanCap = 1'000'000;

 private:
  template <typename NextExp>
  QueryResult query_stream(NextExp next_exp) const;
  void touch(std::uint64_t i) const;

  std::uint64_t seed_;
  mutable std::atomic<std::uint64_t> max_index_{0};
};

// Oracle whose number is the toy machine's true halting probability, known
// only through an enumerated lower bound plus a sound tail bound.  Answers
// are certified: Below/NotBelow only when the enclosing interval decides the
// comparison, Unknown otherwise.
class EnumeratedOmegaOracle final : public OmegaOracle {
 public:
  EnumeratedOmegaOracle(unsigned max_len, std::uint64_t step_budget, unsigned jobs = 1);
  explicit EnumeratedOmegaOracle(const DomainResult& domain);

  const SparseDyadic& lower() const { return lower_; }
  const SparseDyadic& upper() const { return upper_; }

  // Number of leading fraction bits pinned down by [lower, upper].
  std::int64_t certified_bits() const { return certified_bits_; }

  QueryResult query(const SparseDyadic& v) const override;
  BitString true_bits(std::int64_t n) const override;  // throws past certified_bits

 private:
  SparseDyadic lower_;
  SparseDyadic upper_;
  std::int64_t certified_bits_ = 0;
};

}  // namespace omegalab
