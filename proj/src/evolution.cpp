#include "omegalab/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "omegalab/errors.hpp"
#include "omegalab/prefix_code.hpp"

namespace omegalab {

BitString organism_header() {
  BitString h;
  for (int i = 7; i >= 0; --i) h.push_back((kOrganismHeaderByte >> i) & 1);
  return h;
}

BitString organism_encode(const SparseDyadic& value, std::int64_t n_bits) {
  BitString out = organism_header();
  for (std::int64_t i = 0; i < n_bits; ++i) out.push_back(1);
  out.push_back(0);
  out.append(value.prefix_bits(n_bits));
  return out;
}

std::optional<BitString> organism_decode(const BitString& encoded) {
  BitString header = organism_header();
  if (encoded.size() < header.size() + 1) return std::nullopt;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (encoded[i] != header[i]) return std::nullopt;
  }
  std::size_t pos = header.size();
  std::size_t n = 0;
  while (pos < encoded.size() && encoded[pos] == 1) {
    ++n;
    ++pos;
  }
  if (pos >= encoded.size()) return std::nullopt;  // missing unary terminator
  ++pos;                                           // the 0 separator
  if (encoded.size() - pos != n) return std::nullopt;
  BitString payload;
  for (; pos < encoded.size(); ++pos) payload.push_back(encoded[pos]);
  return payload;
}

BitString mutate_point(const BitString& x, std::size_t n0) {
  if (n0 < 1 || n0 > x.size()) throw std::out_of_range("mutate_point: index out of range");
  BitString out = x;
  out.flip(n0 - 1);
  return out;
}

BitString mutate_bitwise(const BitString& x) {
  BitString out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out.flip(i);
  return out;
}

bool attempt_mutation(EvolutionState& state, std::int64_t k, const OmegaOracle& oracle) {
  if (k < 1) throw std::invalid_argument("attempt_mutation: k must be >= 1");
  QueryResult q = oracle.query_plus_power(state.value, k);
  if (q == QueryResult::Unknown) {
    throw OracleUnknownError("attempt_mutation: oracle cannot decide proposal at k=" +
                             std::to_string(k));
  }
  ++state.attempts;
  if (q == QueryResult::Below) {
    state.value = add_power(state.value, k);
    ++state.accepted;
    return true;
  }
  return false;
}

std::uint64_t run_exhaustive(unsigned n, const OmegaOracle& oracle) {
  if (n < 1 || n > kExhaustiveMaxN) {
    throw GuardError("run_exhaustive: n out of range [1, " + std::to_string(kExhaustiveMaxN) +
                     "]");
  }
  BitString target = oracle.true_bits(n);
  std::uint64_t target_value = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    target_value = (target_value << 1) | static_cast<std::uint64_t>(target[i]);
  }
  // Candidates shorter than n (the empty string included) can never match an
  // n-bit target; they are tested and counted in one block.
  std::uint64_t t = (std::uint64_t{1} << n) - 1;
  // Within the length-n block, lexicographic order is numeric order.
  for (std::uint64_t candidate = 0;; ++candidate) {
    ++t;
    if (candidate == target_value) return t;
  }
}

IdTrace run_intelligent_design(unsigned n, const OmegaOracle& oracle) {
  if (n < 1) throw GuardError("run_intelligent_design: n must be >= 1");
  IdTrace trace;
  trace.steps.reserve(n);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n); ++k) {
    bool accepted = attempt_mutation(trace.final_state, k, oracle);
    trace.steps.push_back(IdStep{k, accepted, k});
  }
  return trace;
}

std::vector<double> integer_sampler_weights(std::int64_t k_max) {
  std::vector<double> w(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (std::int64_t k = 1; k <= k_max; ++k) {
    w[static_cast<std::size_t>(k)] =
        std::ldexp(1.0, -static_cast<int>(encode_integer_size(static_cast<std::uint64_t>(k))));
  }
  return w;
}

namespace {

// Number of Bernoulli(p) trials up to and including the first success.
std::uint64_t geometric_wait(Rng& rng, double p) {
  if (p >= 1.0) return 1;
  if (p <= 0.0) throw CapExceededError("geometric_wait: zero acceptance probability");
  double u = rng.next_unit();
  double g = std::floor(std::log(u) / std::log1p(-p));
  if (!(g >= 0.0) || g > 4.6e18) {
    throw CapExceededError("geometric_wait: waiting time beyond representable range");
  }
  return static_cast<std::uint64_t>(g) + 1;
}

bool prefix_matches(const SparseDyadic& value, const BitString& target) {
  return value.prefix_bits(static_cast<std::int64_t>(target.size())) == target;
}

}  // namespace

CumulativeResult run_cumulative(unsigned n, const OmegaOracle& oracle, Rng& sampler,
                                CumulativeMode mode) {
  if (n < 1) throw GuardError("run_cumulative: n must be >= 1");
  if (mode == CumulativeMode::Simulate && n > kCumulativeSimulateMaxN) {
    throw GuardError("run_cumulative: simulate mode capped at n = " +
                     std::to_string(kCumulativeSimulateMaxN));
  }
  if (mode == CumulativeMode::FastForward && n > kCumulativeFastForwardMaxN) {
    throw GuardError("run_cumulative: fast_forward mode capped at n = " +
                     std::to_string(kCumulativeFastForwardMaxN));
  }

  const std::int64_t k_max = static_cast<std::int64_t>(n) + 64;
  const BitString target = oracle.true_bits(n);
  CumulativeResult out;
  if (prefix_matches(out.final_state.value, target)) return out;  // all-zero prefix

  if (mode == CumulativeMode::Simulate) {
    EvolutionState& state = out.final_state;
    for (;;) {
      if (state.attempts >= kCumulativeAttemptGuard) {
        throw CapExceededError("run_cumulative: attempt guard exceeded");
      }
      std::uint64_t k = sample_integer(sampler);
      if (k < 1 || k > static_cast<std::uint64_t>(k_max)) continue;  // redraw, not an attempt
      bool accepted = attempt_mutation(state, static_cast<std::int64_t>(k), oracle);
      if (accepted) {
        out.accepted_sequence.push_back(static_cast<std::int64_t>(k));
        if (prefix_matches(state.value, target)) break;
      }
    }
    out.t = state.attempts;
    return out;
  }

  // Fast-forward: the per-attempt acceptance probability is constant between
  // acceptances, so the wait is geometric and the accepted index is drawn
  // from the acceptance set directly.
  const std::vector<double> weights = integer_sampler_weights(k_max);
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;

  EvolutionState& state = out.final_state;
  std::vector<std::int64_t> acceptable;
  for (;;) {
    acceptable.clear();
    double acc_weight = 0.0;
    for (std::int64_t k = 1; k <= k_max; ++k) {
      QueryResult q = oracle.query_plus_power(state.value, k);
      if (q == QueryResult::Unknown) {
        throw OracleUnknownError("run_cumulative: oracle cannot decide proposal at k=" +
                                 std::to_string(k));
      }
      if (q == QueryResult::Below) {
        acceptable.push_back(k);
        acc_weight += weights[static_cast<std::size_t>(k)];
      }
    }
    std::uint64_t wait = geometric_wait(sampler, acc_weight / total_weight);
    if (state.attempts > kCumulativeAttemptGuard ||
        wait > kCumulativeAttemptGuard * 16 - state.attempts) {
      throw CapExceededError("run_cumulative: fast-forward wait beyond guard");
    }
    state.attempts += wait;
    double pick = sampler.next_unit() * acc_weight;
    std::int64_t chosen = acceptable.back();
    for (std::int64_t k : acceptable) {
      pick -= weights[static_cast<std::size_t>(k)];
      if (pick <= 0.0) {
        chosen = k;
        break;
      }
    }
    state.value = add_power(state.value, chosen);
    ++state.accepted;
    out.accepted_sequence.push_back(chosen);
    if (prefix_matches(state.value, target)) break;
  }
  out.t = state.attempts;
  return out;
}

}  // namespace omegalab
