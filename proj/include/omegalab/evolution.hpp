#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omegalab/bitstring.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/oracle.hpp"
#include "omegalab/rng.hpp"

namespace omegalab {

// Opaque stand-in for the organism's fitness-reading routine; a fixed 8-bit
// header token, not executable in this simulation.
inline constexpr std::uint8_t kOrganismHeaderByte = 0xA5;
BitString organism_header();

// header || 1^n 0 || payload, with payload = the first n fraction bits of
// the state's value.
BitString organism_encode(const SparseDyadic& value, std::int64_t n_bits);

// Recovers the payload; nullopt on a malformed header or truncated body.
std::optional<BitString> organism_decode(const BitString& encoded);

// Flips bit n0 (1-based); throws std::out_of_range.
BitString mutate_point(const BitString& x, std::size_t n0);

// Flips every bit.
BitString mutate_bitwise(const BitString& x);

struct EvolutionState {
  SparseDyadic value;
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
};

// Proposes value + 2^-k and keeps it iff the oracle says the proposal is
// still below its number.  Counts one attempt either way.  Throws
// OracleUnknownError if the oracle cannot decide.
bool attempt_mutation(EvolutionState& state, std::int64_t k, const OmegaOracle& oracle);

// Scenario guards.
inline constexpr unsigned kExhaustiveMaxN = 22;
inline constexpr unsigned kCumulativeSimulateMaxN = 512;
inline constexpr unsigned kCumulativeFastForwardMaxN = 4096;
inline constexpr std::uint64_t kCumulativeAttemptGuard = 1'000'000'000;

// Tests candidate payloads in length-then-lexicographic order, the empty
// string first, until one equals the first n true bits.  Returns the number
// of candidates tried; always within [2^n, 2^(n+1) - 1].
std::uint64_t run_exhaustive(unsigned n, const OmegaOracle& oracle);

struct IdStep {
  std::int64_t k = 0;
  bool accepted = false;
  std::int64_t exponent = 0;  // bit position the proposal touched
};

struct IdTrace {
  std::vector<IdStep> steps;
  EvolutionState final_state;
  std::uint64_t t() const { return final_state.attempts; }
};

// Applies mutations k = 1..n in order; exactly n attempts, and after step k
// the value's k-bit prefix equals the oracle's first k bits.
IdTrace run_intelligent_design(unsigned n, const OmegaOracle& oracle);

enum class CumulativeMode { Simulate, FastForward };

struct CumulativeResult {
  std::uint64_t t = 0;
  EvolutionState final_state;
  std::vector<std::int64_t> accepted_sequence;  // mutation indices in acceptance order
};

// Random-walk evolution: draws k with the prefix-free integer coder's
// probability 2^-|encode_integer(k)| restricted to 1 <= k <= n + 64, attempts
// the mutation, and stops once the value's n-bit prefix matches the oracle's.
// FastForward replaces per-attempt simulation with exact geometric waiting
// times over the current acceptance set; the two modes are distributionally
// identical.
CumulativeResult run_cumulative(unsigned n, const OmegaOracle& oracle, Rng& sampler,
                                CumulativeMode mode);

// Sampler weights shared by the runners: w(k) = 2^-|encode_integer(k)|.
std::vector<double> integer_sampler_weights(std::int64_t k_max);

}  // namespace omegalab
