#pragma once

#include <cstdint>

#include "omegalab/dyadic.hpp"
#include "omegalab/evolution.hpp"
#include "omegalab/oracle.hpp"
#include "omegalab/rng.hpp"

namespace omegalab {

// Two families of quantum organisms distinguished by how fast the scale of a
// step shrinks: separable organisms move like classical ones (2^-k), while
// maximally entangled organisms move at the scale their circuit descriptions
// grow (2^-(k*2^k)).
enum class QuantumRegime { Separable, Entangled };

const char* regime_name(QuantumRegime regime);

// k for Separable, k * 2^k for Entangled.  Throws GuardError once k * 2^k
// would leave the representable exponent range (k > 57).
std::int64_t step_exponent(QuantumRegime regime, std::int64_t k);

inline constexpr unsigned kEntangledMaxN = 24;
inline constexpr unsigned kQExhaustiveSimulateMaxN = 4;
inline constexpr unsigned kQExhaustiveAnalyticMaxN = 16;
inline constexpr unsigned kQCumulativeSimulateMaxN = 14;
inline constexpr unsigned kQCumulativeFastForwardMaxN = 22;

struct QOmegaTruncation {
  QuantumRegime regime = QuantumRegime::Separable;
  unsigned n = 0;
  SparseDyadic value;  // sum over 1 <= j < n of 2^-step_exponent(j)
};

// Exact truncation value; Entangled regime guarded at n <= 24.
QOmegaTruncation q_omega_truncation(QuantumRegime regime, unsigned n);

// Self-delimiting size of the integer 2^k, the name of the k-th entangled
// mutation; equals k + 2*ceil(log2(k+2)) + 2.
unsigned q_mutation_complexity(unsigned k);

// 2^-q_mutation_complexity(k), exact.
SparseDyadic q_mutation_probability(unsigned k);

// Proposes value + 2^-step_exponent(k); Separable reduces exactly to the
// classical attempt_mutation.
bool attempt_q_mutation(EvolutionState& state, std::int64_t k, QuantumRegime regime,
                        const OmegaOracle& oracle);

struct QExhaustiveResult {
  bool analytic = false;
  std::uint64_t t = 0;             // valid when !analytic
  double analytic_mantissa = 0.0;  // expected count = mantissa * 2^exp2
  std::uint64_t analytic_exp2 = 0;
};

// Candidate bit-strings cover a window of M = 2^n_qubits bits.  Simulated
// for n_qubits <= 4; for 5..16 returns the expected count 1.5 * 2^M with the
// analytic flag set.
QExhaustiveResult run_q_exhaustive(unsigned n_qubits, const OmegaOracle& oracle);

// Mutations k = 1..n in order; exactly n attempts in either regime.
IdTrace run_q_intelligent_design(unsigned n, QuantumRegime regime, const OmegaOracle& oracle);

// Random walk over quantum mutations.  Separable delegates to the classical
// cumulative runner (identical traces for equal seeds).  Entangled draws the
// mutation name 2^k through the prefix-free integer coder (non-powers-of-two
// are rejected and do not count as attempts) and stops when every mutation
// k <= n has either been accepted or is refused by the oracle.
CumulativeResult run_q_cumulative(unsigned n, QuantumRegime regime, const OmegaOracle& oracle,
                                  Rng& sampler, CumulativeMode mode);

}  // namespace omegalab
