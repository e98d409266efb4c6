#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "omegalab/bitstring.hpp"
#include "omegalab/rng.hpp"

namespace omegalab {

// Pure state over n <= 4 qubits; amplitude index bit q holds qubit q's basis
// value (qubit 0 is the least significant bit).
struct StateVector {
  unsigned n = 1;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(unsigned n);
  double norm_sq() const;
};

enum class GateKind : std::uint8_t { H = 0, T = 1, CNOT = 2 };

struct Gate {
  GateKind kind = GateKind::H;
  std::uint8_t target = 0;
  std::uint8_t control = 0;  // CNOT only

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  std::vector<Gate> ops;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

void apply_gate(StateVector& s, const Gate& g);

// Applies gates left to right to |0...0>.
StateVector apply_circuit(const Circuit& c, unsigned n);

// |<a|b>|: global-phase-invariant overlap.
double fidelity(const StateVector& a, const StateVector& b);

struct SynthesisConfig {
  unsigned n = 1;
  double epsilon = 0.01;   // fixed per experiment
  unsigned max_gates = 0;  // 0 picks the per-size default

  static unsigned default_max_gates(unsigned n) { return n <= 2 ? 10 : (n == 3 ? 8 : 6); }
  unsigned effective_max_gates() const { return max_gates ? max_gates : default_max_gates(n); }
};

// Breadth-first exhaustive search over gate sequences from {H, T, CNOT},
// deduplicating states up to global phase; returns a circuit of minimal
// length with |<target|U|0>| >= 1 - epsilon, the lexicographically first
// among that length, or nullopt if none exists within max_gates.
std::optional<Circuit> synthesize(const StateVector& target, const SynthesisConfig& cfg);

// Per gate: 2-bit opcode (00=H, 01=T, 10=CNOT), target index in
// ceil(log2 n) bits, then the control index for CNOT; the body is wrapped
// with the self-delimiting length header so encoded circuits are prefix-free.
BitString encode_circuit(const Circuit& c, unsigned n);
std::optional<Circuit> decode_circuit(const BitString& bits, unsigned n);

// |encode_circuit(synthesize(target))|: an upper bound on the description
// complexity of the state at this precision.
std::optional<unsigned> h_net_upper(const StateVector& target, const SynthesisConfig& cfg);

// Rank of the amplitude matrix reshaped along the bipartition; cut_mask's
// set bits select the qubits on one side (nontrivial, proper subset).
unsigned schmidt_rank(const StateVector& s, std::uint32_t cut_mask);

struct EntanglementReport {
  enum class Class { Product, Entangled, MaxRankAllCuts };
  // (cut mask containing qubit 0, rank), masks ascending.
  std::vector<std::pair<std::uint32_t, unsigned>> ranks;
  Class classification = Class::Product;
  // log2 of the Schmidt rank across the single cut; two-qubit states only.
  std::optional<double> schmidt_measure_2q;
};

EntanglementReport classify_entanglement(const StateVector& s);

// Named reference states and seeded random families.
StateVector plus_state(unsigned n);
StateVector bell_state();
StateVector ghz_state(unsigned n);
StateVector haar_random_state(unsigned n, Rng& rng);
StateVector random_product_state(unsigned n, Rng& rng);

}  // namespace omegalab
