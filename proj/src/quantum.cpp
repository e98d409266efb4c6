#include "omegalab/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "omegalab/errors.hpp"
#include "omegalab/prefix_code.hpp"

namespace omegalab {

const char* regime_name(QuantumRegime regime) {
  return regime == QuantumRegime::Separable ? "separable" : "entangled";
}

std::int64_t step_exponent(QuantumRegime regime, std::int64_t k) {
  if (k < 1) throw GuardError("step_exponent: k must be >= 1");
  if (regime == QuantumRegime::Separable) return k;
  if (k > 57) throw GuardError("step_exponent: entangled exponent k*2^k overflows past k=57");
  return k * (std::int64_t{1} << k);
}

QOmegaTruncation q_omega_truncation(QuantumRegime regime, unsigned n) {
  if (n < 1) throw GuardError("q_omega_truncation: n must be >= 1");
  if (regime == QuantumRegime::Entangled && n > kEntangledMaxN) {
    throw GuardError("q_omega_truncation: entangled regime capped at n = " +
                     std::to_string(kEntangledMaxN));
  }
  QOmegaTruncation out;
  out.regime = regime;
  out.n = n;
  for (std::int64_t j = 1; j < static_cast<std::int64_t>(n); ++j) {
    out.value = add_power(out.value, step_exponent(regime, j));
  }
  return out;
}

unsigned q_mutation_complexity(unsigned k) {
  if (k < 1 || k > 57) throw GuardError("q_mutation_complexity: k out of range [1, 57]");
  return static_cast<unsigned>(encode_integer_size(std::uint64_t{1} << k));
}

SparseDyadic q_mutation_probability(unsigned k) {
  return add_power(SparseDyadic{}, q_mutation_complexity(k));
}

bool attempt_q_mutation(EvolutionState& state, std::int64_t k, QuantumRegime regime,
                        const OmegaOracle& oracle) {
  return attempt_mutation(state, step_exponent(regime, k), oracle);
}

QExhaustiveResult run_q_exhaustive(unsigned n_qubits, const OmegaOracle& oracle) {
  if (n_qubits < 1 || n_qubits > kQExhaustiveAnalyticMaxN) {
    throw GuardError("run_q_exhaustive: n out of range [1, " +
                     std::to_string(kQExhaustiveAnalyticMaxN) + "]");
  }
  const std::uint64_t window = std::uint64_t{1} << n_qubits;  // M = 2^n
  QExhaustiveResult out;
  if (n_qubits > kQExhaustiveSimulateMaxN) {
    // Expected position of a uniform target in the shortlex enumeration of
    // all strings up to length M.
    out.analytic = true;
    out.analytic_mantissa = 1.5;
    out.analytic_exp2 = window;
    return out;
  }
  out.t = run_exhaustive(static_cast<unsigned>(window), oracle);
  return out;
}

IdTrace run_q_intelligent_design(unsigned n, QuantumRegime regime, const OmegaOracle& oracle) {
  if (n < 1) throw GuardError("run_q_intelligent_design: n must be >= 1");
  if (regime == QuantumRegime::Entangled && n > kEntangledMaxN) {
    throw GuardError("run_q_intelligent_design: entangled regime capped at n = " +
                     std::to_string(kEntangledMaxN));
  }
  IdTrace trace;
  trace.steps.reserve(n);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n); ++k) {
    std::int64_t e = step_exponent(regime, k);
    bool accepted = attempt_q_mutation(trace.final_state, k, regime, oracle);
    trace.steps.push_back(IdStep{k, accepted, e});
  }
  return trace;
}

namespace {

// Entangled success rule: every mutation k <= n has been accepted at some
// point or its proposal is refused by the oracle at the current value.
class MutationLedger {
 public:
  MutationLedger(unsigned n, QuantumRegime regime) : regime_(regime) {
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n); ++k) pending_.push_back(k);
  }

  // Refresh refusals against the current value; returns true when done.
  bool settled(const EvolutionState& state, const OmegaOracle& oracle) {
    auto it = pending_.begin();
    while (it != pending_.end()) {
      QueryResult q = oracle.query_plus_power(state.value, step_exponent(regime_, *it));
      if (q == QueryResult::Unknown) {
        throw OracleUnknownError("run_q_cumulative: oracle cannot decide mutation k=" +
                                 std::to_string(*it));
      }
      if (q == QueryResult::NotBelow) {
        it = pending_.erase(it);  // permanently refused: value only grows
      } else {
        ++it;
      }
    }
    return pending_.empty();
  }

  void mark_accepted(std::int64_t k) {
    auto it = std::find(pending_.begin(), pending_.end(), k);
    if (it != pending_.end()) pending_.erase(it);
  }

 private:
  QuantumRegime regime_;
  std::vector<std::int64_t> pending_;
};

}  // namespace

CumulativeResult run_q_cumulative(unsigned n, QuantumRegime regime, const OmegaOracle& oracle,
                                  Rng& sampler, CumulativeMode mode) {
  if (regime == QuantumRegime::Separable) {
    return run_cumulative(n, oracle, sampler, mode);
  }
  if (n < 1) throw GuardError("run_q_cumulative: n must be >= 1");
  if (mode == CumulativeMode::Simulate && n > kQCumulativeSimulateMaxN) {
    throw GuardError("run_q_cumulative: simulate mode capped at n = " +
                     std::to_string(kQCumulativeSimulateMaxN));
  }
  if (mode == CumulativeMode::FastForward && n > kQCumulativeFastForwardMaxN) {
    throw GuardError("run_q_cumulative: fast_forward mode capped at n = " +
                     std::to_string(kQCumulativeFastForwardMaxN));
  }

  // Cap on sampled mutation indices: step exponents must stay representable.
  const std::int64_t k_max = std::min<std::int64_t>(static_cast<std::int64_t>(n) + 64, 57);

  CumulativeResult out;
  EvolutionState& state = out.final_state;
  MutationLedger ledger(n, regime);
  if (ledger.settled(state, oracle)) return out;

  if (mode == CumulativeMode::Simulate) {
    for (;;) {
      if (state.attempts >= kCumulativeAttemptGuard) {
        throw CapExceededError("run_q_cumulative: attempt guard exceeded");
      }
      std::uint64_t name = sample_integer(sampler);
      if (name < 2 || !std::has_single_bit(name)) continue;  // not a mutation name
      std::int64_t k = std::bit_width(name) - 1;
      if (k > k_max) continue;
      bool accepted = attempt_q_mutation(state, k, regime, oracle);
      if (accepted) {
        out.accepted_sequence.push_back(k);
        ledger.mark_accepted(k);
        if (ledger.settled(state, oracle)) break;
      }
    }
    out.t = state.attempts;
    return out;
  }

  std::vector<double> weights(static_cast<std::size_t>(k_max) + 1, 0.0);
  double total_weight = 0.0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    weights[static_cast<std::size_t>(k)] =
        std::ldexp(1.0, -static_cast<int>(q_mutation_complexity(static_cast<unsigned>(k))));
    total_weight += weights[static_cast<std::size_t>(k)];
  }

  std::vector<std::int64_t> acceptable;
  for (;;) {
    acceptable.clear();
    double acc_weight = 0.0;
    for (std::int64_t k = 1; k <= k_max; ++k) {
      QueryResult q = oracle.query_plus_power(state.value, step_exponent(regime, k));
      if (q == QueryResult::Unknown) {
        throw OracleUnknownError("run_q_cumulative: oracle cannot decide mutation k=" +
                                 std::to_string(k));
      }
      if (q == QueryResult::Below) {
        acceptable.push_back(k);
        acc_weight += weights[static_cast<std::size_t>(k)];
      }
    }
    double u = sampler.next_unit();
    double g = std::floor(std::log(u) / std::log1p(-acc_weight / total_weight));
    if (!(g >= 0.0) || g > 4.6e18) {
      throw CapExceededError("run_q_cumulative: waiting time beyond representable range");
    }
    state.attempts += static_cast<std::uint64_t>(g) + 1;
    double pick = sampler.next_unit() * acc_weight;
    std::int64_t chosen = acceptable.back();
    for (std::int64_t k : acceptable) {
      pick -= weights[static_cast<std::size_t>(k)];
      if (pick <= 0.0) {
        chosen = k;
        break;
      }
    }
    state.value = add_power(state.value, step_exponent(regime, chosen));
    ++state.accepted;
    out.accepted_sequence.push_back(chosen);
    ledger.mark_accepted(chosen);
    if (ledger.settled(state, oracle)) break;
  }
  out.t = state.attempts;
  return out;
}

}  // namespace omegalab
