#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "omegalab/bitstring.hpp"
#include "omegalab/dyadic.hpp"

namespace omegalab {

using BigNat = mpz_class;

// A tiny register machine whose programs are self-delimiting by execution:
// bits are read strictly on demand, so the set of exactly-consumed bit
// sequences at halt is prefix-free by construction.
//
// 3-bit opcodes, two unbounded natural registers A and B starting at 0:
//   000 HALT        output A
//   001 INC A
//   010 INC B
//   011 DBL A       A <- 2A
//   100 ADD         A <- A + B
//   101 MOVE        B <- A
//   110 LOOP j      reads a 3-bit operand j; if B > 0 then B <- B-1 and
//                   jump j instructions back (clamped at instruction 0),
//                   else fall through
//   111 SWAP        A <-> B
//
// Each executed instruction costs one step.  Decoding costs no steps and
// happens once per instruction position, the first time the instruction
// pointer reaches it.

enum class RunStatus {
  Halted,
  BudgetExceeded,
  NeedsMoreBits,
  NonHalting,  // an exact machine state repeated at a loop back-edge
};

struct RunResult {
  RunStatus status = RunStatus::NeedsMoreBits;
  BigNat output;  // register A, valid when Halted
  std::uint64_t bits_consumed = 0;
  std::uint64_t steps_used = 0;
};

// Resumable interpreter.  Feed bits with push_bit and call resume; the
// machine pauses with NeedsMoreBits whenever the next instruction is not
// fully on the tape yet.  Copyable, so an enumerator can fork at branch
// points cheaply.
class ToyMachine {
 public:
  void push_bit(int bit) { tape_.push_back(static_cast<std::uint8_t>(bit & 1)); }

  // Runs until halt, a missing bit, a proved cycle, or the total step budget.
  RunResult resume(std::uint64_t step_budget);

  std::uint64_t bits_consumed() const { return cursor_; }
  std::uint64_t tape_size() const { return tape_.size(); }
  BitString tape_bits() const;

 private:
  enum Op : std::uint8_t { kHalt = 0, kIncA, kIncB, kDblA, kAdd, kMove, kLoop, kSwap };
  struct Instr {
    std::uint8_t op = 0;
    std::uint8_t arg = 0;
  };

  int peek_bits(std::size_t at, std::size_t n) const;  // -1 if unavailable

  std::vector<std::uint8_t> tape_;
  std::size_t cursor_ = 0;
  std::vector<Instr> code_;
  std::size_t ip_ = 0;
  BigNat a_{0};
  BigNat b_{0};
  std::uint64_t steps_ = 0;
  // Exact states seen at loop back-edges; a repeat proves non-termination.
  std::set<std::tuple<std::size_t, std::size_t, BigNat, BigNat>> loop_states_;
  static constexpr std::size_t kLoopStateCap = 4096;
};

// Runs one program given as a finite bit string.
RunResult run_program(const BitString& program, std::uint64_t step_budget);

// Runs pulling bits on demand from a source.
RunResult run_stream(BitSource& bits, std::uint64_t step_budget);

struct DomainEntry {
  BitString program;
  BigNat output;
  std::uint64_t steps = 0;
};

struct DomainResult {
  unsigned max_len = 0;
  std::uint64_t step_budget = 0;
  // Halting programs with |p| < max_len, sorted by (length, bits).
  std::vector<DomainEntry> halting;
  // Prefix lengths of branches stopped by budget or by the length cap; each
  // bounds its unexplored subtree's halting mass by 2^-length.
  std::vector<std::uint64_t> unresolved_prefix_lengths;
};

// Explores the binary tree of bit-request histories.  Deterministic for any
// job count: subtrees are processed independently and merged in tree order.
DomainResult enumerate_domain(unsigned max_len, std::uint64_t step_budget, unsigned jobs = 1);

// Sum of 2^-|p| over the enumerated domain; a lower bound to this machine's
// halting probability, strictly below 1.
SparseDyadic omega_lower_bound(const DomainResult& domain);
SparseDyadic omega_lower_bound(unsigned max_len, std::uint64_t step_budget, unsigned jobs = 1);

// Upper bound on the halting mass not yet enumerated: sum of 2^-length over
// unresolved branch prefixes.
SparseDyadic unresolved_tail_bound(const DomainResult& domain);

// Largest halted output over programs with |p| <= n under the budget; a
// resource-bounded lower bound to the machine's busy-beaver value.
BigNat busy_beaver(unsigned n, std::uint64_t step_budget, unsigned jobs = 1);

// Sum of 2^-|p| over enumerated programs that output target.
SparseDyadic universal_probability(const BigNat& target, const DomainResult& domain);

// Minimal |p| over enumerated programs that output target.
std::optional<unsigned> complexity_upper(const BigNat& target, const DomainResult& domain);

struct CodingRow {
  BigNat target;
  unsigned complexity = 0;     // minimal program length found
  double log2_probability = 0; // log2 of the enumerated probability mass
  double slack = 0;            // complexity + log2_probability
};

// Per-output comparison of minimal program length against -log2 of the
// enumerated probability mass; slack stays small when the two agree.
std::vector<CodingRow> complexity_vs_probability(const DomainResult& domain);

}  // namespace omegalab
