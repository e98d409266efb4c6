#include "omegalab/toy_machine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>
#include <utility>

#include "omegalab/errors.hpp"

namespace omegalab {

int ToyMachine::peek_bits(std::size_t at, std::size_t n) const {
  if (at + n > tape_.size()) return -1;
  int v = 0;
  for (std::size_t i = 0; i < n; ++i) v = (v << 1) | tape_[at + i];
  return v;
}

RunResult ToyMachine::resume(std::uint64_t step_budget) {
  auto result = [this](RunStatus s) {
    RunResult r;
    r.status = s;
    if (s == RunStatus::Halted) r.output = a_;
    r.bits_consumed = cursor_;
    r.steps_used = steps_;
    return r;
  };

  for (;;) {
    if (ip_ == code_.size()) {
      // First visit to this position: decode atomically or pause.
      int op = peek_bits(cursor_, 3);
      if (op < 0) return result(RunStatus::NeedsMoreBits);
      Instr ins;
      ins.op = static_cast<std::uint8_t>(op);
      if (ins.op == kLoop) {
        int arg = peek_bits(cursor_ + 3, 3);
        if (arg < 0) return result(RunStatus::NeedsMoreBits);
        ins.arg = static_cast<std::uint8_t>(arg);
        cursor_ += 6;
      } else {
        cursor_ += 3;
      }
      code_.push_back(ins);
    }

    if (steps_ >= step_budget) return result(RunStatus::BudgetExceeded);
    ++steps_;

    const Instr& ins = code_[ip_];
    switch (ins.op) {
      case kHalt:
        return result(RunStatus::Halted);
      case kIncA:
        ++a_;
        ++ip_;
        break;
      case kIncB:
        ++b_;
        ++ip_;
        break;
      case kDblA:
        a_ <<= 1;
        ++ip_;
        break;
      case kAdd:
        a_ += b_;
        ++ip_;
        break;
      case kMove:
        b_ = a_;
        ++ip_;
        break;
      case kLoop: {
        if (loop_states_.size() < kLoopStateCap) {
          auto [it, inserted] = loop_states_.emplace(ip_, code_.size(), a_, b_);
          if (!inserted) return result(RunStatus::NonHalting);
        }
        if (b_ > 0) {
          --b_;
          std::size_t j = ins.arg;
          ip_ = j > ip_ ? 0 : ip_ - j;
        } else {
          ++ip_;
        }
        break;
      }
      case kSwap:
        std::swap(a_, b_);
        ++ip_;
        break;
    }
  }
}

BitString ToyMachine::tape_bits() const {
  BitString out;
  for (std::uint8_t b : tape_) out.push_back(b);
  return out;
}

RunResult run_program(const BitString& program, std::uint64_t step_budget) {
  ToyMachine m;
  for (std::size_t i = 0; i < program.size(); ++i) m.push_bit(program[i]);
  return m.resume(step_budget);
}

RunResult run_stream(BitSource& bits, std::uint64_t step_budget) {
  ToyMachine m;
  for (;;) {
    RunResult r = m.resume(step_budget);
    if (r.status != RunStatus::NeedsMoreBits) return r;
    auto b = bits.next();
    if (!b) return r;  // source exhausted
    m.push_bit(*b);
  }
}

namespace {

struct Collector {
  std::vector<DomainEntry> halting;
  std::vector<std::uint64_t> unresolved;
};

// Depth-first exploration of both extensions of a paused machine.  max_bits
// is the largest program length admitted (max_len - 1: the domain is strict).
void explore(ToyMachine machine, unsigned max_bits, std::uint64_t step_budget, Collector* out) {
  RunResult r = machine.resume(step_budget);
  switch (r.status) {
    case RunStatus::Halted: {
      DomainEntry e;
      e.program = machine.tape_bits();
      e.output = std::move(r.output);
      e.steps = r.steps_used;
      out->halting.push_back(std::move(e));
      return;
    }
    case RunStatus::BudgetExceeded:
      out->unresolved.push_back(machine.tape_size());
      return;
    case RunStatus::NonHalting:
      return;
    case RunStatus::NeedsMoreBits:
      if (machine.tape_size() >= max_bits) {
        out->unresolved.push_back(machine.tape_size());
        return;
      }
      for (int bit = 0; bit <= 1; ++bit) {
        ToyMachine fork = machine;
        fork.push_bit(bit);
        explore(std::move(fork), max_bits, step_budget, out);
      }
      return;
  }
}

}  // namespace

DomainResult enumerate_domain(unsigned max_len, std::uint64_t step_budget, unsigned jobs) {
  if (max_len == 0) throw GuardError("enumerate_domain: max_len must be >= 1");
  DomainResult out;
  out.max_len = max_len;
  out.step_budget = step_budget;
  const unsigned max_bits = max_len - 1;

  // Frontier at a fixed split depth; each subtree is independent, and results
  // are concatenated in tree order, so the merge is scheduling-invariant.
  struct Pending {
    ToyMachine machine;
  };
  std::vector<Pending> frontier;
  Collector shallow;
  const unsigned split_bits = (jobs > 1 && max_bits > 8) ? 8 : 0;

  {
    // Breadth-first up to the split depth.
    std::vector<ToyMachine> level;
    level.emplace_back();
    while (!level.empty()) {
      std::vector<ToyMachine> next;
      for (auto& m : level) {
        RunResult r = m.resume(step_budget);
        switch (r.status) {
          case RunStatus::Halted: {
            DomainEntry e;
            e.program = m.tape_bits();
            e.output = std::move(r.output);
            e.steps = r.steps_used;
            shallow.halting.push_back(std::move(e));
            break;
          }
          case RunStatus::BudgetExceeded:
            shallow.unresolved.push_back(m.tape_size());
            break;
          case RunStatus::NonHalting:
            break;
          case RunStatus::NeedsMoreBits:
            if (m.tape_size() >= max_bits) {
              shallow.unresolved.push_back(m.tape_size());
            } else if (m.tape_size() >= split_bits) {
              frontier.push_back(Pending{std::move(m)});
            } else {
              for (int bit = 0; bit <= 1; ++bit) {
                ToyMachine fork = m;
                fork.push_bit(bit);
                next.push_back(std::move(fork));
              }
            }
            break;
        }
      }
      level = std::move(next);
    }
  }

  std::vector<Collector> per_subtree(frontier.size());
  if (jobs <= 1 || frontier.size() <= 1) {
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (int bit = 0; bit <= 1; ++bit) {
        ToyMachine fork = frontier[i].machine;
        fork.push_bit(bit);
        explore(std::move(fork), max_bits, step_budget, &per_subtree[i]);
      }
    }
  } else {
    std::atomic<std::size_t> next_index{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next_index.fetch_add(1);
        if (i >= frontier.size()) return;
        for (int bit = 0; bit <= 1; ++bit) {
          ToyMachine fork = frontier[i].machine;
          fork.push_bit(bit);
          explore(std::move(fork), max_bits, step_budget, &per_subtree[i]);
        }
      }
    };
    std::vector<std::future<void>> tasks;
    for (unsigned j = 0; j < jobs; ++j) tasks.push_back(std::async(std::launch::async, worker));
    for (auto& t : tasks) t.get();
  }

  out.halting = std::move(shallow.halting);
  out.unresolved_prefix_lengths = std::move(shallow.unresolved);
  for (auto& c : per_subtree) {
    std::move(c.halting.begin(), c.halting.end(), std::back_inserter(out.halting));
    out.unresolved_prefix_lengths.insert(out.unresolved_prefix_lengths.end(),
                                         c.unresolved.begin(), c.unresolved.end());
  }
  std::sort(out.halting.begin(), out.halting.end(),
            [](const DomainEntry& a, const DomainEntry& b) {
              return shortlex_less(a.program, b.program);
            });
  std::sort(out.unresolved_prefix_lengths.begin(), out.unresolved_prefix_lengths.end());
  return out;
}

SparseDyadic omega_lower_bound(const DomainResult& domain) {
  SparseDyadic total;
  for (const auto& e : domain.halting) {
    total = add_power(total, static_cast<std::int64_t>(e.program.size()));
  }
  return total;
}

SparseDyadic omega_lower_bound(unsigned max_len, std::uint64_t step_budget, unsigned jobs) {
  return omega_lower_bound(enumerate_domain(max_len, step_budget, jobs));
}

SparseDyadic unresolved_tail_bound(const DomainResult& domain) {
  SparseDyadic total;
  for (std::uint64_t len : domain.unresolved_prefix_lengths) {
    total = add_power(total, static_cast<std::int64_t>(len));
  }
  return total;
}

BigNat busy_beaver(unsigned n, std::uint64_t step_budget, unsigned jobs) {
  DomainResult domain = enumerate_domain(n + 1, step_budget, jobs);
  BigNat best = 0;
  for (const auto& e : domain.halting) {
    if (e.output > best) best = e.output;
  }
  return best;
}

SparseDyadic universal_probability(const BigNat& target, const DomainResult& domain) {
  SparseDyadic total;
  for (const auto& e : domain.halting) {
    if (e.output == target) total = add_power(total, static_cast<std::int64_t>(e.program.size()));
  }
  return total;
}

std::optional<unsigned> complexity_upper(const BigNat& target, const DomainResult& domain) {
  std::optional<unsigned> best;
  for (const auto& e : domain.halting) {
    if (e.output != target) continue;
    unsigned len = static_cast<unsigned>(e.program.size());
    if (!best || len < *best) best = len;
  }
  return best;
}

std::vector<CodingRow> complexity_vs_probability(const DomainResult& domain) {
  std::map<BigNat, std::pair<unsigned, double>> per_output;  // min length, probability mass
  for (const auto& e : domain.halting) {
    unsigned len = static_cast<unsigned>(e.program.size());
    auto [it, inserted] = per_output.try_emplace(e.output, len, 0.0);
    if (!inserted && len < it->second.first) it->second.first = len;
    it->second.second += std::ldexp(1.0, -static_cast<int>(len));
  }
  std::vector<CodingRow> rows;
  rows.reserve(per_output.size());
  for (const auto& [target, lp] : per_output) {
    CodingRow row;
    row.target = target;
    row.complexity = lp.first;
    row.log2_probability = std::log2(lp.second);
    row.slack = static_cast<double>(row.complexity) + row.log2_probability;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace omegalab
