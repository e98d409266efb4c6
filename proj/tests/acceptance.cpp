// Acceptance suite: one line per criterion, pass/fail with the measured
// numbers.  Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "omegalab/analysis.hpp"
#include "omegalab/evolution.hpp"
#include "omegalab/netcomplexity.hpp"
#include "omegalab/oracle.hpp"
#include "omegalab/prefix_code.hpp"
#include "omegalab/quantum.hpp"
#include "omegalab/toy_machine.hpp"

using namespace omegalab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      pass_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& text) { notes_ = notes_.empty() ? text : notes_ + ", " + text; }
  Outcome outcome() const {
    Outcome o;
    o.pass = pass_;
    o.detail = pass_ ? notes_ : failures_;
    return o;
  }

 private:
  bool pass_ = true;
  std::string failures_;
  std::string notes_;
};

RandomOmegaOracle oracle_for(std::uint64_t seed) {
  return RandomOmegaOracle(Rng::mix64(0x0A11CE ^ Rng::mix64(seed)));
}

std::vector<std::uint64_t> seed_range(unsigned count) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t s = 1; s <= count; ++s) v.push_back(s);
  return v;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- C1: intelligent design is exactly linear --------------------------------

Outcome c1_intelligent_design() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomOmegaOracle oracle = oracle_for(seed);
    for (unsigned n = 1; n <= 256; ++n) {
      IdTrace trace = run_intelligent_design(n, oracle);
      if (trace.t() != n) {
        c.expect(false, "T != N at n=" + std::to_string(n) + " seed=" + std::to_string(seed));
        return c.outcome();
      }
    }
  }
  double secs = elapsed_s(t0);
  c.expect(secs < 1.0, "runtime " + fmt(secs) + "s >= 1s");
  c.note("T=N for N in [1,256] x 50 seeds, zero variance, " + fmt(secs) + "s");
  return c.outcome();
}

// --- C2: classical cumulative scaling ----------------------------------------

Outcome c2_classical_cumulative() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  RunFn runner = [](unsigned n, std::uint64_t seed) {
    RandomOmegaOracle oracle = oracle_for(seed);
    Rng sampler = Rng::for_run(seed, 0xC2);
    return static_cast<double>(run_cumulative(n, oracle, sampler, CumulativeMode::FastForward).t);
  };
  auto samples = sweep(runner, {8, 16, 32, 64, 128}, seed_range(30), 2);
  FitResult fit = fit_scaling(samples);
  double exponent = fit.fit_for(FitModel::Power).slope;
  double r_power = fit.fit_for(FitModel::Power).normalized_residual;
  double r_exp = fit.fit_for(FitModel::Exponential).normalized_residual;
  double secs = elapsed_s(t0);
  c.expect(exponent >= 1.8 && exponent <= 3.2,
           "power exponent " + fmt(exponent) + " outside [1.8, 3.2]");
  c.expect(r_power < r_exp, "power residual " + fmt(r_power) + " not below exponential " +
                                fmt(r_exp));
  c.expect(secs < 120.0, "runtime " + fmt(secs) + "s >= 120s");
  c.note("exponent=" + fmt(exponent) + ", residual " + fmt(r_power) + " < " + fmt(r_exp) +
         ", " + fmt(secs) + "s");
  return c.outcome();
}

// --- C3: classical exhaustive scaling ----------------------------------------

Outcome c3_classical_exhaustive() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  for (unsigned n : {4u, 8u, 12u, 16u}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      std::uint64_t t = run_exhaustive(n, oracle_for(seed));
      bool in_window = t >= (std::uint64_t{1} << n) && t <= (std::uint64_t{1} << (n + 1));
      if (!in_window) {
        c.expect(false, "T=" + std::to_string(t) + " outside [2^n, 2^(n+1)] at n=" +
                            std::to_string(n) + " seed=" + std::to_string(seed));
      }
    }
  }
  RunFn runner = [](unsigned n, std::uint64_t seed) {
    return static_cast<double>(run_exhaustive(n, oracle_for(seed)));
  };
  auto samples = sweep(runner, {4, 8, 12, 16}, seed_range(30), 2);
  FitResult fit = fit_scaling(samples);
  double rate = fit.fit_for(FitModel::Exponential).slope;
  double secs = elapsed_s(t0);
  c.expect(fit.chosen == FitModel::Exponential,
           std::string("chosen model ") + fit_model_name(fit.chosen) + " != exponential");
  c.expect(std::abs(rate - 1.0) <= 0.15, "rate " + fmt(rate) + " outside 1.0 +/- 0.15");
  c.expect(secs < 60.0, "runtime " + fmt(secs) + "s >= 60s");
  c.note("rate=" + fmt(rate) + ", " + fmt(secs) + "s");
  return c.outcome();
}

// --- C4: quantum intelligent design, entangled regime ------------------------

Outcome c4_quantum_intelligent_design() {
  Checker c;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomOmegaOracle oracle = oracle_for(seed);
    for (unsigned n = 1; n <= 24; ++n) {
      IdTrace trace = run_q_intelligent_design(n, QuantumRegime::Entangled, oracle);
      if (trace.t() != n) {
        c.expect(false, "T != N at n=" + std::to_string(n));
        return c.outcome();
      }
    }
  }
  RandomOmegaOracle oracle = oracle_for(99);
  auto t0 = std::chrono::steady_clock::now();
  IdTrace trace = run_q_intelligent_design(20, QuantumRegime::Entangled, oracle);
  double secs = elapsed_s(t0);
  c.expect(trace.t() == 20, "T != 20 at n=20");
  c.expect(oracle.max_index_touched() >= 20971520,
           "oracle never touched bit index 20 * 2^20");
  c.expect(secs < 10.0, "n=20 runtime " + fmt(secs) + "s >= 10s");
  c.note("T=N for N<=24 both stats, bit index " + std::to_string(oracle.max_index_touched()) +
         " touched, n=20 in " + fmt(secs) + "s");
  return c.outcome();
}

// --- C5: quantum cumulative scaling ------------------------------------------

Outcome c5_quantum_cumulative() {
  Checker c;
  std::vector<unsigned> ns;
  for (unsigned n = 4; n <= 18; ++n) ns.push_back(n);

  RunFn ent = [](unsigned n, std::uint64_t seed) {
    RandomOmegaOracle oracle = oracle_for(seed);
    Rng sampler = Rng::for_run(seed, 0xE);
    return static_cast<double>(
        run_q_cumulative(n, QuantumRegime::Entangled, oracle, sampler, CumulativeMode::FastForward)
            .t);
  };
  RunFn sep = [](unsigned n, std::uint64_t seed) {
    RandomOmegaOracle oracle = oracle_for(seed);
    Rng sampler = Rng::for_run(seed, 0x5);
    return static_cast<double>(
        run_q_cumulative(n, QuantumRegime::Separable, oracle, sampler, CumulativeMode::FastForward)
            .t);
  };
  auto ent_samples = sweep(ent, ns, seed_range(30), 2);
  auto sep_samples = sweep(sep, ns, seed_range(30), 2);

  FitResult ent_fit = fit_scaling(ent_samples);
  FitResult sep_fit = fit_scaling(sep_samples);
  double ent_rate = ent_fit.fit_for(FitModel::Exponential).slope;
  double sep_exp = sep_fit.fit_for(FitModel::Power).slope;

  c.expect(ent_fit.chosen == FitModel::Exponential,
           std::string("entangled chose ") + fit_model_name(ent_fit.chosen));
  c.expect(ent_rate >= 0.8 && ent_rate <= 1.4,
           "entangled rate " + fmt(ent_rate) + " outside [0.8, 1.4]");
  c.expect(sep_fit.chosen == FitModel::Power,
           std::string("separable chose ") + fit_model_name(sep_fit.chosen));
  c.expect(sep_exp >= 1.8 && sep_exp <= 3.2,
           "separable exponent " + fmt(sep_exp) + " outside [1.8, 3.2]");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ent_samples[i].mean_t <= sep_samples[i].mean_t) {
      c.expect(false, "entangled mean <= separable mean at n=" + std::to_string(ns[i]));
    }
  }
  c.note("entangled rate=" + fmt(ent_rate) + ", separable exponent=" + fmt(sep_exp) +
         ", entangled dominates at all n");
  return c.outcome();
}

// --- C6: quantum exhaustive search -------------------------------------------

Outcome c6_quantum_exhaustive() {
  Checker c;
  for (unsigned n : {2u, 3u, 4u}) {
    const std::uint64_t window = std::uint64_t{1} << n;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      QExhaustiveResult r = run_q_exhaustive(n, oracle_for(seed));
      c.expect(!r.analytic, "analytic flag set at n=" + std::to_string(n));
      bool in_window = r.t >= (std::uint64_t{1} << window) &&
                       r.t <= (std::uint64_t{1} << (window + 1));
      if (!in_window) {
        c.expect(false, "T outside [2^2^n, 2^(2^n+1)] at n=" + std::to_string(n));
      }
    }
  }
  for (unsigned n : {5u, 6u}) {
    QExhaustiveResult r = run_q_exhaustive(n, oracle_for(1));
    c.expect(r.analytic, "analytic flag missing at n=" + std::to_string(n));
    c.expect(r.analytic_mantissa == 1.5 && r.analytic_exp2 == (std::uint64_t{1} << n),
             "analytic count is not 1.5 * 2^(2^n)");
  }
  c.note("simulated windows hold for n in {2,3,4}, analytic flagged for n >= 5");
  return c.outcome();
}

// --- C7: fast-forward fidelity ------------------------------------------------

Outcome c7_fast_forward_fidelity() {
  Checker c;
  const unsigned n = 8;
  const int runs = 1000;
  std::vector<double> sim, ff;
  sim.reserve(runs);
  ff.reserve(runs);
  for (int i = 0; i < runs; ++i) {
    RandomOmegaOracle oracle = oracle_for(10'000 + i);
    Rng s1 = Rng::for_run(10'000 + i, 0x51);
    Rng s2 = Rng::for_run(10'000 + i, 0xFF);
    sim.push_back(static_cast<double>(run_cumulative(n, oracle, s1, CumulativeMode::Simulate).t));
    ff.push_back(
        static_cast<double>(run_cumulative(n, oracle, s2, CumulativeMode::FastForward).t));
  }
  auto mean_of = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto var_of = [&](const std::vector<double>& v, double m) {
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
  };
  double m_sim = mean_of(sim), m_ff = mean_of(ff);
  double se = std::sqrt(var_of(sim, m_sim) / runs + var_of(ff, m_ff) / runs);
  double gap = std::abs(m_sim - m_ff);
  c.expect(gap <= 3.0 * se, "means differ by " + fmt(gap) + " > 3 SE (" + fmt(3 * se) + ")");
  c.note("simulate mean=" + fmt(m_sim) + ", fast-forward mean=" + fmt(m_ff) + ", gap " +
         fmt(gap) + " <= 3 SE " + fmt(3 * se));
  return c.outcome();
}

// --- C8: toy machine domain ----------------------------------------------------

Outcome c8_toy_machine() {
  Checker c;
  DomainResult d16 = enumerate_domain(16, 10'000, 2);
  CodeSet codes;
  for (const auto& e : d16.halting) codes.add(e.program);
  c.expect(codes.is_prefix_free(), "domain at max_len 16 is not prefix-free");
  SparseDyadic omega16 = omega_lower_bound(d16);
  c.expect(compare(omega16, SparseDyadic::one()) == Ordering::Less, "kraft sum >= 1");

  SparseDyadic omega12 = omega_lower_bound(12, 10'000);
  SparseDyadic omega16_small_budget = omega_lower_bound(16, 200);
  c.expect(compare(omega12, omega16) != Ordering::Greater, "omega not monotone in max_len");
  c.expect(compare(omega16_small_budget, omega16) != Ordering::Greater,
           "omega not monotone in budget");
  c.expect(busy_beaver(9, 100'000) <= busy_beaver(12, 100'000), "bb not monotone in length");
  c.expect(busy_beaver(15, 20) <= busy_beaver(15, 100'000), "bb not monotone in budget");

  // Golden files: byte-identical across regeneration, run repetition, and
  // job counts.
  auto render_domain = [](const DomainResult& d) {
    std::ostringstream out;
    for (const auto& e : d.halting) {
      out << e.program.str() << '\t' << e.output.get_str() << '\t' << e.steps << '\n';
    }
    return out.str();
  };
  std::ifstream golden(std::string(OMEGALAB_SOURCE_DIR) + "/tests/golden/domain_len9.tsv");
  std::stringstream expected;
  expected << golden.rdbuf();
  std::string run1 = render_domain(enumerate_domain(9, 10'000, 1));
  std::string run2 = render_domain(enumerate_domain(9, 10'000, 1));
  std::string run4 = render_domain(enumerate_domain(9, 10'000, 4));
  c.expect(run1 == expected.str(), "domain regeneration differs from the golden file");
  c.expect(run1 == run2, "repeated runs differ");
  c.expect(run1 == run4, "job counts change the output");

  std::ifstream bb_golden(std::string(OMEGALAB_SOURCE_DIR) + "/tests/golden/bb_table.tsv");
  std::stringstream bb_expected;
  bb_expected << bb_golden.rdbuf();
  std::ostringstream bb_run;
  for (unsigned n = 3; n <= 15; n += 3) {
    bb_run << n << '\t' << busy_beaver(n, 100'000, 2).get_str() << '\n';
  }
  c.expect(bb_run.str() == bb_expected.str(), "busy beaver table differs from the golden file");

  c.note("domain prefix-free, kraft=" + omega16.str() + " < 1, monotone, goldens reproduce");
  return c.outcome();
}

// --- C9: coding-theorem monitor -------------------------------------------------

Outcome c9_coding_monitor() {
  Checker c;
  DomainResult d = enumerate_domain(14, 10'000, 2);
  auto rows = complexity_vs_probability(d);
  int violations = 0;
  double worst = 0.0;
  for (const auto& row : rows) {
    worst = std::max(worst, std::abs(row.slack));
    if (std::abs(row.slack) > 8.0) {
      ++violations;
      std::cout << "  C9 monitor: target " << row.target.get_str() << " slack "
                << row.slack << "\n";
    }
  }
  // Reported, not fatal: violations are listed above.
  c.note(std::to_string(rows.size()) + " outputs, max |slack| " + fmt(worst) + " bits, " +
         std::to_string(violations) + " violations (reported)");
  return c.outcome();
}

// --- C10: network complexity -----------------------------------------------------

Outcome c10_netcomplexity() {
  Checker c;
  SynthesisConfig tight;
  tight.n = 2;
  tight.epsilon = 0.01;
  auto bell = synthesize(bell_state(), tight);
  c.expect(bell.has_value() && bell->ops.size() == 2, "bell minimal circuit is not 2 gates");
  c.expect(h_net_upper(StateVector::zero_state(2), tight) == 3,
           "h_net(|0..0>) is not the header-only length");

  SynthesisConfig loose;
  loose.n = 2;
  loose.epsilon = 0.05;
  loose.max_gates = 16;  // past the n<=2 default so no state is censored
  double sum_haar = 0, sum_product = 0;
  for (int i = 0; i < 20; ++i) {
    Rng r1 = Rng::for_run(1000 + i, 1);
    Rng r2 = Rng::for_run(1000 + i, 2);
    auto ch = h_net_upper(haar_random_state(2, r1), loose);
    auto cp = h_net_upper(random_product_state(2, r2), loose);
    if (!ch || !cp) {
      c.expect(false, "synthesis censored a state at max_gates=16");
      return c.outcome();
    }
    sum_haar += *ch;
    sum_product += *cp;
  }
  c.expect(sum_haar >= sum_product, "mean h_net of random states " + fmt(sum_haar / 20) +
                                        " below product states " + fmt(sum_product / 20));

  Rng rng(0xD1F7);
  double drift = 0.0;
  for (int trial = 0; trial < 10'000; ++trial) {
    unsigned n = 1 + static_cast<unsigned>(rng.next_u64() % 4);
    Circuit circ;
    for (int g = 0; g < 8; ++g) {
      unsigned kind = static_cast<unsigned>(rng.next_u64() % (n >= 2 ? 3 : 2));
      std::uint8_t target = static_cast<std::uint8_t>(rng.next_u64() % n);
      Gate gate{static_cast<GateKind>(kind), target, 0};
      if (gate.kind == GateKind::CNOT) {
        gate.control = static_cast<std::uint8_t>(
            (target + 1 + rng.next_u64() % (n - 1)) % n);
      }
      circ.ops.push_back(gate);
    }
    drift = std::max(drift, std::abs(apply_circuit(circ, n).norm_sq() - 1.0));
  }
  c.expect(drift < 1e-12, "norm drift " + fmt(drift) + " >= 1e-12");
  c.note("bell len 2, header-only 3 bits, mean " + fmt(sum_haar / 20) + " >= " +
         fmt(sum_product / 20) + ", norm drift " + fmt(drift));
  return c.outcome();
}

// --- C11: fit harness -------------------------------------------------------------

Outcome c11_fit_harness() {
  Checker c;
  auto synth = [](const std::vector<unsigned>& ns, double (*f)(double)) {
    std::vector<ScalingSample> out;
    for (unsigned n : ns) {
      ScalingSample s;
      s.n = n;
      s.trials = 1;
      s.mean_t = f(static_cast<double>(n));
      out.push_back(s);
    }
    return out;
  };
  {
    FitResult fit =
        fit_scaling(synth({8, 16, 32, 64, 128}, [](double n) { return 50.0 + 3.0 * n; }));
    c.expect(fit.chosen == FitModel::Linear, "linear family misidentified");
    c.expect(std::abs(fit.chosen_fit().slope - 3.0) <= 0.03, "linear slope off by > 1%");
    c.expect(std::abs(fit.chosen_fit().intercept - 50.0) <= 0.5, "linear intercept off by > 1%");
  }
  {
    FitResult fit = fit_scaling(
        synth({8, 16, 32, 64, 128}, [](double n) { return 2.0 * std::pow(n, 2.5); }));
    c.expect(fit.chosen == FitModel::Power, "power family misidentified");
    c.expect(std::abs(fit.chosen_fit().slope - 2.5) <= 0.025, "power exponent off by > 1%");
  }
  {
    FitResult fit =
        fit_scaling(synth({8, 16, 32, 64, 128}, [](double n) { return 3.0 * std::exp2(n); }));
    c.expect(fit.chosen == FitModel::Exponential, "exponential family misidentified");
    c.expect(std::abs(fit.chosen_fit().slope - 1.0) <= 0.01, "exponential rate off by > 1%");
  }
  {
    FitResult fit = fit_scaling(synth({4, 6, 8, 10, 12, 14, 16, 18},
                                      [](double n) { return std::exp2(std::exp2(0.3 * n)); }));
    c.expect(fit.chosen == FitModel::DoubleExponential,
             "double-exponential family misidentified");
    c.expect(std::abs(fit.chosen_fit().slope - 0.3) <= 0.003,
             "double-exponential rate off by > 1%");
  }
  c.note("all four families recovered with parameters within 1%");
  return c.outcome();
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> fn;
  };
  std::vector<Entry> criteria = {
      {"C1 intelligent design T=N", c1_intelligent_design},
      {"C2 classical cumulative power law", c2_classical_cumulative},
      {"C3 classical exhaustive exponential", c3_classical_exhaustive},
      {"C4 quantum intelligent design entangled", c4_quantum_intelligent_design},
      {"C5 quantum cumulative rates", c5_quantum_cumulative},
      {"C6 quantum exhaustive windows", c6_quantum_exhaustive},
      {"C7 fast-forward fidelity", c7_fast_forward_fidelity},
      {"C8 toy machine domain", c8_toy_machine},
      {"C9 coding-theorem monitor", c9_coding_monitor},
      {"C10 network complexity", c10_netcomplexity},
      {"C11 fit harness recovery", c11_fit_harness},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    Outcome o;
    try {
      o = entry.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << entry.name << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n" << std::flush;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
