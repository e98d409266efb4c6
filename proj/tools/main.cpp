#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "omegalab/analysis.hpp"
#include "omegalab/errors.hpp"
#include "omegalab/evolution.hpp"
#include "omegalab/netcomplexity.hpp"
#include "omegalab/oracle.hpp"
#include "omegalab/prefix_code.hpp"
#include "omegalab/quantum.hpp"
#include "omegalab/toy_machine.hpp"

namespace {

using namespace omegalab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;
constexpr int kExitAbort = 3;
constexpr int kExitInternal = 4;

std::uint64_t parse_seed_word(const std::string& text) {
  return std::stoull(text, nullptr, 0);  // accepts decimal or 0x-prefixed hex
}

std::vector<std::uint64_t> resolve_seeds(const std::string& seed_list, unsigned seed_count) {
  std::vector<std::uint64_t> seeds;
  if (!seed_list.empty()) {  // explicit list wins
    std::istringstream in(seed_list);
    std::string item;
    while (std::getline(in, item, ',')) seeds.push_back(parse_seed_word(item));
  } else {
    for (unsigned i = 1; i <= seed_count; ++i) seeds.push_back(i);
  }
  if (seeds.empty()) throw CLI::ValidationError("--seed/--seeds", "no seeds given");
  return seeds;
}

std::vector<unsigned> parse_n_list(const std::string& text) {
  std::vector<unsigned> ns;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) ns.push_back(static_cast<unsigned>(std::stoul(item)));
  if (ns.empty()) throw CLI::ValidationError("--n", "no values given");
  return ns;
}

std::filesystem::path resolve_out(const std::string& out, const std::string& out_dir) {
  std::filesystem::path p(out);
  if (!out_dir.empty() && p.is_relative()) return std::filesystem::path(out_dir) / p;
  return p;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw AnalysisError("cannot open output file: " + p.string());
  return f;
}

struct OracleConfig {
  std::string backend = "random";
  std::uint64_t omega_seed = 0;
  unsigned max_len = 12;       // enumerated backend
  std::uint64_t budget = 10000;
  unsigned jobs = 1;
};

// Every run gets an oracle keyed by its run seed (random backend) or a view
// of one shared enumeration (enumerated backend).
class OracleFactory {
 public:
  explicit OracleFactory(const OracleConfig& cfg) : cfg_(cfg) {
    if (cfg_.backend == "enumerated") {
      shared_ = std::make_shared<EnumeratedOmegaOracle>(cfg_.max_len, cfg_.budget, cfg_.jobs);
    }
  }

  std::shared_ptr<const OmegaOracle> for_run(std::uint64_t run_seed) const {
    if (shared_) return shared_;
    return std::make_shared<RandomOmegaOracle>(Rng::mix64(cfg_.omega_seed ^ Rng::mix64(run_seed)));
  }

 private:
  OracleConfig cfg_;
  std::shared_ptr<const EnumeratedOmegaOracle> shared_;
};

struct RunOutcome {
  double t = 0.0;
  std::uint64_t accepted = 0;
  bool analytic = false;
  std::string display;  // what to print after "T="
};

RunOutcome run_one(const std::string& scenario, const std::string& model,
                   const std::string& mode, unsigned n, std::uint64_t run_seed,
                   const OracleFactory& oracles) {
  auto oracle = oracles.for_run(run_seed);
  Rng sampler = Rng::for_run(run_seed, 0x5A17);
  CumulativeMode cmode =
      mode == "simulate" ? CumulativeMode::Simulate : CumulativeMode::FastForward;
  RunOutcome out;

  auto finish_count = [&out](std::uint64_t t, std::uint64_t accepted) {
    out.t = static_cast<double>(t);
    out.accepted = accepted;
    out.display = std::to_string(t);
  };

  if (model == "classical") {
    if (scenario == "exhaustive") {
      finish_count(run_exhaustive(n, *oracle), 0);
    } else if (scenario == "id") {
      IdTrace trace = run_intelligent_design(n, *oracle);
      finish_count(trace.t(), trace.final_state.accepted);
    } else {
      CumulativeResult r = run_cumulative(n, *oracle, sampler, cmode);
      finish_count(r.t, r.final_state.accepted);
    }
    return out;
  }

  QuantumRegime regime = model == "q-ent" ? QuantumRegime::Entangled : QuantumRegime::Separable;
  if (scenario == "exhaustive") {
    QExhaustiveResult r = run_q_exhaustive(n, *oracle);
    if (r.analytic) {
      out.analytic = true;
      out.t = r.analytic_mantissa * std::pow(2.0, static_cast<double>(r.analytic_exp2));
      std::ostringstream disp;
      disp << r.analytic_mantissa << "*2^" << r.analytic_exp2 << " (analytic)";
      out.display = disp.str();
    } else {
      finish_count(r.t, 0);
    }
  } else if (scenario == "id") {
    IdTrace trace = run_q_intelligent_design(n, regime, *oracle);
    finish_count(trace.t(), trace.final_state.accepted);
  } else {
    CumulativeResult r = run_q_cumulative(n, regime, *oracle, sampler, cmode);
    finish_count(r.t, r.final_state.accepted);
  }
  return out;
}

int cmd_evolve(const std::string& scenario, const std::string& model, const std::string& mode,
               unsigned n, const std::vector<std::uint64_t>& seeds, const OracleFactory& oracles,
               const std::string& trace_path, const std::string& out,
               const std::string& format, const std::string& out_dir) {
  std::vector<TraceRow> rows;
  bool single = seeds.size() == 1;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    RunOutcome r = run_one(scenario, model, mode, n, seeds[i], oracles);
    auto t1 = std::chrono::steady_clock::now();
    if (single) {
      std::cout << "T=" << r.display << "\n";
    } else {
      std::cout << "seed=" << seeds[i] << "\tT=" << r.display << "\n";
    }
    TraceRow row;
    row.run_id = i;
    row.scenario = scenario;
    row.regime = model;
    row.n = n;
    row.seed = seeds[i];
    row.t = r.t;
    row.accepted = r.accepted;
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rows.push_back(std::move(row));
  }
  if (!trace_path.empty()) {
    auto f = open_out(resolve_out(trace_path, out_dir));
    export_trace_csv(rows, f);
  }
  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    if (format == "csv") {
      export_trace_csv(rows, f);
    } else {
      nlohmann::json doc;
      doc["schema_version"] = 1;
      doc["runs"] = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json row;
        row["seed"] = r.seed;
        row["N"] = r.n;
        row["T"] = r.t;
        row["accepted"] = r.accepted;
        row["scenario"] = r.scenario;
        row["regime"] = r.regime;
        doc["runs"].push_back(std::move(row));
      }
      f << doc.dump(2) << "\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(const std::string& scenario, const std::string& model, const std::string& mode,
              const std::vector<unsigned>& ns, const std::vector<std::uint64_t>& seeds,
              const OracleFactory& oracles, bool do_fit, const std::string& out,
              const std::string& format, unsigned jobs, const std::string& out_dir) {
  RunFn runner = [&](unsigned n, std::uint64_t seed) {
    return run_one(scenario, model, mode, n, seed, oracles).t;
  };
  std::vector<ScalingSample> samples = sweep(runner, ns, seeds, jobs);

  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    if (format == "csv") {
      export_samples_csv(samples, f);
    } else {
      f << samples_to_json(samples) << "\n";
    }
  }
  if (do_fit) {
    FitResult fit = fit_scaling(samples);
    if (out.empty() && format == "json") {
      // Single combined document when nothing was routed to a file.
      std::string s = samples_to_json(samples);
      std::string f = fit_to_json(fit);
      std::cout << "{\n  \"schema_version\": 1,\n  \"samples\": " << s << ",\n  \"fit\": " << f
                << "\n}\n";
    } else {
      std::cout << fit_to_json(fit) << "\n";
    }
  } else if (out.empty()) {
    if (format == "csv") {
      export_samples_csv(samples, std::cout);
    } else {
      std::cout << samples_to_json(samples) << "\n";
    }
  }
  return kExitOk;
}

int cmd_omega(unsigned max_len, std::uint64_t budget, unsigned jobs,
              const std::string& domain_out, const std::string& report_out,
              const std::string& out, const std::string& format, const std::string& out_dir) {
  DomainResult domain = enumerate_domain(max_len, budget, jobs);
  EnumeratedOmegaOracle oracle(domain);
  std::cout << "programs=" << domain.halting.size() << "\n";
  std::cout << "omega_lower=" << oracle.lower().str() << "\n";
  std::cout << "omega_upper=" << oracle.upper().str() << "\n";
  std::cout << "certified_bits=" << oracle.certified_bits() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", oracle.lower().to_double());
  std::cout << "approx=" << buf << "\n";
  if (!domain_out.empty()) {
    auto f = open_out(resolve_out(domain_out, out_dir));
    for (const auto& e : domain.halting) {
      f << e.program.str() << '\t' << e.output.get_str() << '\t' << e.steps << '\n';
    }
  }
  if (!report_out.empty()) {
    auto f = open_out(resolve_out(report_out, out_dir));
    f << "target\tcomplexity\tlog2_probability\tslack\n";
    for (const auto& row : complexity_vs_probability(domain)) {
      std::snprintf(buf, sizeof(buf), "%.17g", row.log2_probability);
      f << row.target.get_str() << '\t' << row.complexity << '\t' << buf << '\t';
      std::snprintf(buf, sizeof(buf), "%.17g", row.slack);
      f << buf << '\n';
    }
  }
  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    std::snprintf(buf, sizeof(buf), "%.17g", oracle.lower().to_double());
    if (format == "csv") {
      f << "programs,omega_lower,omega_upper,certified_bits,approx\n";
      f << domain.halting.size() << ',' << oracle.lower().str() << ',' << oracle.upper().str()
        << ',' << oracle.certified_bits() << ',' << buf << '\n';
    } else {
      nlohmann::json doc;
      doc["schema_version"] = 1;
      doc["programs"] = domain.halting.size();
      doc["omega_lower"] = oracle.lower().str();
      doc["omega_upper"] = oracle.upper().str();
      doc["certified_bits"] = oracle.certified_bits();
      doc["approx"] = oracle.lower().to_double();
      f << doc.dump(2) << "\n";
    }
  }
  return kExitOk;
}

int cmd_bb(unsigned max_n, std::uint64_t budget, unsigned jobs, const std::string& out,
           const std::string& format, const std::string& out_dir) {
  std::vector<std::pair<unsigned, std::string>> table;
  for (unsigned n = 3; n <= max_n; n += 3) {
    table.emplace_back(n, busy_beaver(n, budget, jobs).get_str());
  }
  for (const auto& [n, sigma] : table) std::cout << n << '\t' << sigma << "\n";
  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    if (format == "csv") {
      f << "N,sigma\n";
      for (const auto& [n, sigma] : table) f << n << ',' << sigma << '\n';
    } else {
      nlohmann::json doc;
      doc["schema_version"] = 1;
      doc["table"] = nlohmann::json::array();
      for (const auto& [n, sigma] : table) {
        doc["table"].push_back({{"N", n}, {"sigma", sigma}});
      }
      f << doc.dump(2) << "\n";
    }
  }
  return kExitOk;
}

StateVector named_state(const std::string& name, unsigned n, Rng& rng) {
  if (name == "zero") return StateVector::zero_state(n);
  if (name == "plus") return plus_state(n);
  if (name == "bell") return bell_state();
  if (name == "ghz") return ghz_state(n);
  if (name == "haar") return haar_random_state(n, rng);
  if (name == "product") return random_product_state(n, rng);
  throw CLI::ValidationError("--states", "unknown state family: " + name);
}

int cmd_netcomp(unsigned n, double epsilon, unsigned max_gates, const std::string& states,
                std::uint64_t seed, const std::string& out, const std::string& format,
                const std::string& out_dir) {
  SynthesisConfig cfg;
  cfg.n = n;
  cfg.epsilon = epsilon;
  cfg.max_gates = max_gates;

  std::ostringstream csv;
  nlohmann::json jrows = nlohmann::json::array();
  csv << "state_id,n,epsilon,circuit_len,h_net_upper_bits,schmidt_ranks\n";
  std::istringstream list(states);
  std::string item;
  while (std::getline(list, item, ',')) {
    std::string family = item;
    unsigned count = 1;
    if (auto colon = item.find(':'); colon != std::string::npos) {
      family = item.substr(0, colon);
      count = static_cast<unsigned>(std::stoul(item.substr(colon + 1)));
    }
    for (unsigned i = 0; i < count; ++i) {
      Rng rng = Rng::for_run(seed, (static_cast<std::uint64_t>(std::hash<std::string>{}(family))
                                    << 8) + i);
      StateVector target = named_state(family, n, rng);
      std::string state_id = count == 1 ? family : family + "_" + std::to_string(i);
      auto circuit = synthesize(target, cfg);
      csv << state_id << ',' << n << ',' << epsilon << ',';
      if (circuit) {
        csv << circuit->ops.size() << ','
            << encode_circuit(*circuit, n).size() << ',';
      } else {
        csv << "NA,NA,";
      }
      EntanglementReport report = classify_entanglement(target);
      std::string ranks;
      for (std::size_t r = 0; r < report.ranks.size(); ++r) {
        if (r) ranks += '|';
        ranks += std::to_string(report.ranks[r].second);
      }
      csv << ranks << '\n';
      nlohmann::json row;
      row["state_id"] = state_id;
      row["n"] = n;
      row["epsilon"] = epsilon;
      if (circuit) {
        row["circuit_len"] = circuit->ops.size();
        row["h_net_upper_bits"] = encode_circuit(*circuit, n).size();
      } else {
        row["circuit_len"] = nullptr;
        row["h_net_upper_bits"] = nullptr;
      }
      row["schmidt_ranks"] = ranks;
      jrows.push_back(std::move(row));
    }
  }
  std::string rendered;
  if (format == "json") {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["states"] = std::move(jrows);
    rendered = doc.dump(2) + "\n";
  } else {
    rendered = csv.str();
  }
  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    f << rendered;
  } else {
    std::cout << rendered;
  }
  return kExitOk;
}

int cmd_fit(const std::string& in_path, const std::string& out, const std::string& format,
            const std::string& out_dir) {
  std::vector<ScalingSample> samples;
  if (in_path == "-") {
    samples = import_samples_csv(std::cin);
  } else {
    std::ifstream f(in_path);
    if (!f) throw AnalysisError("cannot open input file: " + in_path);
    samples = import_samples_csv(f);
  }
  FitResult fit = fit_scaling(samples);
  std::cout << fit_to_json(fit) << "\n";
  if (!out.empty()) {
    auto f = open_out(resolve_out(out, out_dir));
    if (format == "csv") {
      f << "model,attempted,slope,intercept,normalized_residual,chosen\n";
      for (const auto& m : fit.fits) {
        char num[64];
        f << fit_model_name(m.model) << ',' << (m.attempted ? 1 : 0) << ',';
        std::snprintf(num, sizeof(num), "%.17g", m.slope);
        f << num << ',';
        std::snprintf(num, sizeof(num), "%.17g", m.intercept);
        f << num << ',';
        std::snprintf(num, sizeof(num), "%.17g", m.normalized_residual);
        f << num << ',' << (m.model == fit.chosen ? 1 : 0) << '\n';
      }
    } else {
      f << fit_to_json(fit) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omegalab: algorithmic-evolution simulation lab"};
  app.require_subcommand(1);
  app.set_config("--config");

  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--jobs", jobs, "worker threads for sweeps and enumeration");
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "directory for relative output paths")
      ->envname("OMEGALAB_OUT_DIR");

  // Shared scenario options.
  std::string scenario = "id", model = "classical", mode = "fast-forward";
  std::string seed_list;
  unsigned seed_count = 1;
  std::string out, format = "json";

  OracleConfig oracle_cfg;
  auto add_oracle_opts = [&](CLI::App* cmd) {
    cmd->add_option("--oracle", oracle_cfg.backend, "oracle backend")
        ->check(CLI::IsMember({"random", "enumerated"}));
    cmd->add_option("--omega-seed", [&](const CLI::results_t& r) {
          oracle_cfg.omega_seed = parse_seed_word(r[0]);
          return true;
        }, "oracle seed (decimal or 0x hex)");
    cmd->add_option("--oracle-max-len", oracle_cfg.max_len, "enumerated oracle program length cap");
    cmd->add_option("--oracle-budget", oracle_cfg.budget, "enumerated oracle step budget");
  };
  auto add_run_opts = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "evolution scenario")
        ->check(CLI::IsMember({"exhaustive", "id", "cumulative"}));
    cmd->add_option("--model", model, "organism model")
        ->check(CLI::IsMember({"classical", "q-sep", "q-ent"}));
    cmd->add_option("--mode", mode, "cumulative mode")
        ->check(CLI::IsMember({"simulate", "fast-forward"}));
    cmd->add_option("--seed", seed_list, "explicit seed list, comma separated");
    cmd->add_option("--seeds", seed_count, "seed count, expands to 1..count");
    add_oracle_opts(cmd);
  };

  // evolve
  auto* evolve = app.add_subcommand("evolve", "run one scenario at a fixed N");
  evolve->fallthrough();
  unsigned evolve_n = 8;
  std::string trace_path;
  evolve->add_option("--n", evolve_n, "target size")->required();
  evolve->add_option("--trace", trace_path, "write per-run trace CSV here");
  evolve->add_option("--out", out, "write run results here");
  evolve->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  add_run_opts(evolve);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario across N values and seeds");
  sweep_cmd->fallthrough();
  std::string n_list;
  bool do_fit = false;
  sweep_cmd->add_option("--n", n_list, "comma-separated N values")->required();
  sweep_cmd->add_flag("--fit", do_fit, "fit scaling models and print the result");
  sweep_cmd->add_option("--out", out, "write samples here");
  sweep_cmd->add_option("--format", format, "samples format")
      ->check(CLI::IsMember({"csv", "json"}));
  add_run_opts(sweep_cmd);

  // omega
  auto* omega_cmd = app.add_subcommand("omega", "enumerate the toy machine domain");
  omega_cmd->fallthrough();
  unsigned omega_max_len = 12;
  std::uint64_t omega_budget = 10000;
  std::string domain_out, report_out;
  omega_cmd->add_option("--max-len", omega_max_len, "program length bound (strict)");
  omega_cmd->add_option("--budget", omega_budget, "step budget per program");
  omega_cmd->add_option("--domain-out", domain_out, "write the halting domain TSV here");
  omega_cmd->add_option("--report-out", report_out,
                        "write the complexity-vs-probability report here");
  omega_cmd->add_option("--out", out, "write the summary here");
  omega_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // bb
  auto* bb_cmd = app.add_subcommand("bb", "busy-beaver table of the toy machine");
  bb_cmd->fallthrough();
  unsigned bb_max_n = 15;
  std::uint64_t bb_budget = 100000;
  bb_cmd->add_option("--max-n", bb_max_n, "largest program length");
  bb_cmd->add_option("--budget", bb_budget, "step budget per program");
  bb_cmd->add_option("--out", out, "write the table here");
  bb_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // netcomp
  auto* netcomp_cmd = app.add_subcommand("netcomp", "synthesize circuits and report complexity");
  netcomp_cmd->fallthrough();
  unsigned net_n = 2;
  double net_eps = 0.01;
  unsigned net_max_gates = 0;
  std::string net_states = "zero,bell,plus";
  std::string net_format = "csv";  // the report is CSV-shaped by default
  std::uint64_t net_seed = 1;
  netcomp_cmd->add_option("--n", net_n, "qubit count (1..4)");
  netcomp_cmd->add_option("--epsilon", net_eps, "precision parameter");
  netcomp_cmd->add_option("--max-gates", net_max_gates, "search depth cap (0 = default)");
  netcomp_cmd->add_option("--states", net_states,
                          "comma list: zero|plus|bell|ghz|haar:K|product:K");
  netcomp_cmd->add_option("--seed", net_seed, "seed for random state families");
  netcomp_cmd->add_option("--out", out, "write the report here");
  netcomp_cmd->add_option("--format", net_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit scaling models to an existing samples CSV");
  fit_cmd->fallthrough();
  std::string fit_in;
  fit_cmd->add_option("--in", fit_in, "samples CSV path, or - for stdin")->required();
  fit_cmd->add_option("--out", out, "write the fit here");
  fit_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    oracle_cfg.jobs = jobs;
    if (evolve->parsed()) {
      OracleFactory oracles(oracle_cfg);
      return cmd_evolve(scenario, model, mode, evolve_n, resolve_seeds(seed_list, seed_count),
                        oracles, trace_path, out, format, out_dir);
    }
    if (sweep_cmd->parsed()) {
      OracleFactory oracles(oracle_cfg);
      return cmd_sweep(scenario, model, mode, parse_n_list(n_list),
                       resolve_seeds(seed_list, seed_count), oracles, do_fit, out, format, jobs,
                       out_dir);
    }
    if (omega_cmd->parsed()) {
      return cmd_omega(omega_max_len, omega_budget, jobs, domain_out, report_out, out, format,
                       out_dir);
    }
    if (bb_cmd->parsed()) return cmd_bb(bb_max_n, bb_budget, jobs, out, format, out_dir);
    if (netcomp_cmd->parsed()) {
      return cmd_netcomp(net_n, net_eps, net_max_gates, net_states, net_seed, out, net_format,
                         out_dir);
    }
    if (fit_cmd->parsed()) return cmd_fit(fit_in, out, format, out_dir);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const OracleUnknownError& e) {
    std::cerr << "oracle abort: " << e.what() << "\n";
    return kExitAbort;
  } catch (const CapExceededError& e) {
    std::cerr << "scenario abort: " << e.what() << "\n";
    return kExitAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
