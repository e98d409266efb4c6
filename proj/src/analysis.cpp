#include "omegalab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "omegalab/errors.hpp"

namespace omegalab {

using nlohmann::json;

const char* fit_model_name(FitModel m) {
  switch (m) {
    case FitModel::Linear: return "linear";
    case FitModel::Power: return "power";
    case FitModel::Exponential: return "exponential";
    case FitModel::DoubleExponential: return "double_exponential";
  }
  return "?";
}

const ModelFit& FitResult::chosen_fit() const { return fit_for(chosen); }

const ModelFit& FitResult::fit_for(FitModel m) const {
  for (const auto& f : fits) {
    if (f.model == m) return f;
  }
  throw AnalysisError("FitResult: model not present");
}

std::vector<ScalingSample> sweep(const RunFn& run, const std::vector<unsigned>& ns,
                                 const std::vector<std::uint64_t>& seeds, unsigned jobs) {
  if (ns.empty() || seeds.empty()) throw AnalysisError("sweep: empty n or seed list");
  struct Slot {
    std::optional<double> t;
    std::string error;
  };
  std::vector<Slot> slots(ns.size() * seeds.size());
  auto run_one = [&](std::size_t index) {
    unsigned n = ns[index / seeds.size()];
    std::uint64_t seed = seeds[index % seeds.size()];
    try {
      slots[index].t = run(n, seed);
    } catch (const GuardError&) {
      throw;  // misconfiguration, not a stochastic abort
    } catch (const std::exception& e) {
      slots[index].error = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= slots.size()) return;
        run_one(i);
      }
    };
    std::vector<std::future<void>> tasks;
    unsigned workers = std::min<std::size_t>(jobs, slots.size());
    for (unsigned j = 0; j < workers; ++j) {
      tasks.push_back(std::async(std::launch::async, worker));
    }
    for (auto& t : tasks) t.get();
  }

  std::vector<ScalingSample> out;
  out.reserve(ns.size());
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    ScalingSample sample;
    sample.n = ns[ni];
    std::vector<double> values;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const Slot& slot = slots[ni * seeds.size() + si];
      if (slot.t) {
        values.push_back(*slot.t);
        sample.seeds.push_back(seeds[si]);
      } else {
        std::cerr << "sweep: run aborted (n=" << sample.n << ", seed=" << seeds[si]
                  << "): " << slot.error << "\n";
      }
    }
    if (values.empty()) {
      throw AnalysisError("sweep: every run aborted for n=" + std::to_string(sample.n));
    }
    sample.trials = static_cast<unsigned>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    sample.mean_t = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - sample.mean_t) * (v - sample.mean_t);
    sample.std_t = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    out.push_back(std::move(sample));
  }
  return out;
}

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double normalized_residual = 0.0;
};

// Ordinary least squares; residual is the MSE over the variance of y, so
// residuals compare across transforms.
std::optional<Line> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12) return std::nullopt;  // degenerate abscissa
  Line line;
  line.slope = (n * sxy - sx * sy) / det;
  line.intercept = (sy - line.slope * sx) / n;
  double mse = 0.0, var = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double err = y[i] - (line.intercept + line.slope * x[i]);
    mse += err * err;
    var += (y[i] - mean_y) * (y[i] - mean_y);
  }
  if (var < 1e-30) return std::nullopt;  // constant data
  line.normalized_residual = mse / var;
  return line;
}

}  // namespace

FitResult fit_scaling(const std::vector<ScalingSample>& samples) {
  if (samples.size() < 4) throw AnalysisError("fit_scaling: need at least 4 samples");
  std::vector<double> n_lin, n_log, t_lin, t_log, t_loglog;
  bool loglog_ok = true;
  {
    std::vector<unsigned> distinct;
    for (const auto& s : samples) distinct.push_back(s.n);
    std::sort(distinct.begin(), distinct.end());
    if (std::adjacent_find(distinct.begin(), distinct.end()) != distinct.end()) {
      throw AnalysisError("fit_scaling: duplicate n values");
    }
  }
  for (const auto& s : samples) {
    if (s.n < 1 || s.mean_t < 1.0) throw AnalysisError("fit_scaling: samples need n>=1, T>=1");
    n_lin.push_back(static_cast<double>(s.n));
    n_log.push_back(std::log2(static_cast<double>(s.n)));
    t_lin.push_back(s.mean_t);
    t_log.push_back(std::log2(s.mean_t));
    if (s.mean_t < 4.0) {
      loglog_ok = false;
    } else {
      t_loglog.push_back(std::log2(std::log2(s.mean_t)));
    }
  }

  FitResult out;
  auto add = [&out](FitModel model, std::optional<Line> line) {
    ModelFit f;
    f.model = model;
    if (line) {
      f.attempted = true;
      f.slope = line->slope;
      f.intercept = line->intercept;
      f.normalized_residual = line->normalized_residual;
    }
    out.fits.push_back(f);
  };
  add(FitModel::Linear, least_squares(n_lin, t_lin));
  add(FitModel::Power, least_squares(n_log, t_log));
  add(FitModel::Exponential, least_squares(n_lin, t_log));
  add(FitModel::DoubleExponential,
      loglog_ok ? least_squares(n_lin, t_loglog) : std::nullopt);

  bool any = false;
  double best = 0.0;
  for (const auto& f : out.fits) {
    if (!f.attempted) continue;
    if (!any || f.normalized_residual < best - 1e-12) {
      best = f.normalized_residual;
      out.chosen = f.model;
      any = true;
    }
  }
  if (!any) throw AnalysisError("fit_scaling: degenerate (constant) data");
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void export_samples_csv(const std::vector<ScalingSample>& samples, std::ostream& out) {
  out << "N,trials,mean_T,std_T\n";
  for (const auto& s : samples) {
    out << s.n << ',' << s.trials << ',' << fmt_double(s.mean_t) << ',' << fmt_double(s.std_t)
        << '\n';
  }
}

std::vector<ScalingSample> import_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "N,trials,mean_T,std_T") {
    throw AnalysisError("import_samples_csv: bad header");
  }
  std::vector<ScalingSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ScalingSample s;
    std::istringstream row(line);
    std::string field;
    try {
      if (!std::getline(row, field, ',')) throw AnalysisError("short row");
      s.n = static_cast<unsigned>(std::stoul(field));
      if (!std::getline(row, field, ',')) throw AnalysisError("short row");
      s.trials = static_cast<unsigned>(std::stoul(field));
      if (!std::getline(row, field, ',')) throw AnalysisError("short row");
      s.mean_t = std::stod(field);
      if (!std::getline(row, field, ',')) throw AnalysisError("short row");
      s.std_t = std::stod(field);
    } catch (const std::exception&) {
      throw AnalysisError("import_samples_csv: malformed row: " + line);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string samples_to_json(const std::vector<ScalingSample>& samples) {
  json doc;
  doc["schema_version"] = 1;
  doc["samples"] = json::array();
  for (const auto& s : samples) {
    json row;
    row["N"] = s.n;
    row["trials"] = s.trials;
    row["mean_T"] = s.mean_t;
    row["std_T"] = s.std_t;
    row["seeds"] = s.seeds;
    doc["samples"].push_back(std::move(row));
  }
  return doc.dump(2);
}

std::string fit_to_json(const FitResult& fit) {
  json doc;
  doc["schema_version"] = 1;
  doc["chosen"] = fit_model_name(fit.chosen);
  doc["models"] = json::array();
  for (const auto& f : fit.fits) {
    json row;
    row["model"] = fit_model_name(f.model);
    row["attempted"] = f.attempted;
    if (f.attempted) {
      row["slope"] = f.slope;
      row["intercept"] = f.intercept;
      row["normalized_residual"] = f.normalized_residual;
    }
    doc["models"].push_back(std::move(row));
  }
  return doc.dump(2);
}

void export_trace_csv(const std::vector<TraceRow>& rows, std::ostream& out) {
  out << "run_id,scenario,regime,N,seed,T,accepted,wall_ms\n";
  for (const auto& r : rows) {
    out << r.run_id << ',' << r.scenario << ',' << r.regime << ',' << r.n << ',' << r.seed << ','
        << fmt_double(r.t) << ',' << r.accepted << ',' << fmt_double(r.wall_ms) << '\n';
  }
}

}  // namespace omegalab
