#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace omegalab {

struct ScalingSample {
  unsigned n = 0;
  unsigned trials = 0;
  double mean_t = 0.0;
  double std_t = 0.0;
  std::vector<std::uint64_t> seeds;
};

enum class FitModel { Linear, Power, Exponential, DoubleExponential };

const char* fit_model_name(FitModel m);

struct ModelFit {
  FitModel model = FitModel::Linear;
  double slope = 0.0;      // slope / exponent / rate, base-2 logs throughout
  double intercept = 0.0;  // in the model's transformed coordinates
  double normalized_residual = 0.0;
  bool attempted = false;
};

struct FitResult {
  std::vector<ModelFit> fits;  // in FitModel declaration order
  FitModel chosen = FitModel::Linear;
  const ModelFit& chosen_fit() const;
  const ModelFit& fit_for(FitModel m) const;
};

// One scenario run; returns the measured T.  Aborts (oracle Unknown, caps)
// surface as exceptions and are excluded from aggregation with a warning.
using RunFn = std::function<double(unsigned n, std::uint64_t seed)>;

// Runs every (n, seed) pair, parallel up to `jobs` workers; aggregation is
// performed in fixed index order, so output is identical for any job count.
// Throws AnalysisError if every seed of some n aborted.
std::vector<ScalingSample> sweep(const RunFn& run, const std::vector<unsigned>& ns,
                                 const std::vector<std::uint64_t>& seeds, unsigned jobs = 1);

// Least squares in transformed coordinates:
//   Linear             T          vs N
//   Power              log2 T     vs log2 N
//   Exponential        log2 T     vs N
//   DoubleExponential  log2 log2 T vs N   (only when every T >= 4)
// Chosen model minimizes mean squared error normalized by the variance of
// the transformed dependent variable; ties go to the simpler model in the
// listed order.  Requires >= 4 samples with distinct n and nonconstant T.
FitResult fit_scaling(const std::vector<ScalingSample>& samples);

// CSV with header "N,trials,mean_T,std_T"; floats carry 17 significant
// digits so round-trips are exact.
void export_samples_csv(const std::vector<ScalingSample>& samples, std::ostream& out);
std::vector<ScalingSample> import_samples_csv(std::istream& in);

// Versioned JSON forms ("schema_version": 1).
std::string samples_to_json(const std::vector<ScalingSample>& samples);
std::string fit_to_json(const FitResult& fit);

// Long-format per-run rows for external plotting:
// run_id,scenario,regime,N,seed,T,accepted,wall_ms.
struct TraceRow {
  std::uint64_t run_id = 0;
  std::string scenario;
  std::string regime;
  unsigned n = 0;
  std::uint64_t seed = 0;
  double t = 0.0;
  std::uint64_t accepted = 0;
  double wall_ms = 0.0;
};

void export_trace_csv(const std::vector<TraceRow>& rows, std::ostream& out);

}  // namespace omegalab
