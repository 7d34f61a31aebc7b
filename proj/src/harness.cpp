#include "oaslab/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oaslab/parallel.hpp"

namespace oaslab {

namespace {

constexpr std::uint64_t kGlassoTag = 0x61a550ull;

int round_to_int(double v) { return static_cast<int>(std::llround(v)); }

[[noreturn]] void sweep_error(const std::string& what, double value) {
  std::ostringstream msg;
  msg << "ExperimentSpec: " << what << " (sweep value " << value << ")";
  throw std::invalid_argument(msg.str());
}

// 95% half-width of 10*log10(mean) via the delta method.
double ci_halfwidth_db(const Vec& samples, double mean) {
  const Index n = samples.size();
  if (n < 2 || !(mean > 0.0)) return 0.0;
  const double var = (samples.array() - mean).square().sum() / double(n - 1);
  const double se = std::sqrt(var / double(n));
  return 10.0 / std::log(10.0) * 1.96 * se / mean;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::blockwise_oas: return "blockwise-oas";
    case Scheme::basic_oas: return "basic-oas";
    case Scheme::glasso: return "glasso";
  }
  throw std::logic_error("to_string: unknown scheme");
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "blockwise-oas") return Scheme::blockwise_oas;
  if (name == "basic-oas") return Scheme::basic_oas;
  if (name == "glasso") return Scheme::glasso;
  throw std::invalid_argument("unknown scheme: " + name);
}

SweepPoint resolve_sweep_point(const ExperimentSpec& spec, double value) {
  const int N = spec.model.N();
  SweepPoint p;
  p.value = value;
  if (spec.sweep_name == "rc") {
    if (!(value > 0.0)) sweep_error("compression rate must be positive", value);
    p.B = spec.model.B;
    p.L = spec.model.L;
    p.K = round_to_int(N / value);
  } else if (spec.sweep_name == "L") {
    const int L = round_to_int(value);
    if (L < 1 || static_cast<double>(L) != value)
      sweep_error("block length must be a positive integer", value);
    if (N % L != 0) sweep_error("block length must divide N", value);
    if (!(spec.fixed_rc > 0.0))
      sweep_error("an L sweep requires fixed_rc > 0", value);
    p.B = N / L;
    p.L = L;
    p.K = round_to_int(N / spec.fixed_rc);
  } else {
    throw std::invalid_argument("ExperimentSpec: sweep_name must be \"rc\" or \"L\"");
  }
  return p;
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  if (sweep_values.empty())
    throw std::invalid_argument("ExperimentSpec: sweep_values must be nonempty");
  if (!(glasso.tol > 0.0) || glasso.max_iter < 1)
    throw std::invalid_argument("ExperimentSpec: invalid solver options");
  for (double lam : glasso.lambda_grid)
    if (!(lam > 0.0))
      throw std::invalid_argument("ExperimentSpec: lambda grid must be strictly positive");
  for (double v : sweep_values) {
    const SweepPoint p = resolve_sweep_point(*this, v);
    if (p.K < p.L) sweep_error("K = round(N/rc) must allow F >= 1", v);
    if (scheme == Scheme::glasso && p.K < 1) sweep_error("K must be >= 1", v);
  }
}

void ResultTable::clear_timing() {
  for (auto& row : rows) row.wall_s = 0.0;
}

ResultTable run_experiment(const ExperimentSpec& spec, int workers) {
  spec.validate();
  workers = resolve_workers(workers);

  ResultTable table;
  for (std::size_t si = 0; si < spec.sweep_values.size(); ++si) {
    const SweepPoint point = resolve_sweep_point(spec, spec.sweep_values[si]);
    const ModelParams model(point.B, point.L, spec.model.xi, spec.model.sigma0_sq,
                            spec.model.T, spec.model.M);
    const auto t0 = std::chrono::steady_clock::now();

    ResultRow row;
    row.scheme = to_string(spec.scheme);
    row.sweep_name = spec.sweep_name;
    row.sweep_value = point.value;
    row.B = point.B;
    row.L = point.L;
    row.K = point.K;
    row.M = model.M;
    row.xi = model.xi;
    row.trials = spec.trials;

    Vec per_trial(spec.trials);
    if (spec.scheme == Scheme::glasso) {
      const TuneScenario sc{model, point.K};
      const TuneResult tuned = tune_lambda(
          sc, spec.trials, spec.glasso, derive_seed(spec.seed, si, kGlassoTag),
          workers);
      per_trial = tuned.per_trial_mse;
      row.mse = tuned.mse_at_star;
    } else {
      const OasOptions options{spec.metric, spec.principles};
      parallel_for(spec.trials, workers, [&](int t) {
        Rng rng = make_rng(derive_seed(spec.seed, si, t));
        const BlockSparseSignal sig = sample_block_sparse(model, rng);
        const OasRun run =
            spec.scheme == Scheme::blockwise_oas
                ? run_blockwise_oas(model, point.K, sig.values, rng, options)
                : run_basic_oas(model, point.K, sig.values, rng, options);
        per_trial[t] = run.mse_trace[model.M - 1];
      });
      row.mse = per_trial.mean();
    }

    row.mse_db = to_db(row.mse);
    row.ci_db = ci_halfwidth_db(per_trial, row.mse);
    row.wall_s = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - t0).count();
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<ExperimentSpec> preset_fig1(std::uint64_t seed) {
  const ModelParams oas_model(100, 4, 0.1, 0.01, 1.0, 8);
  const ModelParams glasso_model(100, 4, 0.1, 0.01, 1.0, 1);  // single frame
  const std::vector<double> rc = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};

  std::vector<ExperimentSpec> specs;
  for (Scheme scheme :
       {Scheme::blockwise_oas, Scheme::basic_oas, Scheme::glasso}) {
    ExperimentSpec spec(scheme == Scheme::glasso ? glasso_model : oas_model);
    spec.scheme = scheme;
    spec.sweep_name = "rc";
    spec.sweep_values = rc;
    spec.trials = scheme == Scheme::glasso ? 500 : 2000;
    spec.seed = seed;
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<ExperimentSpec> preset_fig2(std::uint64_t seed) {
  const ModelParams model(1600, 1, 0.1, 0.01, 1.0, 8);
  std::vector<ExperimentSpec> specs;
  for (Scheme scheme : {Scheme::blockwise_oas, Scheme::basic_oas}) {
    ExperimentSpec spec(model);
    spec.scheme = scheme;
    spec.sweep_name = "L";
    spec.sweep_values = {1.0, 2.0, 4.0, 8.0, 16.0};
    spec.fixed_rc = 4.0;
    spec.trials = 1000;
    spec.seed = seed;
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace oaslab
