#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oaslab/glasso.hpp"
#include "oaslab/oas.hpp"
#include "oaslab/sigmodel.hpp"

namespace oaslab {

enum class Scheme { blockwise_oas, basic_oas, glasso };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

// Declarative Monte-Carlo experiment: one scheme swept over either the
// compression rate ("rc", K = round(N / rc)) or the block length ("L", with N
// fixed, B = N/L and K = round(N / fixed_rc)).
struct ExperimentSpec {
  Scheme scheme = Scheme::blockwise_oas;
  ModelParams model;
  std::string sweep_name = "rc";
  std::vector<double> sweep_values;
  double fixed_rc = 0.0;  // only consulted for an "L" sweep
  int trials = 1;
  std::uint64_t seed = 1;
  AdaptationMetric metric = AdaptationMetric::exact;
  PrincipleKind principles = PrincipleKind::identity;
  GlassoOptions glasso;

  explicit ExperimentSpec(ModelParams m) : model(m) {}

  // Throws with the offending sweep value in the message.
  void validate() const;
};

// Geometry of a single sweep point.
struct SweepPoint {
  double value = 0.0;
  int B = 0, L = 0, K = 0;
};
SweepPoint resolve_sweep_point(const ExperimentSpec& spec, double value);

struct ResultRow {
  std::string scheme;
  std::string sweep_name;
  double sweep_value = 0.0;
  int B = 0, L = 0, K = 0, M = 0;
  double xi = 0.0;
  int trials = 0;
  double mse = 0.0;
  double mse_db = 0.0;
  double ci_db = 0.0;  // 95% half-width in dB (delta method)
  double wall_s = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  void clear_timing();  // zero the wall_s column for reproducible artifacts
};

// Runs spec.trials independent trials per sweep value and aggregates. The
// per-trial seed is a pure function of (seed, sweep index, trial index), and
// trial results are reduced in index order, so the table is identical for any
// worker count. workers = 0 defers to OASLAB_THREADS / hardware concurrency.
ResultTable run_experiment(const ExperimentSpec& spec, int workers = 0);

// B=100, L=4, xi=0.1, T=1, sigma0^2=0.01, M=8, R_c in {1, 1.5, ..., 5};
// one spec per scheme.
std::vector<ExperimentSpec> preset_fig1(std::uint64_t seed = 1);

// N=1600, R_c=4 (K=400), M=8, xi=0.1, L in {1,2,4,8,16}, B = 1600/L;
// block-wise and basic OAS.
std::vector<ExperimentSpec> preset_fig2(std::uint64_t seed = 1);

// CSV with header scheme,sweep_name,sweep_value,B,L,K,M,xi,trials,mse,mse_db,
// ci_db,wall_s; floats at 12 significant digits; rows sorted by
// (scheme, sweep value).
void emit_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::string& path);
ResultTable parse_csv(std::istream& in);
ResultTable parse_csv_file(const std::string& path);

struct SvgAxes {
  std::string title;
  std::string xlabel = "sweep value";
  std::string ylabel = "MSE [dB]";
};

// Self-contained SVG line chart: one series per scheme, x = sweep value,
// y = dB MSE, legend included, no external assets.
void emit_svg(const std::vector<ResultTable>& tables, const std::string& path,
              const SvgAxes& axes);
void emit_svg(const std::vector<ResultTable>& tables, std::ostream& out,
              const SvgAxes& axes);

}  // namespace oaslab
