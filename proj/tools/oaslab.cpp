#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oaslab/harness.hpp"
#include "oaslab/parallel.hpp"
#include "oaslab/verify.hpp"

namespace {

using namespace oaslab;

void print_table(const ResultTable& table) {
  std::printf("%-14s %-5s %8s %6s %4s %5s %3s %9s %9s %8s %9s\n", "scheme",
              "sweep", "value", "B", "L", "K", "M", "mse_db", "ci_db",
              "trials", "wall_s");
  for (const auto& r : table.rows)
    std::printf("%-14s %-5s %8g %6d %4d %5d %3d %9.3f %9.3f %8d %9.2f\n",
                r.scheme.c_str(), r.sweep_name.c_str(), r.sweep_value, r.B, r.L,
                r.K, r.M, r.mse_db, r.ci_db, r.trials, r.wall_s);
}

struct RunArgs {
  std::string preset;
  std::string scheme;
  int B = 100, L = 4, M = 8;
  double xi = 0.1, sigma0_sq = 0.01, T = 1.0;
  double rc = 0.0;
  int K = 0;
  int trials = 0;
  std::uint64_t seed = 1;
  std::string metric = "exact";
  std::string principles = "identity";
  std::string out;
  int workers = 0;
  bool timing = false;
};

AdaptationMetric parse_metric(const std::string& name) {
  if (name == "paper") return AdaptationMetric::paper;
  if (name == "exact") return AdaptationMetric::exact;
  throw CLI::ValidationError("--metric must be paper or exact");
}

PrincipleKind parse_principles(const std::string& name) {
  if (name == "identity") return PrincipleKind::identity;
  if (name == "random-orthogonal") return PrincipleKind::random_orthogonal;
  throw CLI::ValidationError("--principles must be identity or random-orthogonal");
}

int run_command(const RunArgs& args) {
  std::vector<ExperimentSpec> specs;
  if (!args.preset.empty()) {
    if (args.preset == "fig1")
      specs = preset_fig1(args.seed);
    else if (args.preset == "fig2")
      specs = preset_fig2(args.seed);
    else
      throw CLI::ValidationError("--preset must be fig1 or fig2");
    for (auto& spec : specs) {
      if (args.trials > 0) spec.trials = args.trials;
      spec.metric = parse_metric(args.metric);
      spec.principles = parse_principles(args.principles);
    }
  } else {
    if (args.scheme.empty())
      throw CLI::ValidationError("either --preset or --scheme is required");
    const bool single_frame = args.scheme == "glasso";
    ExperimentSpec spec(ModelParams(args.B, args.L, args.xi, args.sigma0_sq,
                                    args.T, single_frame ? 1 : args.M));
    spec.scheme = scheme_from_string(args.scheme);
    spec.sweep_name = "rc";
    double rc = args.rc;
    if (rc <= 0.0) {
      if (args.K <= 0)
        throw CLI::ValidationError("one of --rc or --K is required with --scheme");
      rc = static_cast<double>(spec.model.N()) / args.K;
    }
    spec.sweep_values = {rc};
    spec.trials = args.trials > 0 ? args.trials : 1000;
    spec.seed = args.seed;
    spec.metric = parse_metric(args.metric);
    spec.principles = parse_principles(args.principles);
    specs.push_back(std::move(spec));
  }

  ResultTable merged;
  for (const auto& spec : specs) {
    ResultTable t = run_experiment(spec, args.workers);
    merged.rows.insert(merged.rows.end(), t.rows.begin(), t.rows.end());
  }
  print_table(merged);

  if (!args.out.empty()) {
    // wall_s is a volatile diagnostic; strip it unless asked for so the same
    // spec+seed always yields byte-identical files
    if (!args.timing) merged.clear_timing();
    emit_csv(merged, args.out);
    std::cerr << "wrote " << args.out << "\n";
  }
  return 0;
}

int plot_command(const std::vector<std::string>& inputs, const std::string& out,
                 const SvgAxes& axes) {
  std::vector<ResultTable> tables;
  tables.reserve(inputs.size());
  for (const auto& path : inputs) tables.push_back(parse_csv_file(path));
  emit_svg(tables, out, axes);
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int verify_command() {
  const VerifyReport report = run_verification();
  for (const auto& c : report.checks)
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oaslab: block-sparse adaptive-sensing simulation lab"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run = app.add_subcommand("run", "run an experiment and write a CSV");
  run->add_option("--preset", args.preset, "fig1 or fig2");
  run->add_option("--scheme", args.scheme,
                  "blockwise-oas, basic-oas or glasso (ad-hoc single point)");
  run->add_option("--B", args.B, "block count");
  run->add_option("--L", args.L, "block length");
  run->add_option("--xi", args.xi, "sparsity factor in (0,1)");
  run->add_option("--M", args.M, "subframe count");
  run->add_option("--rc", args.rc, "compression rate N/K");
  run->add_option("--K", args.K, "measurement rows (alternative to --rc)");
  run->add_option("--sigma0-sq", args.sigma0_sq, "unit-time noise variance");
  run->add_option("--T", args.T, "total sensing time");
  run->add_option("--trials", args.trials, "Monte-Carlo trials (overrides preset)");
  run->add_option("--seed", args.seed, "master seed");
  run->add_option("--metric", args.metric, "adaptation metric: paper or exact");
  run->add_option("--principles", args.principles,
                  "identity or random-orthogonal");
  run->add_option("--out", args.out, "output CSV path");
  run->add_option("--workers", args.workers,
                  "worker threads (OASLAB_THREADS overrides)");
  run->add_flag("--timing", args.timing, "include wall-clock column in the CSV");

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plot.svg";
  SvgAxes axes;
  auto* plot = app.add_subcommand("plot", "render CSV results as an SVG chart");
  plot->add_option("--in", plot_inputs, "input CSV file(s)")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();
  plot->add_option("--title", axes.title, "chart title");
  plot->add_option("--xlabel", axes.xlabel, "x axis label");
  plot->add_option("--ylabel", axes.ylabel, "y axis label");

  auto* verify =
      app.add_subcommand("verify", "run the oracle agreement suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(args);
    if (plot->parsed()) return plot_command(plot_inputs, plot_out, axes);
    if (verify->parsed()) return verify_command();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
