#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svag/data_io.hpp"
#include "svag/problems.hpp"
#include "svag/solver.hpp"

namespace svag {

/// Experiment description, loadable from a JSON config file. See the README
/// for the schema. step_size absent means lambda = 1/(2L).
struct ExperimentConfig {
  // problem
  std::string problem = "logistic";  // logistic | square-hinge | rotation
  std::string dataset;               // LibSVM path; empty -> synthetic data
  std::vector<double> positive_labels{1.0};
  double gamma = 1e-3;
  std::size_t synthetic_n = 500;
  Eigen::Index synthetic_dim = 20;
  std::uint64_t synthetic_seed = 1;
  std::size_t rotation_n = 100;
  double rotation_tau_deg = 179.0;

  // method
  std::string method = "svag";  // svag | asvag | diagonal-variant
  std::optional<double> step_size;
  double theta = 1.0;                 // svag; absolute value
  std::optional<double> theta_over_n; // svag; overrides theta when set
  double beta = 0.9;
  double epsilon = 1e-8;
  std::optional<double> delta;        // asvag weight limit; default n

  // run
  std::uint64_t iterations = 0;
  std::size_t replications = 20;
  std::optional<std::uint64_t> checkpoint_stride;  // default n (one epoch)
  std::uint64_t seed = 0;
  TableInit table_init = TableInit::Zero;

  void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct ExperimentResult {
  /// Per-replication checkpoint rows plus a derived averaged trace stored
  /// under replication -1 (mean over replications, common checkpoints only).
  std::vector<TraceRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
  double step_size = 0.0;
  double smoothness = 0.0;
};

/// Runs `replications` seeded runs (stream r derived from (seed, r)), each
/// recording the squared full-map norm, objective when defined, and the
/// adaptive theta when applicable, at every checkpoint. A run whose iterate
/// becomes non-finite or exceeds 1e8 (1 + ||x0||) is marked diverged: its
/// row records an infinite gradient norm and the run stops there.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_experiment_csv(const ExperimentResult& result, std::ostream& out);

struct SweepCell {
  double theta = 0.0;
  double lambda_L = 0.0;     // step size in units of 1/L
  double rel_distance = 0.0; // ||x_K - x*|| / ||x0 - x*||
  bool diverged = false;
};

struct SweepResult {
  std::size_t n = 0;
  double tau_deg = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::vector<double> theta_grid;
  std::vector<double> lambdaL_grid;
  std::vector<SweepCell> cells;  // theta-major

  /// Analytic boundary lambda L = 1 / (2 + |n - theta|).
  double boundary(double theta) const;
};

/// SVAG root finding on the averaged rotation from x0 = (1, 0) for 100 n
/// iterations per (theta, lambda L) cell; relative distance to the origin.
/// tau = 180 degrees is degenerate (zero map) and rejected.
SweepResult rotation_sweep(std::size_t n, double tau_deg,
                           const std::vector<double>& lambdaL_grid,
                           const std::vector<double>& theta_grid, std::uint64_t seed);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Worker threads for replications/sweep cells: SVAG_THREADS when set, else
/// hardware concurrency. Results are ordered deterministically either way.
std::size_t worker_threads(std::size_t jobs);

/// Subcommands: bound, run, sweep, parse-check.
/// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical failure.
int cli_main(int argc, const char* const* argv);

}  // namespace svag
