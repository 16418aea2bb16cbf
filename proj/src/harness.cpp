#include "svag/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "svag/errors.hpp"
#include "svag/rng.hpp"

namespace svag {

namespace {

constexpr double kDivergenceFactor = 1e8;

template <typename F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t threads = worker_threads(count);
  if (threads <= 1) {
    for (std::size_t j = 0; j < count; ++j) body(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= count) return;
        try {
          body(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

ProblemPtr build_problem(const ExperimentConfig& cfg) {
  if (cfg.problem == "rotation")
    return averaged_rotation_problem(cfg.rotation_n, cfg.rotation_tau_deg);

  LabeledDataset data;
  if (!cfg.dataset.empty()) {
    std::ifstream in(cfg.dataset);
    if (!in) throw DataError("cannot open dataset '" + cfg.dataset + "'");
    data = group_labels(parse_libsvm(in), cfg.positive_labels);
  } else {
    data = synthetic_classification(cfg.synthetic_n, cfg.synthetic_dim, cfg.synthetic_seed);
  }

  if (cfg.problem == "logistic") return logistic_problem(std::move(data));
  if (cfg.problem == "square-hinge")
    return square_hinge_svm_problem(std::move(data), cfg.gamma);
  throw ConfigError("unknown problem '" + cfg.problem + "'");
}

Vector initial_point(const Problem& problem) {
  Vector x0 = Vector::Zero(problem.dim());
  // Root-finding starts away from the root (the origin); minimization at zero.
  if (problem.kind() == MapKind::Operator) x0[0] = 1.0;
  return x0;
}

struct ReplicationTrace {
  std::vector<TraceRow> rows;
};

void record_checkpoint(std::vector<TraceRow>& rows, std::int64_t replication,
                       std::uint64_t iteration, const Problem& problem, const Vector& x,
                       std::optional<double> theta) {
  TraceRow row;
  row.replication = replication;
  row.iteration = static_cast<std::int64_t>(iteration);
  row.grad_norm_sq = problem.full_map(x).squaredNorm();
  row.objective = problem.objective(x);
  row.theta = theta;
  rows.push_back(std::move(row));
}

void record_divergence(std::vector<TraceRow>& rows, std::int64_t replication,
                       std::uint64_t iteration) {
  TraceRow row;
  row.replication = replication;
  row.iteration = static_cast<std::int64_t>(iteration);
  row.grad_norm_sq = std::numeric_limits<double>::infinity();
  rows.push_back(std::move(row));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (problem != "logistic" && problem != "square-hinge" && problem != "rotation")
    throw ConfigError("unknown problem '" + problem + "'");
  if (method != "svag" && method != "asvag" && method != "diagonal-variant")
    throw ConfigError("unknown method '" + method + "'");
  if (replications < 1) throw ConfigError("replications must be at least 1");
  if (checkpoint_stride && *checkpoint_stride < 1)
    throw ConfigError("checkpoint stride must be at least 1");
  if (step_size && !(*step_size > 0.0)) throw ConfigError("step size must be positive");
  if (problem == "square-hinge" && !(gamma > 0.0))
    throw ConfigError("square hinge SVM requires gamma > 0");
  if (method == "asvag" || method == "diagonal-variant") {
    if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("decay must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (delta && !(*delta >= 0.0)) throw ConfigError("delta must be non-negative");
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.problem = j.value("problem", cfg.problem);
    cfg.dataset = j.value("dataset", cfg.dataset);
    if (j.contains("positive_labels"))
      cfg.positive_labels = j.at("positive_labels").get<std::vector<double>>();
    cfg.gamma = j.value("gamma", cfg.gamma);
    if (j.contains("synthetic")) {
      const auto& s = j.at("synthetic");
      cfg.synthetic_n = s.value("n", cfg.synthetic_n);
      cfg.synthetic_dim = s.value("dim", cfg.synthetic_dim);
      cfg.synthetic_seed = s.value("seed", cfg.synthetic_seed);
    }
    if (j.contains("rotation")) {
      const auto& r = j.at("rotation");
      cfg.rotation_n = r.value("n", cfg.rotation_n);
      cfg.rotation_tau_deg = r.value("tau_deg", cfg.rotation_tau_deg);
    }
    cfg.method = j.value("method", cfg.method);
    if (j.contains("step_size")) {
      const auto& s = j.at("step_size");
      if (s.is_string()) {
        if (s.get<std::string>() != "half-inverse-L")
          throw ConfigError("step_size must be a number or \"half-inverse-L\"");
      } else {
        cfg.step_size = s.get<double>();
      }
    }
    cfg.theta = j.value("theta", cfg.theta);
    if (j.contains("theta_over_n")) cfg.theta_over_n = j.at("theta_over_n").get<double>();
    cfg.beta = j.value("beta", cfg.beta);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.replications = j.value("replications", cfg.replications);
    if (j.contains("checkpoint_stride"))
      cfg.checkpoint_stride = j.at("checkpoint_stride").get<std::uint64_t>();
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("table_init")) {
      const auto init = j.at("table_init").get<std::string>();
      if (init == "zero") {
        cfg.table_init = TableInit::Zero;
      } else if (init == "component-map") {
        cfg.table_init = TableInit::ComponentMap;
      } else {
        throw ConfigError("table_init must be \"zero\" or \"component-map\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::size_t worker_threads(std::size_t jobs) {
  if (jobs <= 1) return jobs;
  std::size_t count = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SVAG_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && parsed > 0) count = parsed;
  }
  if (count == 0) count = 1;
  return std::min(count, jobs);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProblemPtr problem = build_problem(cfg);
  const std::size_t n = problem->components();
  const double L = problem->smoothness();
  const double lambda = cfg.step_size ? *cfg.step_size : 1.0 / (2.0 * L);
  const std::uint64_t stride =
      cfg.checkpoint_stride ? *cfg.checkpoint_stride : static_cast<std::uint64_t>(n);
  const double theta =
      cfg.theta_over_n ? *cfg.theta_over_n * static_cast<double>(n) : cfg.theta;
  const double delta = cfg.delta ? *cfg.delta : static_cast<double>(n);
  const Vector x0 = initial_point(*problem);
  const double diverged_norm = kDivergenceFactor * (1.0 + x0.norm());

  std::vector<ReplicationTrace> traces(cfg.replications);
  parallel_for(cfg.replications, [&](std::size_t r) {
    Rng rng(derive_stream(cfg.seed, r));
    SolverState state(problem, x0, cfg.table_init);

    SvagConfig svag_cfg{lambda, theta};
    AsvagConfig asvag_cfg = AsvagConfig::defaults(lambda, n, problem->dim());
    asvag_cfg.decay = cfg.beta;
    asvag_cfg.epsilon = cfg.epsilon;
    asvag_cfg.weight_limit = delta;
    const bool adaptive = cfg.method == "asvag";
    const bool diagonal = cfg.method == "diagonal-variant";

    auto& rows = traces[r].rows;
    record_checkpoint(rows, static_cast<std::int64_t>(r), 0, *problem, state.x(), std::nullopt);
    std::optional<double> last_theta;
    for (std::uint64_t k = 1; k <= cfg.iterations; ++k) {
      const std::size_t i = rng.uniform_index(n);
      try {
        if (adaptive) {
          last_theta = state.asvag_step(asvag_cfg, i);
        } else if (diagonal) {
          state.diagonal_variant_step(asvag_cfg, i);
        } else {
          state.svag_step(svag_cfg, i);
        }
      } catch (const NumericalError&) {
        record_divergence(rows, static_cast<std::int64_t>(r), k);
        return;
      }
      if (k % stride == 0 || k == cfg.iterations) {
        if (!state.x().allFinite() || state.x().norm() > diverged_norm) {
          record_divergence(rows, static_cast<std::int64_t>(r), k);
          return;
        }
        record_checkpoint(rows, static_cast<std::int64_t>(r), k, *problem, state.x(),
                          last_theta);
      }
    }
  });

  ExperimentResult result;
  result.step_size = lambda;
  result.smoothness = L;
  for (const auto& trace : traces)
    result.rows.insert(result.rows.end(), trace.rows.begin(), trace.rows.end());

  // Averaged trace (replication -1) over checkpoints present in every replication.
  std::map<std::int64_t, std::vector<const TraceRow*>> by_iteration;
  for (const auto& row : result.rows) by_iteration[row.iteration].push_back(&row);
  std::vector<TraceRow> averaged;
  for (const auto& [iteration, rows] : by_iteration) {
    if (rows.size() != cfg.replications) continue;
    TraceRow row;
    row.replication = -1;
    row.iteration = iteration;
    double grad = 0.0, objective = 0.0, theta_acc = 0.0;
    bool all_objective = true, all_theta = true;
    for (const TraceRow* r : rows) {
      grad += r->grad_norm_sq;
      if (r->objective) objective += *r->objective; else all_objective = false;
      if (r->theta) theta_acc += *r->theta; else all_theta = false;
    }
    const double count = static_cast<double>(rows.size());
    row.grad_norm_sq = grad / count;
    if (all_objective) row.objective = objective / count;
    if (all_theta) row.theta = theta_acc / count;
    averaged.push_back(row);
  }
  result.rows.insert(result.rows.end(), averaged.begin(), averaged.end());

  auto& meta = result.metadata;
  meta.emplace_back("problem", cfg.problem);
  if (!cfg.dataset.empty()) meta.emplace_back("dataset", cfg.dataset);
  meta.emplace_back("n", std::to_string(n));
  meta.emplace_back("dim", std::to_string(problem->dim()));
  meta.emplace_back("method", cfg.method);
  meta.emplace_back("step_size", format_number(lambda));
  meta.emplace_back("smoothness", format_number(L));
  if (cfg.method == "svag") meta.emplace_back("theta", format_number(theta));
  if (cfg.method != "svag") {
    meta.emplace_back("beta", format_number(cfg.beta));
    meta.emplace_back("epsilon", format_number(cfg.epsilon));
    meta.emplace_back("delta", format_number(delta));
  }
  meta.emplace_back("iterations", std::to_string(cfg.iterations));
  meta.emplace_back("replications", std::to_string(cfg.replications));
  meta.emplace_back("checkpoint_stride", std::to_string(stride));
  meta.emplace_back("seed", std::to_string(cfg.seed));
  meta.emplace_back("table_init",
                    cfg.table_init == TableInit::Zero ? "zero" : "component-map");
  meta.emplace_back("x0", problem->kind() == MapKind::Operator ? "e1" : "zero");
  meta.emplace_back("averaged_replication", "-1");
  return result;
}

void write_experiment_csv(const ExperimentResult& result, std::ostream& out) {
  write_trace(result.rows, out, result.metadata);
}

double SweepResult::boundary(double theta) const {
  return 1.0 / (2.0 + std::abs(static_cast<double>(n) - theta));
}

SweepResult rotation_sweep(std::size_t n, double tau_deg,
                           const std::vector<double>& lambdaL_grid,
                           const std::vector<double>& theta_grid, std::uint64_t seed) {
  if (lambdaL_grid.empty() || theta_grid.empty()) throw ConfigError("sweep grids are empty");
  if (tau_deg == 180.0)
    throw ConfigError("tau = 180 degrees is degenerate (zero map, every point is a root)");
  const auto problem = averaged_rotation_problem(n, tau_deg);
  const double L = problem->smoothness();

  SweepResult result;
  result.n = n;
  result.tau_deg = tau_deg;
  result.seed = seed;
  result.iterations = 100 * static_cast<std::uint64_t>(n);
  result.theta_grid = theta_grid;
  result.lambdaL_grid = lambdaL_grid;
  result.cells.resize(theta_grid.size() * lambdaL_grid.size());

  Vector x0 = Vector::Zero(2);
  x0[0] = 1.0;
  const double x0_norm = x0.norm();
  const double diverged_norm = kDivergenceFactor * (1.0 + x0_norm);

  parallel_for(result.cells.size(), [&](std::size_t c) {
    const double theta = theta_grid[c / lambdaL_grid.size()];
    const double lambda_L = lambdaL_grid[c % lambdaL_grid.size()];
    SweepCell cell;
    cell.theta = theta;
    cell.lambda_L = lambda_L;

    Rng rng(derive_stream(seed, c));
    SolverState state(problem, x0);
    const SvagConfig cfg{lambda_L / L, theta};
    for (std::uint64_t k = 0; k < result.iterations; ++k) {
      try {
        state.svag_step(cfg, rng.uniform_index(n));
      } catch (const NumericalError&) {
        cell.diverged = true;
        break;
      }
      if (!state.x().allFinite() || state.x().norm() > diverged_norm) {
        cell.diverged = true;
        break;
      }
    }
    if (state.x().allFinite()) cell.rel_distance = state.x().norm() / x0_norm;
    else cell.rel_distance = std::numeric_limits<double>::infinity();
    if (cell.rel_distance > kDivergenceFactor) cell.diverged = true;
    result.cells[c] = cell;
  });
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "# n=" << result.n << '\n';
  out << "# tau_deg=" << format_number(result.tau_deg) << '\n';
  out << "# seed=" << result.seed << '\n';
  out << "# iterations=" << result.iterations << '\n';
  out << "# x0=e1\n";
  out << "theta,lambda_L,rel_distance,diverged,boundary_lambda_L\n";
  for (const auto& cell : result.cells) {
    out << format_number(cell.theta) << ',' << format_number(cell.lambda_L) << ','
        << format_number(cell.rel_distance) << ',' << (cell.diverged ? 1 : 0) << ','
        << format_number(result.boundary(cell.theta)) << '\n';
  }
  if (!out) throw DataError("sweep write failed");
}

}  // namespace svag
