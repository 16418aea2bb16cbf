#include "svag/solver.hpp"

#include <cmath>

#include "svag/errors.hpp"

namespace svag {

void SvagConfig::validate() const {
  if (!(step_size > 0.0)) throw ConfigError("step size must be positive");
  if (!std::isfinite(innovation_weight)) throw ConfigError("innovation weight must be finite");
}

AsvagConfig AsvagConfig::defaults(double step_size, std::size_t n, Eigen::Index dim) {
  AsvagConfig cfg;
  cfg.step_size = step_size;
  cfg.weight_limit = static_cast<double>(n);
  cfg.innovation_avg = Vector::Zero(dim);
  return cfg;
}

void AsvagConfig::validate() const {
  if (!(step_size > 0.0)) throw ConfigError("step size must be positive");
  if (!(decay >= 0.0 && decay < 1.0))
    throw ConfigError("decay must lie in [0, 1); decay = 1 leaves no bias correction");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(weight_limit >= 0.0)) throw ConfigError("weight limit must be non-negative");
}

double saturate(double x, double lo, double hi) {
  if (lo > hi) throw ConfigError("saturate: lower bound exceeds upper bound");
  return std::max(lo, std::min(x, hi));
}

SolverState::SolverState(ProblemPtr problem, Vector x0, TableInit init, TableStorage storage)
    : problem_(std::move(problem)), x_(std::move(x0)) {
  if (!problem_) throw ConfigError("null problem");
  if (x_.size() != problem_->dim()) throw ConfigError("state dimension does not match problem");
  n_ = problem_->components();
  resync_stride_ = 10 * static_cast<std::uint64_t>(n_);

  if (storage == TableStorage::Scalar && !problem_->glm_factorable())
    throw ConfigError("scalar table requested but problem is not GLM-factorable");
  scalar_mode_ = storage == TableStorage::Scalar ||
                 (storage == TableStorage::Auto && problem_->glm_factorable());

  if (scalar_mode_) {
    scalars_.assign(n_, 0.0);
    if (init == TableInit::ComponentMap)
      for (std::size_t i = 0; i < n_; ++i) scalars_[i] = problem_->glm_scalar(i, x_);
  } else {
    table_.assign(n_, Vector::Zero(x_.size()));
    if (init == TableInit::ComponentMap)
      for (std::size_t i = 0; i < n_; ++i) problem_->component_map(i, x_, table_[i]);
  }
  table_sum_ = exact_table_sum();
}

SolverState::SolverState(ProblemPtr problem, Vector x0, std::vector<Vector> table)
    : problem_(std::move(problem)), x_(std::move(x0)), table_(std::move(table)) {
  if (!problem_) throw ConfigError("null problem");
  if (x_.size() != problem_->dim()) throw ConfigError("state dimension does not match problem");
  n_ = problem_->components();
  resync_stride_ = 10 * static_cast<std::uint64_t>(n_);
  if (table_.size() != n_) throw ConfigError("table must have exactly n entries");
  for (const auto& y : table_)
    if (y.size() != x_.size()) throw ConfigError("table entry dimension mismatch");
  table_sum_ = exact_table_sum();
}

Vector SolverState::table_entry(std::size_t i) const {
  check_index(i);
  if (!scalar_mode_) return table_[i];
  Vector y = Vector::Zero(x_.size());
  problem_->glm_row(i).add_scaled_to(scalars_[i], y);
  return y;
}

Vector SolverState::exact_table_sum() const {
  Vector sum = Vector::Zero(x_.size());
  if (scalar_mode_) {
    for (std::size_t i = 0; i < n_; ++i) problem_->glm_row(i).add_scaled_to(scalars_[i], sum);
  } else {
    for (const auto& y : table_) sum += y;
  }
  return sum;
}

void SolverState::resync_table_sum() { table_sum_ = exact_table_sum(); }

void SolverState::check_index(std::size_t i) const {
  if (i >= n_) throw ConfigError("component index out of range");
}

SolverState::Evaluation SolverState::evaluate(std::size_t i) const {
  Evaluation eval;
  if (scalar_mode_) {
    eval.scalar = problem_->glm_scalar(i, x_);
    if (!std::isfinite(eval.scalar))
      throw NumericalError("component evaluation is not finite", k_);
    eval.innovation.setZero(x_.size());
    problem_->glm_row(i).add_scaled_to(eval.scalar - scalars_[i], eval.innovation);
  } else {
    eval.value.resize(x_.size());
    problem_->component_map(i, x_, eval.value);
    if (!eval.value.allFinite())
      throw NumericalError("component evaluation is not finite", k_);
    eval.innovation = eval.value - table_[i];
  }
  return eval;
}

void SolverState::commit(std::size_t i, Evaluation&& eval) {
  if (scalar_mode_) {
    scalars_[i] = eval.scalar;
  } else {
    table_[i] = std::move(eval.value);
  }
  table_sum_ += eval.innovation;
  ++k_;
  if (resync_stride_ > 0 && k_ % resync_stride_ == 0) resync_table_sum();
}

void SolverState::svag_step(const SvagConfig& cfg, std::size_t i) {
  check_index(i);
  const double n = static_cast<double>(n_);
  Evaluation eval = evaluate(i);
  x_ -= cfg.step_size *
        ((cfg.innovation_weight / n) * eval.innovation + (1.0 / n) * table_sum_);
  commit(i, std::move(eval));
}

double SolverState::asvag_step(AsvagConfig& cfg, std::size_t i) {
  check_index(i);
  if (cfg.innovation_avg.size() != x_.size())
    throw ConfigError("innovation average dimension does not match problem");
  const double n = static_cast<double>(n_);
  Evaluation eval = evaluate(i);

  cfg.innovation_avg = cfg.decay * cfg.innovation_avg + (1.0 - cfg.decay) * eval.innovation;
  const double bias = 1.0 - std::pow(cfg.decay, static_cast<double>(k_ + 1));
  const double inner = cfg.innovation_avg.dot(eval.innovation);
  const double denominator = bias * eval.innovation.dot(eval.innovation) + cfg.epsilon;
  const double theta =
      saturate(n * (inner / denominator), -cfg.weight_limit, cfg.weight_limit);

  x_ -= cfg.step_size * ((theta / n) * eval.innovation + (1.0 / n) * table_sum_);
  commit(i, std::move(eval));
  return theta;
}

void SolverState::diagonal_variant_step(AsvagConfig& cfg, std::size_t i) {
  check_index(i);
  if (cfg.innovation_avg.size() != x_.size())
    throw ConfigError("innovation average dimension does not match problem");
  const double n = static_cast<double>(n_);
  Evaluation eval = evaluate(i);

  cfg.innovation_avg = cfg.decay * cfg.innovation_avg + (1.0 - cfg.decay) * eval.innovation;
  const double bias = 1.0 - std::pow(cfg.decay, static_cast<double>(k_ + 1));
  x_ -= cfg.step_size * ((1.0 / bias) * cfg.innovation_avg + (1.0 / n) * table_sum_);
  commit(i, std::move(eval));
}

Vector estimator_expectation(const SolverState& state, double theta) {
  const double n = static_cast<double>(state.components());
  return (theta / n) * state.problem().full_map(state.x()) +
         ((n - theta) / (n * n)) * state.table_sum();
}

double estimator_variance_trace(const SolverState& state, double theta) {
  const std::size_t n = state.components();
  const double nd = static_cast<double>(n);
  const Vector total_innovation =
      state.problem().full_map(state.x()) - (1.0 / nd) * state.table_sum();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector innovation = state.problem().component_map(i, state.x()) - state.table_entry(i);
    acc += (innovation - total_innovation).squaredNorm();
  }
  return (theta * theta) / (nd * nd) * (acc / nd);
}

double optimal_theta(const SolverState& state, std::size_t i) {
  if (i >= state.components()) throw ConfigError("component index out of range");
  const double n = static_cast<double>(state.components());
  const Vector innovation = state.problem().component_map(i, state.x()) - state.table_entry(i);
  const double denom = innovation.squaredNorm();
  if (denom == 0.0) throw ConfigError("optimal theta is undefined for a zero innovation");
  const Vector total_innovation =
      state.problem().full_map(state.x()) - (1.0 / n) * state.table_sum();
  return n * total_innovation.dot(innovation) / denom;
}

EstimatorSample estimator_sample(const SolverState& state, double theta, std::size_t i) {
  state.check_index(i);
  const double n = static_cast<double>(state.components());
  EstimatorSample sample;
  sample.index = i;
  sample.innovation = state.problem().component_map(i, state.x()) - state.table_entry(i);
  sample.estimate = (theta / n) * sample.innovation + (1.0 / n) * state.table_sum();
  return sample;
}

}  // namespace svag
