#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "svag/problems.hpp"

namespace svag {

/// Gradient table initialization: all-zero (cheap, the default) or one full
/// pass of component evaluations at x0.
enum class TableInit { Zero, ComponentMap };

/// Table storage. Auto picks Scalar for GLM-factorable problems (n scalars
/// plus rank-1 sum updates) and Dense (n vectors) otherwise.
enum class TableStorage { Auto, Dense, Scalar };

struct SvagConfig {
  double step_size = 0.0;         // lambda > 0
  double innovation_weight = 0.0; // theta, unrestricted sign; 1 = SAG, n = SAGA

  void validate() const;
};

struct AsvagConfig {
  double step_size = 0.0;   // lambda > 0
  double decay = 0.9;       // beta in [0, 1)
  double epsilon = 1e-8;    // minimal denominator, > 0 (0 only in tests)
  double weight_limit = 0.0;// delta >= 0, saturation range [-delta, delta]
  Vector innovation_avg;    // I^k, exponential moving average of innovations

  /// Recommended defaults: beta 0.9, epsilon 1e-8, delta = n, I^0 = 0.
  static AsvagConfig defaults(double step_size, std::size_t n, Eigen::Index dim);

  void validate() const;
};

/// One draw of the stochastic gradient estimate:
/// estimate = (theta/n) * innovation + (1/n) * table_sum.
struct EstimatorSample {
  std::size_t index = 0;
  Vector innovation;
  Vector estimate;
};

/// clamp(x, lo, hi); requires lo <= hi.
double saturate(double x, double lo, double hi);

/// Iterate x^k, the table of stored component evaluations y_1..y_n, and the
/// running table sum. Confined to one run; copy to branch trajectories.
class SolverState {
 public:
  SolverState(ProblemPtr problem, Vector x0, TableInit init = TableInit::Zero,
              TableStorage storage = TableStorage::Auto);

  /// Dense state with an explicitly given table (diagnostics and tests).
  SolverState(ProblemPtr problem, Vector x0, std::vector<Vector> table);

  const Vector& x() const { return x_; }
  std::uint64_t iteration() const { return k_; }
  std::size_t components() const { return n_; }
  Eigen::Index dim() const { return x_.size(); }
  const Problem& problem() const { return *problem_; }
  ProblemPtr problem_ptr() const { return problem_; }
  bool scalar_table() const { return scalar_mode_; }

  Vector table_entry(std::size_t i) const;
  const Vector& table_sum() const { return table_sum_; }

  /// Recomputed sum of all table entries; does not touch the cached sum.
  Vector exact_table_sum() const;
  void resync_table_sum();

  /// x^{k+1} = x^k - lambda [ (theta/n) (f_i(x^k) - y_i) + (1/n) sum_j y_j ],
  /// then y_i is replaced by the fresh evaluation.
  void svag_step(const SvagConfig& cfg, std::size_t i);

  /// SVAG step with the adaptive innovation weight
  ///   I^{k+1}   = beta I^k + (1-beta) (f_i(x^k) - y_i)
  ///   theta^{k+1} = saturate( n <I^{k+1}, g> / ((1-beta^{k+1}) ||g||^2 + eps) )
  /// Updates cfg.innovation_avg in place and returns the theta that was used.
  double asvag_step(AsvagConfig& cfg, std::size_t i);

  /// Experimental variant applying the bias-corrected innovation average
  /// directly: x^{k+1} = x^k - lambda ( I^{k+1}/(1-beta^{k+1}) + (1/n) sum_j y_j ).
  void diagonal_variant_step(AsvagConfig& cfg, std::size_t i);

 private:
  friend EstimatorSample estimator_sample(const SolverState&, double, std::size_t);

  // Fresh evaluation of component i at the current iterate plus its
  // innovation against the stored entry. `value` is used in dense mode,
  // `scalar` in scalar mode.
  struct Evaluation {
    Vector value;
    double scalar = 0.0;
    Vector innovation;
  };

  void check_index(std::size_t i) const;
  Evaluation evaluate(std::size_t i) const;
  // Replaces table entry i with the fresh evaluation, adjusts the running sum
  // by the innovation, and advances the iteration counter.
  void commit(std::size_t i, Evaluation&& eval);

  ProblemPtr problem_;
  Vector x_;
  std::vector<Vector> table_;     // dense mode
  std::vector<double> scalars_;   // scalar mode coefficients
  Vector table_sum_;
  std::size_t n_ = 0;
  std::uint64_t k_ = 0;
  std::uint64_t resync_stride_ = 0;  // exact sum recomputation every 10 n steps
  bool scalar_mode_ = false;
};

/// E[G^k] over the sampled index:
/// (theta/n) F(x^k) + ((n-theta)/n^2) sum_j y_j. Diagnostic; evaluates the full map.
Vector estimator_expectation(const SolverState& state, double theta);

/// tr Cov[G^k] = (theta^2/n^2) (1/n) sum_i || (f_i(x)-y_i) - (F(x) - (1/n) sum_j y_j) ||^2
/// by exact enumeration over i.
double estimator_variance_trace(const SolverState& state, double theta);

/// Weight minimizing || F(x) - [(theta/n)(f_i(x)-y_i) + (1/n) sum_j y_j] ||^2:
/// n <F(x) - (1/n) sum_j y_j, f_i(x)-y_i> / ||f_i(x)-y_i||^2.
/// Requires a nonzero innovation. Diagnostic; evaluates the full map.
double optimal_theta(const SolverState& state, std::size_t i);

/// The estimate produced when index i is sampled, without advancing the state.
EstimatorSample estimator_sample(const SolverState& state, double theta, std::size_t i);

}  // namespace svag
