#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "svag/problems.hpp"
#include "svag/rng.hpp"
#include "svag/solver.hpp"

namespace svag::testing {

/// Finite sum of shifted quadratics f_i(x) = 1/2 ||x - c_i||^2, so
/// grad f_i(x) = x - c_i and L = 1. Small, exact, and easy to reason about.
class QuadraticProblem final : public Problem {
 public:
  explicit QuadraticProblem(std::vector<Vector> centers) : centers_(std::move(centers)) {}

  static ProblemPtr random(std::size_t n, Eigen::Index dim, Rng& rng, double scale = 1.0) {
    std::vector<Vector> centers;
    centers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vector c(dim);
      for (Eigen::Index j = 0; j < dim; ++j) c[j] = scale * rng.gaussian();
      centers.push_back(std::move(c));
    }
    return std::make_shared<QuadraticProblem>(std::move(centers));
  }

  std::size_t components() const override { return centers_.size(); }
  Eigen::Index dim() const override { return centers_.front().size(); }
  MapKind kind() const override { return MapKind::Gradient; }
  double smoothness() const override { return 1.0; }

  std::optional<double> objective(const Vector& x) const override {
    double acc = 0.0;
    for (const auto& c : centers_) acc += 0.5 * (x - c).squaredNorm();
    return acc / static_cast<double>(centers_.size());
  }

 protected:
  void eval_component(std::size_t i, const Vector& x, Vector& out) const override {
    out = x - centers_[i];
  }

 private:
  std::vector<Vector> centers_;
};

/// 1-D pair f_1(x) = x^2/2, f_2(x) = (x-2)^2/2 used by the worked examples.
inline ProblemPtr two_component_line() {
  std::vector<Vector> centers(2, Vector::Zero(1));
  centers[1][0] = 2.0;
  return std::make_shared<QuadraticProblem>(std::move(centers));
}

/// Dense state with n random table entries; table_sum is recomputed exactly.
inline SolverState random_state(ProblemPtr problem, Rng& rng, double scale = 1.0) {
  const Eigen::Index dim = problem->dim();
  Vector x(dim);
  for (Eigen::Index j = 0; j < dim; ++j) x[j] = scale * rng.gaussian();
  std::vector<Vector> table(problem->components());
  for (auto& y : table) {
    y.resize(dim);
    for (Eigen::Index j = 0; j < dim; ++j) y[j] = scale * rng.gaussian();
  }
  return SolverState(std::move(problem), std::move(x), std::move(table));
}

}  // namespace svag::testing
