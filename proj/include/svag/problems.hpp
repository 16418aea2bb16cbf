#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace svag {

using Vector = Eigen::VectorXd;

/// Sparse feature row with 0-based, strictly increasing indices.
struct SparseRow {
  std::vector<std::int32_t> indices;
  std::vector<double> values;

  double dot(const Vector& x) const;
  void add_scaled_to(double a, Vector& x) const;  // x += a * row
  double squared_norm() const;
};

struct LabeledDataset {
  std::vector<SparseRow> rows;
  std::vector<double> labels;  // each entry is -1 or +1
  Eigen::Index dim = 0;

  std::size_t size() const { return rows.size(); }
};

enum class MapKind { Gradient, Operator };

/// A finite sum of n component maps over R^N: gradients of smooth convex
/// functions (MapKind::Gradient) or cocoercive operators (MapKind::Operator),
/// with a known smoothness/cocoercivity constant L. Immutable after
/// construction; safe for concurrent shared reads.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::size_t components() const = 0;
  virtual Eigen::Index dim() const = 0;
  virtual MapKind kind() const = 0;
  virtual double smoothness() const = 0;

  /// Component map i at x (grad f_i(x) or R_i x).
  void component_map(std::size_t i, const Vector& x, Vector& out) const {
    eval_component(i, x, out);
  }
  Vector component_map(std::size_t i, const Vector& x) const;

  /// Average of all component maps.
  void full_map(const Vector& x, Vector& out) const { eval_full(x, out); }
  Vector full_map(const Vector& x) const;

  /// Objective value; absent for operator problems.
  virtual std::optional<double> objective(const Vector& /*x*/) const { return std::nullopt; }

  /// True when component gradients factor exactly as glm_scalar(i, x) * glm_row(i),
  /// enabling scalar gradient tables (n scalars instead of n dense vectors).
  virtual bool glm_factorable() const { return false; }
  virtual double glm_scalar(std::size_t i, const Vector& x) const;
  virtual const SparseRow& glm_row(std::size_t i) const;

 protected:
  virtual void eval_component(std::size_t i, const Vector& x, Vector& out) const = 0;
  /// Defaults to averaging the components; override when a faster form exists.
  virtual void eval_full(const Vector& x, Vector& out) const;
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// Binary logistic regression: f_i(x) = log(1 + exp(-y_i a_i^T x)).
/// L = max_i ||a_i||^2 / 4. GLM-factorable.
ProblemPtr logistic_problem(LabeledDataset data);

/// L2-regularized squared hinge SVM:
/// f_i(x) = max(0, 1 - y_i a_i^T x)^2 + (gamma/2) ||x||^2, gamma > 0.
/// L = max_i (2 ||a_i||^2 + gamma).
ProblemPtr square_hinge_svm_problem(LabeledDataset data, double gamma);

class AveragedRotationProblem;

/// n identical copies of the averaged planar rotation
/// R = 1/2 I + 1/2 Rot(tau). 1-cocoercive; the origin is the unique root
/// except at tau = 180 degrees where R is the zero map.
std::shared_ptr<const AveragedRotationProblem> averaged_rotation_problem(std::size_t n,
                                                                         double tau_degrees);

class AveragedRotationProblem : public Problem {
 public:
  AveragedRotationProblem(std::size_t n, double tau_degrees);

  std::size_t components() const override { return n_; }
  Eigen::Index dim() const override { return 2; }
  MapKind kind() const override { return MapKind::Operator; }
  double smoothness() const override { return 1.0; }

  double tau_degrees() const { return tau_degrees_; }
  /// tau = 180 degrees: the zero map, every point is a root.
  bool degenerate() const { return tau_degrees_ == 180.0; }
  const Eigen::Matrix2d& matrix() const { return map_; }

 protected:
  void eval_component(std::size_t i, const Vector& x, Vector& out) const override;
  void eval_full(const Vector& x, Vector& out) const override;

 private:
  std::size_t n_;
  double tau_degrees_;
  Eigen::Matrix2d map_;
};

/// Deterministic-from-seed binary classification data: unit-norm Gaussian
/// feature rows, labels sign(a_i . w + noise). Dense rows stored sparsely.
LabeledDataset synthetic_classification(std::size_t n, Eigen::Index dim, std::uint64_t seed);

}  // namespace svag
