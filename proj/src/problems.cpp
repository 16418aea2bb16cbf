#include "svag/problems.hpp"

#include <cmath>
#include <numbers>

#include "svag/errors.hpp"
#include "svag/rng.hpp"

namespace svag {

double SparseRow::dot(const Vector& x) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) acc += values[k] * x[indices[k]];
  return acc;
}

void SparseRow::add_scaled_to(double a, Vector& x) const {
  for (std::size_t k = 0; k < indices.size(); ++k) x[indices[k]] += a * values[k];
}

double SparseRow::squared_norm() const {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return acc;
}

void Problem::eval_full(const Vector& x, Vector& out) const {
  const std::size_t n = components();
  out.setZero(dim());
  Vector tmp(dim());
  for (std::size_t i = 0; i < n; ++i) {
    component_map(i, x, tmp);
    out += tmp;
  }
  out *= 1.0 / static_cast<double>(n);
}

double Problem::glm_scalar(std::size_t, const Vector&) const {
  throw ConfigError("problem does not expose a GLM factorization");
}

const SparseRow& Problem::glm_row(std::size_t) const {
  throw ConfigError("problem does not expose a GLM factorization");
}

Vector Problem::component_map(std::size_t i, const Vector& x) const {
  Vector out(dim());
  component_map(i, x, out);
  return out;
}

Vector Problem::full_map(const Vector& x) const {
  Vector out(dim());
  full_map(x, out);
  return out;
}

namespace {

// log(1 + exp(t)) without overflow.
double log1pexp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 / (1 + exp(t)) without overflow.
double inv_one_plus_exp(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

void check_dataset(const LabeledDataset& data) {
  if (data.rows.empty()) throw ConfigError("dataset is empty");
  if (data.rows.size() != data.labels.size())
    throw ConfigError("dataset rows/labels count mismatch");
  for (double label : data.labels)
    if (label != 1.0 && label != -1.0) throw ConfigError("labels must be -1 or +1");
}

class LogisticProblem final : public Problem {
 public:
  explicit LogisticProblem(LabeledDataset data) : data_(std::move(data)) {
    check_dataset(data_);
    double max_sq = 0.0;
    for (const auto& row : data_.rows) max_sq = std::max(max_sq, row.squared_norm());
    if (max_sq == 0.0) throw ConfigError("dataset has no nonzero feature row");
    smoothness_ = max_sq / 4.0;
  }

  std::size_t components() const override { return data_.size(); }
  Eigen::Index dim() const override { return data_.dim; }
  MapKind kind() const override { return MapKind::Gradient; }
  double smoothness() const override { return smoothness_; }

  std::optional<double> objective(const Vector& x) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      acc += log1pexp(-data_.labels[i] * data_.rows[i].dot(x));
    return acc / static_cast<double>(data_.size());
  }

  bool glm_factorable() const override { return true; }

  double glm_scalar(std::size_t i, const Vector& x) const override {
    const double margin = data_.labels[i] * data_.rows[i].dot(x);
    return -data_.labels[i] * inv_one_plus_exp(margin);
  }

  const SparseRow& glm_row(std::size_t i) const override { return data_.rows[i]; }

 protected:
  void eval_component(std::size_t i, const Vector& x, Vector& out) const override {
    out.setZero(data_.dim);
    data_.rows[i].add_scaled_to(glm_scalar(i, x), out);
  }

  void eval_full(const Vector& x, Vector& out) const override {
    out.setZero(data_.dim);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_.rows[i].add_scaled_to(glm_scalar(i, x), out);
    out *= 1.0 / static_cast<double>(data_.size());
  }

 private:
  LabeledDataset data_;
  double smoothness_;
};

class SquareHingeSvmProblem final : public Problem {
 public:
  SquareHingeSvmProblem(LabeledDataset data, double gamma)
      : data_(std::move(data)), gamma_(gamma) {
    check_dataset(data_);
    if (!(gamma > 0.0)) throw ConfigError("square hinge SVM requires gamma > 0");
    double max_sq = 0.0;
    for (const auto& row : data_.rows) max_sq = std::max(max_sq, row.squared_norm());
    smoothness_ = 2.0 * max_sq + gamma_;
  }

  std::size_t components() const override { return data_.size(); }
  Eigen::Index dim() const override { return data_.dim; }
  MapKind kind() const override { return MapKind::Gradient; }
  double smoothness() const override { return smoothness_; }

  std::optional<double> objective(const Vector& x) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const double hinge = std::max(0.0, 1.0 - data_.labels[i] * data_.rows[i].dot(x));
      acc += hinge * hinge;
    }
    return acc / static_cast<double>(data_.size()) + 0.5 * gamma_ * x.squaredNorm();
  }

 protected:
  void eval_component(std::size_t i, const Vector& x, Vector& out) const override {
    const double hinge = std::max(0.0, 1.0 - data_.labels[i] * data_.rows[i].dot(x));
    out = gamma_ * x;
    data_.rows[i].add_scaled_to(-2.0 * data_.labels[i] * hinge, out);
  }

 private:
  LabeledDataset data_;
  double gamma_;
  double smoothness_;
};

}  // namespace

ProblemPtr logistic_problem(LabeledDataset data) {
  return std::make_shared<LogisticProblem>(std::move(data));
}

ProblemPtr square_hinge_svm_problem(LabeledDataset data, double gamma) {
  return std::make_shared<SquareHingeSvmProblem>(std::move(data), gamma);
}

AveragedRotationProblem::AveragedRotationProblem(std::size_t n, double tau_degrees)
    : n_(n), tau_degrees_(tau_degrees) {
  if (n == 0) throw ConfigError("averaged rotation requires n >= 1");
  if (tau_degrees < 0.0 || tau_degrees >= 360.0)
    throw ConfigError("rotation angle must lie in [0, 360) degrees");
  const double tau = tau_degrees * std::numbers::pi / 180.0;
  Eigen::Matrix2d rot;
  rot << std::cos(tau), -std::sin(tau), std::sin(tau), std::cos(tau);
  map_ = 0.5 * Eigen::Matrix2d::Identity() + 0.5 * rot;
}

void AveragedRotationProblem::eval_component(std::size_t, const Vector& x,
                                             Vector& out) const {
  out = map_ * x;
}

void AveragedRotationProblem::eval_full(const Vector& x, Vector& out) const { out = map_ * x; }

std::shared_ptr<const AveragedRotationProblem> averaged_rotation_problem(std::size_t n,
                                                                         double tau_degrees) {
  return std::make_shared<AveragedRotationProblem>(n, tau_degrees);
}

LabeledDataset synthetic_classification(std::size_t n, Eigen::Index dim, std::uint64_t seed) {
  if (n == 0 || dim < 1) throw ConfigError("synthetic dataset requires n >= 1 and dim >= 1");
  Rng rng(derive_stream(seed, 0));

  Vector w(dim);
  for (Eigen::Index j = 0; j < dim; ++j) w[j] = rng.gaussian();
  w /= w.norm();

  LabeledDataset data;
  data.dim = dim;
  data.rows.reserve(n);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector a(dim);
    for (Eigen::Index j = 0; j < dim; ++j) a[j] = rng.gaussian();
    const double norm = a.norm();
    if (norm > 0.0) a /= norm;

    SparseRow row;
    row.indices.resize(dim);
    row.values.resize(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      row.indices[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(j);
      row.values[static_cast<std::size_t>(j)] = a[j];
    }

    // Soft-margin labels: points near the separator get flipped by the noise.
    const double score = a.dot(w) + 0.3 * rng.gaussian();
    data.rows.push_back(std::move(row));
    data.labels.push_back(score >= 0.0 ? 1.0 : -1.0);
  }
  return data;
}

}  // namespace svag
