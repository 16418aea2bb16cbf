#include "svag/theory.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "svag/errors.hpp"

namespace svag {

namespace {

void check_bound_inputs(std::size_t n, double L) {
  if (n == 0) throw ConfigError("component count must be at least 1");
  if (!(L > 0.0)) throw ConfigError("smoothness constant must be positive");
}

double min_eigenvalue(const Eigen::MatrixXd& m, double& scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  scale = solver.eigenvalues().cwiseAbs().maxCoeff();
  return solver.eigenvalues().minCoeff();
}

// positive iff min eig clears the roundoff floor 1e-12 * ||matrix||.
bool clears_roundoff(double min_eig, double scale) { return min_eig > 1e-12 * scale; }

// A (2x2) kron B (nxn) added into the 2n x 2n accumulator.
void add_kron(Eigen::MatrixXd& acc, const Eigen::Matrix2d& a, const Eigen::MatrixXd& b) {
  const Eigen::Index n = b.rows();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (a(r, c) != 0.0) acc.block(r * n, c * n, n, n) += a(r, c) * b;
}

}  // namespace

StepSizeBound bound_cocoercive(std::size_t n, double theta, double L) {
  check_bound_inputs(n, L);
  const double nd = static_cast<double>(n);
  return {1.0 / (L * (2.0 + std::abs(nd - theta))), Regime::Cocoercive, theta, n, L};
}

double smooth_denominator(std::size_t n, double theta) {
  const double nd = static_cast<double>(n);
  if (theta == 1.0) return 2.0;
  const double sign = theta > 1.0 ? 1.0 : -1.0;
  const double ratio = (theta - 1.0) / nd;
  return 2.0 + (nd - theta) * ratio * (ratio - 1.0 + sign * std::sqrt(2.0));
}

StepSizeBound bound_smooth(std::size_t n, double theta, double L) {
  check_bound_inputs(n, L);
  if (theta > static_cast<double>(n))
    throw ConfigError("smooth-regime bound requires theta <= n");
  return {(1.0 / L) / smooth_denominator(n, theta), Regime::Smooth, theta, n, L};
}

CertificateMatrices build_certificate(std::size_t n, double theta, double lambda, double L) {
  check_bound_inputs(n, L);
  if (!(lambda > 0.0)) throw ConfigError("step size must be positive");
  if (n > kMaxCertificateSize)
    throw ConfigError("certificate matrices are limited to n <= " +
                      std::to_string(kMaxCertificateSize));

  const auto ni = static_cast<Eigen::Index>(n);
  const double nd = static_cast<double>(n);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(ni, ni);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(ni, ni);

  CertificateMatrices cert;
  cert.n = n;
  cert.theta = theta;
  cert.lambda = lambda;
  cert.L = L;

  // H = [ 1,                -(lambda/n)(n-theta) 1^T                          ]
  //     [ -(lambda/n)(n-theta) 1,  (lambda/L) I + (lambda/n)^2 (n-theta)^2 11^T ]
  cert.H = Eigen::MatrixXd::Zero(ni + 1, ni + 1);
  cert.H(0, 0) = 1.0;
  const double off = -(lambda / nd) * (nd - theta);
  cert.H.block(0, 1, 1, ni).setConstant(off);
  cert.H.block(1, 0, ni, 1).setConstant(off);
  cert.H.block(1, 1, ni, ni) =
      (lambda / L) * eye + (lambda * lambda / (nd * nd)) * (nd - theta) * (nd - theta) * ones;

  // M = [2 -1; -1 2] kron (lambda/(2nL)) I - [0 1; 1 0] kron (lambda^2/(2n^2))(n-theta) 11^T
  cert.M = Eigen::MatrixXd::Zero(2 * ni, 2 * ni);
  add_kron(cert.M, (Eigen::Matrix2d() << 2, -1, -1, 2).finished(),
           (lambda / (2.0 * nd * L)) * eye);
  add_kron(cert.M, (Eigen::Matrix2d() << 0, 1, 1, 0).finished(),
           -(lambda * lambda / (2.0 * nd * nd)) * (nd - theta) * ones);

  // E[U_i^T H U_i] = [1 -1; -1 1] kron (1/L + lambda)(lambda/n) I
  //                + [0 1; 1 -1] kron (lambda/n)^2 11^T
  cert.EUHU = Eigen::MatrixXd::Zero(2 * ni, 2 * ni);
  add_kron(cert.EUHU, (Eigen::Matrix2d() << 1, -1, -1, 1).finished(),
           (1.0 / L + lambda) * (lambda / nd) * eye);
  add_kron(cert.EUHU, (Eigen::Matrix2d() << 0, 1, 1, -1).finished(),
           (lambda * lambda / (nd * nd)) * ones);

  // S = [2 -1; -1 0] kron (theta-1)(lambda/n^3) 11^T
  //   - [1 -1; -1 1] kron (theta-1)^2 (L lambda^2/n^3) I
  //   + [0 1; 1 0] kron (lambda/n^2) 11^T
  cert.S = Eigen::MatrixXd::Zero(2 * ni, 2 * ni);
  add_kron(cert.S, (Eigen::Matrix2d() << 2, -1, -1, 0).finished(),
           (theta - 1.0) * (lambda / (nd * nd * nd)) * ones);
  add_kron(cert.S, (Eigen::Matrix2d() << 1, -1, -1, 1).finished(),
           -(theta - 1.0) * (theta - 1.0) * (L * lambda * lambda / (nd * nd * nd)) * eye);
  add_kron(cert.S, (Eigen::Matrix2d() << 0, 1, 1, 0).finished(),
           (lambda / (nd * nd)) * ones);

  return cert;
}

PositivityCheck check_positivity_cocoercive(const CertificateMatrices& cert) {
  PositivityCheck result;
  double scale = 0.0;
  result.min_eig = min_eigenvalue(2.0 * cert.M - cert.EUHU, scale);
  result.positive = clears_roundoff(result.min_eig, scale);
  double h_scale = 0.0;
  result.h_min_eig = min_eigenvalue(cert.H, h_scale);
  result.h_positive = clears_roundoff(result.h_min_eig, h_scale);
  return result;
}

PositivityCheck check_positivity_smooth(const CertificateMatrices& cert, double xi) {
  const double nd = static_cast<double>(cert.n);
  if (cert.theta > nd) throw ConfigError("smooth-regime certificate requires theta <= n");
  if (!(xi >= 0.0 && xi <= 2.0 * cert.lambda / (nd * cert.L)))
    throw ConfigError("xi must lie in [0, 2 lambda / (n L)]");

  const Eigen::Index two_n = cert.M.rows();
  Eigen::MatrixXd matrix = 2.0 * cert.M - cert.EUHU +
                           cert.lambda * (nd - cert.theta) * cert.S -
                           xi * Eigen::MatrixXd::Identity(two_n, two_n);
  PositivityCheck result;
  double scale = 0.0;
  result.min_eig = min_eigenvalue(matrix, scale);
  result.positive = clears_roundoff(result.min_eig, scale);
  double h_scale = 0.0;
  result.h_min_eig = min_eigenvalue(cert.H, h_scale);
  result.h_positive = clears_roundoff(result.h_min_eig, h_scale);
  return result;
}

std::optional<double> feasible_xi(std::size_t n, double theta, double lambda, double L) {
  check_bound_inputs(n, L);
  if (theta > static_cast<double>(n))
    throw ConfigError("smooth-regime bound requires theta <= n");
  if (!(lambda > 0.0)) throw ConfigError("step size must be positive");
  const double nd = static_cast<double>(n);
  const double slack = 1.0 / L - lambda * smooth_denominator(n, theta);
  if (slack <= 0.0) return std::nullopt;
  const double xi = 0.5 * (lambda / nd) * slack;
  return std::min(xi, 2.0 * lambda / (nd * L));
}

}  // namespace svag
