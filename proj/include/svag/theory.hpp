#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>

namespace svag {

enum class Regime { Cocoercive, Smooth };

/// Largest step size with a convergence guarantee for the given regime.
struct StepSizeBound {
  double value = 0.0;  // > 0
  Regime regime = Regime::Cocoercive;
  double theta = 0.0;
  std::size_t n = 0;
  double L = 0.0;
};

/// Root finding over 1/L-cocoercive components: lambda < 1 / (L (2 + |n - theta|)).
StepSizeBound bound_cocoercive(std::size_t n, double theta, double L);

/// Minimization of L-smooth convex components, theta <= n:
/// lambda < (1/L) / (2 + (n-theta) ((theta-1)/n) ((theta-1)/n - 1 + sign(theta-1) sqrt(2))).
/// The correction term vanishes at theta = 1 (the (theta-1) factor is zero, so the
/// undefined sign multiplies zero). theta > n is outside the guarantee's domain
/// and rejected.
StepSizeBound bound_smooth(std::size_t n, double theta, double L);

/// Denominator of the smooth-regime bound; 2 at theta in {1, n}.
double smooth_denominator(std::size_t n, double theta);

/// Exact small-n realizations of the Lyapunov matrices at scalar block level
/// (the problem dimension factors out of every Kronecker product with I).
///   H    : (n+1) x (n+1) weighting of the (x, y_1..y_n) state
///   M    : 2n x 2n symmetrized cross-term matrix
///   EUHU : 2n x 2n average (1/n) sum_i U_i^T H U_i in closed form
///   S    : 2n x 2n function-value decrease matrix
struct CertificateMatrices {
  Eigen::MatrixXd H, M, EUHU, S;
  std::size_t n = 0;
  double theta = 0.0, lambda = 0.0, L = 0.0;
};

/// Certificates are a verification tool; dense eigendecompositions cap n here.
inline constexpr std::size_t kMaxCertificateSize = 50;

CertificateMatrices build_certificate(std::size_t n, double theta, double lambda, double L);

struct PositivityCheck {
  double min_eig = 0.0;   // of the certificate matrix
  bool positive = false;
  double h_min_eig = 0.0; // of H, positive for every lambda > 0
  bool h_positive = false;
};

/// Cocoercive-regime certificate: 2M - EUHU > 0 (and H > 0).
PositivityCheck check_positivity_cocoercive(const CertificateMatrices& cert);

/// Smooth-regime certificate: 2M - EUHU + lambda (n-theta) S - xi I > 0,
/// with xi in [0, 2 lambda / (n L)] and theta <= n.
PositivityCheck check_positivity_smooth(const CertificateMatrices& cert, double xi);

/// A xi satisfying (1/L - n xi / lambda) / denom > lambda (half the available
/// slack); nullopt when lambda already exceeds the smooth bound.
std::optional<double> feasible_xi(std::size_t n, double theta, double lambda, double L);

}  // namespace svag
