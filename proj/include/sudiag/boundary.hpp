#pragma once

#include <vector>

#include "sudiag/matrix_core.hpp"

namespace sudiag {

struct PolarPoint {
  double theta = 0.0;  // radians, [-pi, pi]
  double r = 0.0;      // nonnegative
};

/// base^n by repeated squaring, n >= 0.
Complex int_pow(Complex base, int n);

/// Reduces an angle to (-pi, pi]. -pi itself is left alone.
double reduce_angle(double a);

// The boundary curve of the SU(n) diagonal-product image,
//   gamma(alpha) = e^{i alpha} (1 - (1 - e^{-i alpha}) / n)^n.
// Returns exactly 1 for n = 1 and for alpha = 0.
Complex gamma(int n, double alpha);

/// Closed-form d gamma / d alpha. Requires n >= 2.
Complex gamma_derivative(int n, double alpha);

/// Polar angle of gamma(alpha): alpha - n atan(sin a / (n - 1 + cos a)).
/// Odd, strictly increasing bijection of [-pi, pi]. Requires n >= 3.
double theta_of_alpha(int n, double alpha);

/// d theta / d alpha; vanishes (quadratically) only at alpha = 0.
double theta_derivative(int n, double alpha);

/// Inverse of theta_of_alpha: bracketing bisection down to width 1e-6, then
/// Newton safeguarded by the bracket. Newton is skipped wherever
/// |theta'| < 1e-12, which only happens near alpha = 0.
double alpha_of_theta(int n, double theta, double tol = 1e-14);

/// r(theta) = (1 - 4(n-1)/n^2 sin^2(alpha(theta)/2))^{n/2} = |gamma(alpha(theta))|.
PolarPoint radius_of_theta(int n, double theta);

/// Modulus of gamma(alpha) from the real closed form (no complex power).
double gamma_modulus(int n, double alpha);

// Two-parameter extension Gamma(alpha, y) = e^{i y alpha} (1 - (1 - e^{-i alpha}) y/n)^n
// on [-pi, pi] x [1, n-1]. Gamma(alpha, 1) = gamma(alpha).
// Throws std::invalid_argument for y outside [1, n-1] or n < 3.
Complex big_gamma(int n, double alpha, double y);

/// Jacobian determinant of (Re Gamma, Im Gamma) with respect to (alpha, y):
/// |1 - (1 - e^{-i a}) y/n|^{2n-2} y (1 - y/n) (2 - 2 cos a - a sin a).
/// Throws std::invalid_argument for y outside [1, n-1] or n < 3.
double jacobian_big_gamma(int n, double alpha, double y);

/// Per-n view of the curve with a sampled (alpha, theta, |gamma|) table over
/// [0, pi] used to bracket the inverse angle map. The table only narrows the
/// starting bracket; results match the free functions to roundoff.
class BoundaryModel {
 public:
  static constexpr int kDefaultSamples = 4096;

  explicit BoundaryModel(int n, int samples = kDefaultSamples);

  int n() const { return n_; }
  std::size_t table_size() const { return alpha_.size(); }
  const std::vector<double>& table_alpha() const { return alpha_; }
  const std::vector<double>& table_theta() const { return theta_; }
  const std::vector<double>& table_modulus() const { return modulus_; }

  Complex gamma(double alpha) const { return sudiag::gamma(n_, alpha); }
  double alpha_of_theta(double theta, double tol = 1e-14) const;
  PolarPoint radius_of_theta(double theta) const;

 private:
  int n_;
  std::vector<double> alpha_;
  std::vector<double> theta_;
  std::vector<double> modulus_;
};

}  // namespace sudiag
