#include "sudiag/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sudiag {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBisectWidth = 1e-6;
constexpr double kFlatDerivative = 1e-12;

void require_polar_n(int n) {
  if (n < 3) {
    throw std::invalid_argument("the polar parametrization needs n >= 3, got n=" +
                                std::to_string(n));
  }
}

// Root of theta_of_alpha(n, .) = target inside [lo, hi] (theta increasing).
double refine_inverse(int n, double target, double lo, double hi, double tol) {
  while (hi - lo > kBisectWidth) {
    const double mid = 0.5 * (lo + hi);
    if (theta_of_alpha(n, mid) < target) lo = mid; else hi = mid;
  }

  double x = 0.5 * (lo + hi);
  double best_x = x;
  double best_f = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    const double f = theta_of_alpha(n, x) - target;
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best_x = x;
    }
    if (f == 0.0) break;
    if (f < 0.0) lo = x; else hi = x;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)) &&
        best_f <= tol) {
      break;
    }

    const double d = theta_derivative(n, x);
    double next = 0.5 * (lo + hi);
    if (std::abs(d) >= kFlatDerivative) {
      const double newton = x - f / d;
      if (newton > lo && newton < hi) next = newton;
    }
    if (next == x) break;
    x = next;
  }
  return best_x;
}

}  // namespace

Complex int_pow(Complex base, int n) {
  Complex result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double reduce_angle(double a) {
  if (a >= -kPi && a <= kPi) return a;
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Complex gamma(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gamma: n must be positive");
  if (n == 1 || alpha == 0.0) return {1.0, 0.0};
  const double a = reduce_angle(alpha);
  const Complex e_minus = std::polar(1.0, -a);
  const Complex base = 1.0 - (1.0 - e_minus) / static_cast<double>(n);
  return std::polar(1.0, a) * int_pow(base, n);
}

Complex gamma_derivative(int n, double alpha) {
  if (n < 2) throw std::invalid_argument("gamma_derivative: n must be >= 2");
  const double a = reduce_angle(alpha);
  const double nd = static_cast<double>(n);
  const Complex i{0.0, 1.0};
  const Complex one_minus = 1.0 - std::polar(1.0, -a);
  const Complex base = 1.0 - one_minus / nd;
  return i * (1.0 - 1.0 / nd) * one_minus * std::polar(1.0, a) * int_pow(base, n - 1);
}

double theta_of_alpha(int n, double alpha) {
  require_polar_n(n);
  const double a = reduce_angle(alpha);
  // n - 1 + cos a >= n - 2 > 0, so atan2 equals the plain arctangent.
  return a - n * std::atan2(std::sin(a), (n - 1) + std::cos(a));
}

double theta_derivative(int n, double alpha) {
  require_polar_n(n);
  const double s = std::sin(0.5 * alpha);
  const double c = std::cos(0.5 * alpha);
  const double num = 2.0 * (n - 1) * (n - 2) * s * s;
  const double den = static_cast<double>(n - 2) * (n - 2) + 4.0 * (n - 1) * c * c;
  return num / den;
}

double alpha_of_theta(int n, double theta, double tol) {
  require_polar_n(n);
  const double t = reduce_angle(theta);
  if (t == 0.0) return 0.0;
  if (t == kPi || t == -kPi) return t;
  if (t < 0.0) return -refine_inverse(n, -t, 0.0, kPi, tol);
  return refine_inverse(n, t, 0.0, kPi, tol);
}

double gamma_modulus(int n, double alpha) {
  const double s = std::sin(0.5 * alpha);
  const double inner = 1.0 - 4.0 * (n - 1) / (static_cast<double>(n) * n) * s * s;
  return std::pow(std::max(inner, 0.0), 0.5 * n);
}

PolarPoint radius_of_theta(int n, double theta) {
  const double a = alpha_of_theta(n, theta);
  return {reduce_angle(theta), gamma_modulus(n, a)};
}

Complex big_gamma(int n, double alpha, double y) {
  require_polar_n(n);
  if (!(y >= 1.0 && y <= n - 1.0)) {
    throw std::invalid_argument("big_gamma: y must lie in [1, n-1], got y=" + std::to_string(y));
  }
  const double a = reduce_angle(alpha);
  const Complex base = 1.0 - (1.0 - std::polar(1.0, -a)) * (y / n);
  return std::polar(1.0, y * a) * int_pow(base, n);
}

double jacobian_big_gamma(int n, double alpha, double y) {
  require_polar_n(n);
  if (!(y >= 1.0 && y <= n - 1.0)) {
    throw std::invalid_argument("jacobian_big_gamma: y must lie in [1, n-1], got y=" + std::to_string(y));
  }
  // Both partials carry base^{n-1}, so the modulus factor is |base|^{2n-2},
  // i.e. |Gamma|^{(2n-2)/n}.
  const double base = std::abs(1.0 - (1.0 - std::polar(1.0, -alpha)) * (y / n));
  // 2 - 2 cos a written as 4 sin^2(a/2) keeps the small-alpha cancellation mild.
  const double s = std::sin(0.5 * alpha);
  const double angular = 4.0 * s * s - alpha * std::sin(alpha);
  return std::pow(base, 2 * n - 2) * y * (1.0 - y / n) * angular;
}

BoundaryModel::BoundaryModel(int n, int samples) : n_(n) {
  if (n < 1) throw std::invalid_argument("BoundaryModel: n must be positive");
  if (samples < 2) throw std::invalid_argument("BoundaryModel: need at least 2 samples");
  if (n < 3) return;
  alpha_.resize(samples);
  theta_.resize(samples);
  modulus_.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double a = kPi * k / (samples - 1);
    alpha_[k] = a;
    theta_[k] = theta_of_alpha(n, a);
    modulus_[k] = gamma_modulus(n, a);
  }
  theta_.front() = 0.0;
  theta_.back() = kPi;
}

double BoundaryModel::alpha_of_theta(double theta, double tol) const {
  require_polar_n(n_);
  const double t = reduce_angle(theta);
  if (t == 0.0) return 0.0;
  if (t == kPi || t == -kPi) return t;
  const double target = std::abs(t);
  const auto it = std::upper_bound(theta_.begin(), theta_.end(), target);
  const std::size_t hi_idx = std::min<std::size_t>(it - theta_.begin(), theta_.size() - 1);
  const std::size_t lo_idx = hi_idx == 0 ? 0 : hi_idx - 1;
  const double a = refine_inverse(n_, target, alpha_[lo_idx], alpha_[hi_idx], tol);
  return t < 0.0 ? -a : a;
}

PolarPoint BoundaryModel::radius_of_theta(double theta) const {
  const double a = alpha_of_theta(theta);
  return {reduce_angle(theta), gamma_modulus(n_, a)};
}

}  // namespace sudiag
