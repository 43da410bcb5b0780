#include "sudiag/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sudiag {

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

template <class RadiusFn>
MembershipVerdict polar_test(int n, Complex z, double tol, RadiusFn&& radius) {
  if (n == 1) return classify_margin(tol - std::abs(z - 1.0), tol);
  if (n == 2) return classify_margin(tol - segment_distance(z, 0.0, 1.0), tol);
  const double modulus = std::abs(z);
  const double theta = modulus <= tol ? 0.0 : std::arg(z);
  return classify_margin(radius(theta) - modulus, tol);
}

}  // namespace

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::OnBoundary: return "OnBoundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

MembershipVerdict classify_margin(double margin, double tol) {
  if (std::abs(margin) <= tol) return {Membership::OnBoundary, margin};
  return {margin > 0.0 ? Membership::Inside : Membership::Outside, margin};
}

MembershipVerdict su_region_contains(int n, Complex z, double tol) {
  if (n < 1) throw std::invalid_argument("su_region_contains: n must be positive");
  return polar_test(n, z, tol, [n](double theta) { return radius_of_theta(n, theta).r; });
}

MembershipVerdict su_region_contains(const BoundaryModel& model, Complex z, double tol) {
  return polar_test(model.n(), z, tol,
                    [&model](double theta) { return model.radius_of_theta(theta).r; });
}

WindingOracle::WindingOracle(int n, int samples) : n_(n) {
  if (n < 3) throw std::invalid_argument("WindingOracle: n must be >= 3");
  if (samples < 1024) throw std::invalid_argument("WindingOracle: need at least 1024 samples");
  vertices_.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double a = -std::numbers::pi + 2.0 * std::numbers::pi * k / samples;
    vertices_.push_back(gamma(n, a));
  }
}

int WindingOracle::winding_number(Complex z) const {
  double total = 0.0;
  const std::size_t m = vertices_.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Complex a = vertices_[k] - z;
    const Complex b = vertices_[(k + 1) % m] - z;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

double WindingOracle::distance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = vertices_.size();
  for (std::size_t k = 0; k < m; ++k) {
    best = std::min(best, segment_distance(z, vertices_[k], vertices_[(k + 1) % m]));
  }
  return best;
}

MembershipVerdict WindingOracle::contains(Complex z, double tol) const {
  const double d = distance(z);
  if (d <= tol) {
    // Winding is undefined on the polyline itself; the band is all we can say.
    return {Membership::OnBoundary, d};
  }
  const int w = winding_number(z);
  if (std::abs(w) == 1) return {Membership::Inside, d};
  return {Membership::Outside, -d};
}

MembershipVerdict su_region_contains_winding(int n, Complex z, int samples, double tol) {
  return WindingOracle(n, samples).contains(z, tol);
}

MembershipVerdict u_region_contains(int n, Complex z, double tol) {
  if (n < 2) throw std::invalid_argument("u_region_contains: n must be >= 2");
  return classify_margin(1.0 - std::abs(z), tol);
}

std::pair<double, double> so_interval(int n) {
  if (n < 1) throw std::invalid_argument("so_interval: n must be positive");
  const double lower = -std::pow(1.0 - 2.0 / n, n) + 0.0;  // +0.0 turns -0 into 0 at n = 2
  return {lower, 1.0};
}

}  // namespace sudiag
