#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "sudiag/boundary.hpp"
#include "sudiag/matrix_core.hpp"

namespace sudiag {

enum class Membership { Inside, OnBoundary, Outside };

std::string_view to_string(Membership m);

struct MembershipVerdict {
  Membership status = Membership::Outside;
  /// Positive inside. r(theta) - |z| for the polar test, distance to the
  /// polyline (signed by winding) for the winding test, tol - distance for
  /// the degenerate n = 1, 2 images.
  double signed_margin = 0.0;
};

inline constexpr double kRegionTol = 1e-9;
inline constexpr int kWindingSamples = 8192;

/// OnBoundary iff |margin| <= tol, else Inside/Outside by sign.
MembershipVerdict classify_margin(double margin, double tol);

/// Membership in the SU(n) diagonal-product image. n = 1 is the point {1},
/// n = 2 the segment [0, 1]; for n >= 3 the region is star-shaped about 0 and
/// |z| is compared with r(arg z).
MembershipVerdict su_region_contains(int n, Complex z, double tol = kRegionTol);
MembershipVerdict su_region_contains(const BoundaryModel& model, Complex z,
                                     double tol = kRegionTol);

/// Polygonal approximation of gamma used by the winding-number oracle. Only
/// evaluates gamma itself, never the polar profile.
class WindingOracle {
 public:
  WindingOracle(int n, int samples = kWindingSamples);

  int n() const { return n_; }
  const std::vector<Complex>& vertices() const { return vertices_; }

  int winding_number(Complex z) const;
  double distance(Complex z) const;
  MembershipVerdict contains(Complex z, double tol = kRegionTol) const;

 private:
  int n_;
  std::vector<Complex> vertices_;
};

MembershipVerdict su_region_contains_winding(int n, Complex z, int samples = kWindingSamples,
                                             double tol = kRegionTol);

/// Closed unit disk, the image of U(n) for n >= 2.
MembershipVerdict u_region_contains(int n, Complex z, double tol = kRegionTol);

/// Image of SO(n): [-(1 - 2/n)^n, 1].
std::pair<double, double> so_interval(int n);

}  // namespace sudiag
