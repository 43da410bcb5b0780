#include "sudiag/kernels.hpp"

#include <stdexcept>

namespace sudiag {

std::vector<Complex> sample_su_diag_products(int n, std::int64_t trials, RngSeed seed,
                                             Execution exec) {
  if (trials < 0) throw std::invalid_argument("sample_su_diag_products: negative trial count");
  std::vector<Complex> out(static_cast<std::size_t>(trials));
  for_each_index(trials, exec, [&](std::int64_t k) {
    out[k] = diag_product(haar_special_unitary(n, derive_seed(seed, k)));
  });
  return out;
}

std::vector<MembershipVerdict> classify_points(const BoundaryModel& model,
                                               std::span<const Complex> points, double tol,
                                               Execution exec) {
  std::vector<MembershipVerdict> out(points.size());
  for_each_index(static_cast<std::int64_t>(points.size()), exec, [&](std::int64_t k) {
    out[k] = su_region_contains(model, points[k], tol);
  });
  return out;
}

std::vector<MembershipVerdict> classify_points_winding(const WindingOracle& oracle,
                                                       std::span<const Complex> points,
                                                       double tol, Execution exec) {
  std::vector<MembershipVerdict> out(points.size());
  for_each_index(static_cast<std::int64_t>(points.size()), exec, [&](std::int64_t k) {
    out[k] = oracle.contains(points[k], tol);
  });
  return out;
}

std::vector<Complex> square_grid(double lo, double hi, int side) {
  if (side < 2) throw std::invalid_argument("square_grid: side must be >= 2");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(side) * side);
  const double step = (hi - lo) / (side - 1);
  for (int row = 0; row < side; ++row)
    for (int col = 0; col < side; ++col) out.emplace_back(lo + col * step, lo + row * step);
  return out;
}

}  // namespace sudiag
