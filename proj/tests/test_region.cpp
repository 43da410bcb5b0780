#include <doctest.h>

#include <cmath>

#include "sudiag/kernels.hpp"
#include "sudiag/region.hpp"
#include "test_support.hpp"

using namespace sudiag;
using sudiag::testing::kPi;

TEST_SUITE("region") {

TEST_CASE("classify_margin") {
  CHECK(classify_margin(0.5, 1e-9).status == Membership::Inside);
  CHECK(classify_margin(-0.5, 1e-9).status == Membership::Outside);
  CHECK(classify_margin(5e-10, 1e-9).status == Membership::OnBoundary);
  CHECK(classify_margin(-1e-9, 1e-9).status == Membership::OnBoundary);
  CHECK(to_string(Membership::OnBoundary) == "OnBoundary");
}

TEST_CASE("degenerate images for n = 1 and n = 2") {
  CHECK(su_region_contains(1, {1.0, 0.0}).status != Membership::Outside);
  CHECK(su_region_contains(1, {0.9, 0.0}).status == Membership::Outside);
  CHECK(su_region_contains(2, {0.3, 0.0}).status != Membership::Outside);
  CHECK(su_region_contains(2, {0.0, 0.0}).status != Membership::Outside);
  CHECK(su_region_contains(2, {1.0, 0.0}).status != Membership::Outside);
  CHECK(su_region_contains(2, {-0.1, 0.0}).status == Membership::Outside);
  CHECK(su_region_contains(2, {0.5, 0.1}).status == Membership::Outside);
  CHECK(su_region_contains(2, {1.1, 0.0}).status == Membership::Outside);
}

TEST_CASE("n = 3 reference points") {
  CHECK(su_region_contains(3, {0.0, 0.0}).status == Membership::Inside);
  CHECK(su_region_contains(3, {1.0, 0.0}).status == Membership::OnBoundary);
  CHECK(su_region_contains(3, {-1.0 / 27.0, 0.0}).status == Membership::OnBoundary);
  CHECK(su_region_contains(3, {-0.05, 0.0}).status == Membership::Outside);
  const MembershipVerdict far = su_region_contains(3, {0.9, 0.4});
  CHECK(far.status == Membership::Outside);
  CHECK(WindingOracle(3).contains({0.9, 0.4}).status == far.status);
}

TEST_CASE("every boundary point is classified OnBoundary") {
  for (int n = 3; n <= 8; ++n) {
    const BoundaryModel model(n);
    for (double a = -kPi; a <= kPi; a += 0.1) {
      CHECK(su_region_contains(model, gamma(n, a)).status == Membership::OnBoundary);
      // Pushed 1e-6 along the ray, in and out.
      const Complex z = gamma(n, a);
      if (std::abs(z) > 1e-3) {
        CHECK(su_region_contains(model, z * (1.0 - 1e-6)).status == Membership::Inside);
        CHECK(su_region_contains(model, z * (1.0 + 1e-6)).status == Membership::Outside);
      }
    }
  }
}

TEST_CASE("winding oracle agrees with the polar test away from the curve") {
  for (int n : {3, 4, 7}) {
    const BoundaryModel model(n);
    const WindingOracle oracle(n);
    const std::vector<Complex> grid = square_grid(-1.1, 1.1, 61);
    for (const Complex& z : grid) {
      const MembershipVerdict polar = su_region_contains(model, z);
      const MembershipVerdict wind = oracle.contains(z);
      if (std::abs(polar.signed_margin) < 1e-3 || std::abs(wind.signed_margin) < 1e-3) continue;
      CHECK(polar.status == wind.status);
    }
  }
}

TEST_CASE("winding number of sample points") {
  const WindingOracle oracle(5);
  CHECK(oracle.winding_number({0.0, 0.0}) != 0);
  CHECK(std::abs(oracle.winding_number({0.2, 0.0})) == 1);
  CHECK(oracle.winding_number({2.0, 0.0}) == 0);
  // Vertices lie on the polyline; points between vertices sit ~1e-7 off it.
  CHECK(oracle.contains(oracle.vertices()[1234]).status == Membership::OnBoundary);
  CHECK_THROWS_AS(WindingOracle(2), std::invalid_argument);
}

TEST_CASE("unit disk and SO interval") {
  CHECK(u_region_contains(3, {0.6, 0.8}).status == Membership::OnBoundary);
  CHECK(u_region_contains(3, {0.1, 0.1}).status == Membership::Inside);
  CHECK(u_region_contains(3, {0.9, 0.9}).status == Membership::Outside);
  const auto [lo3, hi3] = so_interval(3);
  CHECK(std::abs(lo3 + 1.0 / 27.0) < 1e-16);
  CHECK(hi3 == 1.0);
  const auto [lo2, hi2] = so_interval(2);
  CHECK(lo2 == 0.0);
  CHECK(hi2 == 1.0);
}

TEST_CASE("classification kernels agree between serial and parallel paths") {
  const BoundaryModel model(4);
  const WindingOracle oracle(4, 2048);
  const std::vector<Complex> grid = square_grid(-1.0, 1.0, 41);
  const auto a = classify_points(model, grid, 1e-9, Execution::Serial);
  const auto b = classify_points(model, grid, 1e-9, Execution::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].status == b[k].status);
    CHECK(a[k].signed_margin == b[k].signed_margin);
  }
  const auto c = classify_points_winding(oracle, grid, 1e-9, Execution::Serial);
  const auto d = classify_points_winding(oracle, grid, 1e-9, Execution::Parallel);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k].signed_margin == d[k].signed_margin);
  CHECK(sample_su_diag_products(5, 300, RngSeed{8}, Execution::Serial) ==
        sample_su_diag_products(5, 300, RngSeed{8}, Execution::Parallel));
}

TEST_CASE("square_grid layout") {
  const std::vector<Complex> g = square_grid(-1.0, 1.0, 3);
  REQUIRE(g.size() == 9);
  CHECK(g[0] == Complex{-1.0, -1.0});
  CHECK(g[1] == Complex{0.0, -1.0});
  CHECK(g[8] == Complex{1.0, 1.0});
}

}  // TEST_SUITE
