#include <doctest.h>

#include <cmath>
#include <random>

#include "sudiag/boundary.hpp"
#include "sudiag/constructors.hpp"
#include "test_support.hpp"

using namespace sudiag;
using sudiag::testing::kPi;
using sudiag::testing::random_decomposition;

TEST_SUITE("constructors") {

TEST_CASE("extremal matrices are special unitary with diagonal product gamma(alpha)") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 100; ++k) {
      const ExtremalDecomposition d = random_decomposition(n, angle(rng), rng);
      REQUIRE_FALSE(check_decomposition(d).has_value());
      const CMatrix u = build_extremal(d);
      CHECK(is_special_unitary(u, 1e-12));
      CHECK(std::abs(diag_product(u) - gamma(n, d.alpha)) < 1e-12);
    }
  }
}

TEST_CASE("check_decomposition rejects bad data") {
  std::mt19937_64 rng(2);
  ExtremalDecomposition d = random_decomposition(4, 1.0, rng);
  ExtremalDecomposition bad_v = d;
  bad_v.v(2) *= 1.1;
  CHECK(check_decomposition(bad_v).has_value());
  CHECK_THROWS_AS(build_extremal(bad_v), std::invalid_argument);
  ExtremalDecomposition bad_sum = d;
  bad_sum.diag_phases(0) += 0.1;
  CHECK(check_decomposition(bad_sum).has_value());
  ExtremalDecomposition bad_len = d;
  bad_len.diag_phases.resize(3);
  CHECK(check_decomposition(bad_len).has_value());
}

TEST_CASE("U_theta reaches e^{i theta} r(theta)") {
  for (int n = 3; n <= 9; ++n) {
    for (double t = -3.0; t <= 3.0; t += 0.5) {
      const CMatrix u = build_u_theta(n, t);
      CHECK(is_special_unitary(u, 1e-12));
      CHECK(std::abs(diag_product(u) - std::polar(radius_of_theta(n, t).r, t)) < 1e-12);
    }
    CHECK(std::abs(diag_product(build_u_theta(n, kPi)) + std::pow(1.0 - 2.0 / n, n)) < 1e-12);
  }
}

TEST_CASE("homotopy family: closed form, endpoints, group membership") {
  for (int n = 2; n <= 7; ++n) {
    const double wmax = homotopy_omega_max(n);
    CHECK(std::abs(wmax - std::atan(std::sqrt(n - 1.0))) < 1e-16);
    for (double a = -3.0; a <= 3.0; a += 0.6) {
      for (double w = 0.0; w <= wmax; w += wmax / 7) {
        const CMatrix m = build_homotopy_matrix(n, a, w);
        CHECK(is_special_unitary(m, 1e-12));
        CHECK(std::abs(diag_product(m) - homotopy_diag_product(n, a, w)) < 1e-13);
      }
      CHECK(std::abs(homotopy_diag_product(n, a, 0.0) - 1.0) < 1e-14);
      CHECK(std::abs(homotopy_diag_product(n, a, wmax) - gamma(n, a)) < 1e-13);
    }
    CHECK_THROWS_AS(build_homotopy_matrix(n, 0.3, wmax + 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(build_homotopy_matrix(n, 0.3, -1e-6), std::invalid_argument);
  }
}

TEST_CASE("U_z reproduces z and is diagonal on the unit circle") {
  for (int n = 2; n <= 5; ++n) {
    for (double re = -1.0; re <= 1.0; re += 0.1) {
      for (double im = -1.0; im <= 1.0; im += 0.1) {
        const Complex z{re, im};
        if (std::abs(z) > 1.0) continue;
        const CMatrix u = build_u_z(n, z);
        CHECK(is_unitary(u, 1e-14));
        CHECK(std::abs(diag_product(u) - z) < 1e-14);
      }
    }
    for (double t = -kPi; t < kPi; t += 0.3) CHECK(max_off_diagonal(build_u_z(n, std::polar(1.0, t))) == 0.0);
    CHECK(diag_product(build_u_z(n, 0.0)) == Complex{0.0, 0.0});
    CHECK(is_unitary(build_u_z(n, 0.0)));
  }
  CHECK_THROWS_AS(build_u_z(3, {1.0, 0.1}), std::invalid_argument);
}

TEST_CASE("decompose_su2 covers all three cases") {
  const auto rebuild = [](Complex z, Complex w) {
    CMatrix u(2, 2);
    u << z, -std::conj(w), w, std::conj(z);
    const ExtremalDecomposition d = decompose_su2(z, w);
    CHECK_FALSE(check_decomposition(d).has_value());
    return max_abs(build_extremal(d) - u);
  };
  CHECK(rebuild(std::polar(1.0, 0.7), 0.0) < 1e-14);
  CHECK(rebuild(0.0, std::polar(1.0, -2.1)) < 1e-14);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const CMatrix u = haar_special_unitary(2, derive_seed(RngSeed{4}, k));
    CHECK(rebuild(u(0, 0), u(1, 0)) < 1e-13);
  }
  CHECK_THROWS_AS(decompose_su2(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("recognize_extremal inverts build_extremal") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 100; ++k) {
      double alpha = angle(rng);
      if (std::abs(alpha) < 1e-3) alpha = 0.5;
      const ExtremalDecomposition d = random_decomposition(n, alpha, rng);
      const CMatrix u = build_extremal(d);
      const auto found = recognize_extremal(u);
      REQUIRE(found.has_value());
      CHECK(max_abs(build_extremal(*found) - u) < 1e-9);
      if (n == 2) {
        // SU(2) admits both +alpha and -alpha (with different v); the
        // canonical form picks alpha in [0, pi].
        CHECK(std::abs(found->alpha - std::abs(d.alpha)) < 1e-9);
        continue;
      }
      CHECK(std::abs(found->alpha - d.alpha) < 1e-9);
      CHECK(max_abs(extremal_projector(*found) - extremal_projector(d)) < 1e-9);
    }
  }
}

TEST_CASE("recognize_extremal rejects interior points and non-unitary input") {
  int rejected = 0;
  for (int k = 0; k < 50; ++k) {
    if (!recognize_extremal(haar_special_unitary(4, derive_seed(RngSeed{12}, k)))) ++rejected;
  }
  CHECK(rejected == 50);
  CHECK_THROWS_AS(recognize_extremal(2.0 * CMatrix::Identity(3, 3)), std::invalid_argument);
  // Diagonal SU(n) matrices sit at gamma(0) = 1.
  Eigen::VectorXd phases(3);
  phases << 0.3, 0.4, -0.7;
  const auto diag = recognize_extremal(diag_phases(phases));
  REQUIRE(diag.has_value());
  CHECK(diag->alpha == 0.0);
}

}  // TEST_SUITE
