#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "sudiag/matrix_core.hpp"
#include "test_support.hpp"

using namespace sudiag;

namespace {

// Truncated power series, summed until the terms vanish. Independent of the
// eigendecomposition used by exp_skew_hermitian.
CMatrix series_exp(const CMatrix& a) {
  CMatrix sum = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = sum;
  for (int k = 1; k < 60; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

Complex cofactor_det3(const CMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// Haar U(n) by modified Gram-Schmidt on complex Gaussian columns. Shares no
// code with haar_unitary.
CMatrix gram_schmidt_haar(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = Complex{g(rng), g(rng)};
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) m.col(k) -= m.col(j).dot(m.col(k)) * m.col(j);
    m.col(k) /= m.col(k).norm();
  }
  return m;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("diag_product and determinant on explicit matrices") {
  CMatrix m(3, 3);
  m << Complex{1, 2}, 3, 0,
       4, Complex{0, -1}, 5,
       Complex{2, 2}, 1, Complex{-3, 0.5};
  CHECK(diag_product(m) == Complex{1, 2} * Complex{0, -1} * Complex{-3, 0.5});
  CHECK(std::abs(determinant(m) - cofactor_det3(m)) < 1e-12);
  CHECK(diag_product(CMatrix::Identity(5, 5)) == Complex{1, 0});
}

TEST_CASE("generators are skew-Hermitian, traceless and zero-based") {
  for (int n = 2; n <= 5; ++n) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const CMatrix x = generator_x(n, j, k);
        const CMatrix y = generator_y(n, j, k);
        CHECK(is_skew_hermitian(x));
        CHECK(is_skew_hermitian(y));
        CHECK(std::abs(x.trace()) == 0.0);
        CHECK(x(j, k) == Complex{-1, 0});
        CHECK(x(k, j) == Complex{1, 0});
        CHECK(y(j, k) == Complex{0, 1});
        CHECK(y(k, j) == Complex{0, 1});
      }
    }
  }
  CHECK_THROWS_AS(generator_x(3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(generator_x(3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(generator_y(3, 0, 3), std::invalid_argument);
}

TEST_CASE("exp_skew_hermitian matches the power series") {
  for (double t : {0.0, 0.3, -1.7, 2.9}) {
    const CMatrix a = t * generator_y(3, 0, 1);
    CHECK(max_abs(exp_skew_hermitian(a) - series_exp(a)) < 1e-13);
    const CMatrix b = t * generator_x(4, 1, 3);
    CHECK(max_abs(exp_skew_hermitian(b) - series_exp(b)) < 1e-13);
  }
  // exp(t Y_jk) is [[cos t, i sin t], [i sin t, cos t]] on the (j, k) block.
  const double t = 0.8;
  const CMatrix e = exp_skew_hermitian(t * generator_y(3, 0, 2));
  CHECK(std::abs(e(0, 0) - std::cos(t)) < 1e-15);
  CHECK(std::abs(e(0, 2) - Complex{0, std::sin(t)}) < 1e-15);
  CHECK(std::abs(e(1, 1) - 1.0) < 1e-15);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix h(4, 4);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) h(j, k) = Complex{g(rng), g(rng)};
    const CMatrix a = 0.5 * (h - h.adjoint());
    const CMatrix e2 = exp_skew_hermitian(a);
    CHECK(is_unitary(e2, 1e-13));
    CHECK(max_abs(e2 - series_exp(a)) < 1e-11);
  }
  CHECK_THROWS_AS(exp_skew_hermitian(CMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("group predicates") {
  CHECK(is_special_unitary(CMatrix::Identity(3, 3)));
  CHECK_FALSE(is_special_unitary(Complex{0, 1} * CMatrix::Identity(3, 3)));
  CHECK(is_unitary(Complex{0, 1} * CMatrix::Identity(3, 3)));
  CHECK_FALSE(is_unitary(2.0 * CMatrix::Identity(2, 2)));
  CHECK_FALSE(is_special_orthogonal(Complex{0, 1} * CMatrix::Identity(4, 4)));
  Eigen::VectorXd phases(3);
  phases << 0.4, -1.1, 0.7;
  CHECK(is_special_unitary(diag_phases(phases)));
}

TEST_CASE("Haar samplers land in their groups") {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      CHECK(is_unitary(haar_unitary(n, RngSeed{s})));
      CHECK(is_special_unitary(haar_special_unitary(n, RngSeed{s})));
      CHECK(is_special_orthogonal(haar_special_orthogonal(n, RngSeed{s})));
    }
  }
}

TEST_CASE("Haar samplers are deterministic in the seed") {
  CHECK(haar_special_unitary(4, RngSeed{9}) == haar_special_unitary(4, RngSeed{9}));
  CHECK(haar_special_unitary(4, RngSeed{9}) != haar_special_unitary(4, RngSeed{10}));
}

TEST_CASE("derive_seed gives distinct streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(RngSeed{42}, k).value);
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(RngSeed{1}, 0) != derive_seed(RngSeed{2}, 0));
}

TEST_CASE("Haar second moment E|U_11|^2 = 1/n against an independent sampler") {
  const int n = 3;
  const int trials = 20000;
  double ours = 0.0;
  double reference = 0.0;
  std::mt19937_64 rng(123);
  for (int k = 0; k < trials; ++k) {
    ours += std::norm(haar_unitary(n, derive_seed(RngSeed{77}, k))(0, 0));
    reference += std::norm(gram_schmidt_haar(n, rng)(0, 0));
  }
  CHECK(std::abs(ours / trials - 1.0 / 3.0) < 0.01);
  CHECK(std::abs(reference / trials - 1.0 / 3.0) < 0.01);
}

TEST_CASE("Haar SU(n) phase of U_11 is not biased") {
  // E[U_11] = 0 for Haar measure; a sign-fix bug would push it off zero.
  Complex mean{0, 0};
  const int trials = 20000;
  for (int k = 0; k < trials; ++k) mean += haar_special_unitary(3, derive_seed(RngSeed{3}, k))(0, 0);
  CHECK(std::abs(mean / static_cast<double>(trials)) < 0.02);
}

}  // TEST_SUITE
