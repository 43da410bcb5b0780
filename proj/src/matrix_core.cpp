#include "sudiag/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace sudiag {

RngSeed derive_seed(RngSeed seed, std::uint64_t index) {
  std::uint64_t z = seed.value + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return RngSeed{z ^ (z >> 31)};
}

Complex diag_product(const CMatrix& m) {
  Complex p{1.0, 0.0};
  for (Eigen::Index j = 0; j < m.rows(); ++j) p *= m(j, j);
  return p;
}

Complex determinant(const CMatrix& m) {
  if (m.rows() == 0) return {1.0, 0.0};
  return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) best = std::max(best, std::abs(m(j, k)));
  return best;
}

double max_off_diagonal(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (j != k) best = std::max(best, std::abs(m(j, k)));
  return best;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const CMatrix defect = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
  return max_abs(defect) <= tol;
}

bool is_special_unitary(const CMatrix& m, double tol) {
  return is_unitary(m, tol) && std::abs(determinant(m) - 1.0) <= tol;
}

bool is_special_orthogonal(const CMatrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (std::abs(m(j, k).imag()) > tol) return false;
  return is_special_unitary(m, tol);
}

bool is_skew_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m + m.adjoint()) <= tol;
}

namespace {

void check_generator_indices(int n, int j, int k) {
  if (n < 2 || j < 0 || j >= k || k >= n) {
    throw std::invalid_argument("generator indices must satisfy 0 <= j < k < n, got n=" +
                                std::to_string(n) + " j=" + std::to_string(j) +
                                " k=" + std::to_string(k));
  }
}

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
}

}  // namespace

CMatrix generator_x(int n, int j, int k) {
  check_generator_indices(n, j, k);
  CMatrix x = CMatrix::Zero(n, n);
  x(j, k) = -1.0;
  x(k, j) = 1.0;
  return x;
}

CMatrix generator_y(int n, int j, int k) {
  check_generator_indices(n, j, k);
  CMatrix y = CMatrix::Zero(n, n);
  y(j, k) = Complex{0.0, 1.0};
  y(k, j) = Complex{0.0, 1.0};
  return y;
}

CMatrix exp_skew_hermitian(const CMatrix& a) {
  if (!is_skew_hermitian(a, 1e-10)) {
    throw std::invalid_argument("exp_skew_hermitian: input is not skew-Hermitian");
  }
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  // A = -iH with H = iA Hermitian, so exp(A) = V diag(e^{-i d}) V^dagger.
  CMatrix h = Complex{0.0, 1.0} * a;
  h = (0.5 * (h + h.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const CMatrix& v = eig.eigenvectors();
  const Eigen::VectorXd& d = eig.eigenvalues();
  Eigen::VectorXcd phase(n);
  for (Eigen::Index j = 0; j < n; ++j) phase(j) = std::polar(1.0, -d(j));
  return v * phase.asDiagonal() * v.adjoint();
}

CMatrix diag_phases(const Eigen::VectorXd& phases) {
  const Eigen::Index n = phases.size();
  CMatrix d = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) d(j, j) = std::polar(1.0, phases(j));
  return d;
}

CMatrix haar_unitary(int n, RngSeed seed) {
  check_size(n);
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(j, k) = Complex{re, im};
    }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex rkk = r(k, k);
    const double mod = std::abs(rkk);
    if (mod > 0.0) q.col(k) *= rkk / mod;
  }
  return q;
}

CMatrix haar_special_unitary(int n, RngSeed seed) {
  CMatrix u = haar_unitary(n, seed);
  const Complex det = determinant(u);
  u.col(0) *= std::conj(det) / std::abs(det);
  if (n == 1) u(0, 0) = 1.0;
  return u;
}

CMatrix haar_special_orthogonal(int n, RngSeed seed) {
  check_size(n);
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) g(j, k) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q.cast<Complex>();
}

}  // namespace sudiag
