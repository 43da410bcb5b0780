#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace sudiag {

using Complex = std::complex<double>;

/// Dense square complex matrix. All group elements in this library live here.
using CMatrix = Eigen::MatrixXcd;

/// Seed for every random draw in the library. Same seed, same parameters,
/// same bits out.
struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(RngSeed, RngSeed) = default;
};

inline constexpr double kGroupTol = 1e-10;

/// Splitmix64 finalizer applied to (seed, index). Used to give every trial or
/// restart its own independent stream so that serial and parallel runs agree.
RngSeed derive_seed(RngSeed seed, std::uint64_t index);

/// Product of the diagonal entries.
Complex diag_product(const CMatrix& m);

/// Determinant via LU with partial pivoting.
Complex determinant(const CMatrix& m);

/// Max-entry norm.
double max_abs(const CMatrix& m);

/// Largest modulus among the off-diagonal entries (0 for n = 1).
double max_off_diagonal(const CMatrix& m);

bool is_unitary(const CMatrix& m, double tol = kGroupTol);
bool is_special_unitary(const CMatrix& m, double tol = kGroupTol);
bool is_special_orthogonal(const CMatrix& m, double tol = kGroupTol);
bool is_skew_hermitian(const CMatrix& m, double tol = kGroupTol);

// Skew-Hermitian basis of su(n) off the diagonal. Indices are zero-based with
// 0 <= j < k < n. X has -1 at (j,k) and 1 at (k,j); Y has i at both.
// Throws std::invalid_argument on bad indices.
CMatrix generator_x(int n, int j, int k);
CMatrix generator_y(int n, int j, int k);

/// exp(A) for skew-Hermitian A, through the eigendecomposition of the
/// Hermitian matrix iA. The result is unitary to roundoff.
/// Throws std::invalid_argument when A is not skew-Hermitian within 1e-10.
CMatrix exp_skew_hermitian(const CMatrix& a);

/// diag(e^{i phases[0]}, ..., e^{i phases[n-1]}).
CMatrix diag_phases(const Eigen::VectorXd& phases);

// Haar-distributed samples. QR of a Gaussian matrix with the R-diagonal phase
// (sign) absorbed into Q. The special variants rescale column 0 to cancel the
// determinant.
CMatrix haar_unitary(int n, RngSeed seed);
CMatrix haar_special_unitary(int n, RngSeed seed);
CMatrix haar_special_orthogonal(int n, RngSeed seed);

}  // namespace sudiag
