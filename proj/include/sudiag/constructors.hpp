#pragma once

#include <optional>
#include <string>

#include "sudiag/matrix_core.hpp"

namespace sudiag {

/// Data of an extremal matrix
///   U = (I - (1 - e^{-i alpha}) v v^dagger) diag(e^{i phases_1}, ..., e^{i phases_n})
/// with |v_k| = 1/sqrt(n) and e^{i sum phases} = e^{i alpha}.
struct ExtremalDecomposition {
  double alpha = 0.0;              // (-pi, pi]
  Eigen::VectorXcd v;              // length n
  Eigen::VectorXd diag_phases;     // length n, principal values
};

/// Empty when the decomposition satisfies its invariants within tol, otherwise
/// a description of the first violated constraint.
std::optional<std::string> check_decomposition(const ExtremalDecomposition& d,
                                               double tol = 1e-10);

/// Throws std::invalid_argument when the invariants fail.
CMatrix build_extremal(const ExtremalDecomposition& d);

/// v v^dagger of the decomposition.
CMatrix extremal_projector(const ExtremalDecomposition& d);

/// General projector form (I - (1 - e^{-i alpha}) P) diag(e^{i phases}). No
/// invariants are checked; P is any orthogonal projector.
CMatrix build_projector_form(double alpha, const CMatrix& projector,
                             const Eigen::VectorXd& phases);

/// e^{i alpha(theta)/n} (I - (1 - e^{-i alpha(theta)}) v v^T) with v_k = 1/sqrt(n);
/// its diagonal product is e^{i theta} r(theta). Requires n >= 3.
CMatrix build_u_theta(int n, double theta);

/// Upper end of the homotopy parameter, arctan sqrt(n - 1).
double homotopy_omega_max(int n);

/// A(alpha, omega) = (I - (1 - e^{-i alpha}) v(omega) v(omega)^T) diag(e^{i alpha}, 1, ..., 1),
/// v(omega) = (cos w, sin w / sqrt(n-1), ..., sin w / sqrt(n-1)).
/// Throws for omega outside [0, arctan sqrt(n-1)] or n < 2.
CMatrix build_homotopy_matrix(int n, double alpha, double omega);

/// Closed-form diagonal product of A(alpha, omega).
Complex homotopy_diag_product(int n, double alpha, double omega);

/// U_z (+) I_{n-2}, with U_z = [[sqrt|z|, -sqrt(1-|z|)], [sqrt(1-|z|), sqrt|z|]] diag(sgn z, 1).
/// Its diagonal product is z. Throws when |z| > 1 + 1e-12.
CMatrix build_u_z(int n, Complex z);

/// Decomposition of [[z, -conj(w)], [w, conj(z)]] in SU(2), case by case
/// (w = 0, z = 0, both nonzero). Throws unless | |z|^2 + |w|^2 - 1 | <= 1e-12.
ExtremalDecomposition decompose_su2(Complex z, Complex w);

/// Recovers (alpha, v, phases) from a special unitary U whose diagonal product
/// lies on the boundary curve. Returns nullopt for interior points or when the
/// rank-one structure does not check out. Throws for non-unitary input.
std::optional<ExtremalDecomposition> recognize_extremal(const CMatrix& u, double tol = 1e-9);

}  // namespace sudiag
