#include "sudiag/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sudiag/boundary.hpp"

namespace sudiag {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

Complex signum(Complex z) {
  const double m = std::abs(z);
  return m == 0.0 ? Complex{0.0, 0.0} : z / m;
}

// Shift every phase by the same amount so that sum(phases) == alpha mod 2 pi.
void balance_phases(Eigen::VectorXd& phases, double alpha) {
  const double n = static_cast<double>(phases.size());
  const double excess = std::remainder(phases.sum() - alpha, 2.0 * kPi);
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = reduce_angle(phases(k) - excess / n);
  }
}

// Unit eigenvector for the top eigenvalue of a near rank-one projector.
Eigen::VectorXcd dominant_vector(const CMatrix& p, double tol) {
  Eigen::Index start = 0;
  for (Eigen::Index j = 1; j < p.rows(); ++j)
    if (std::abs(p(j, j)) > std::abs(p(start, start))) start = j;
  Eigen::VectorXcd x = p.col(start);
  x.normalize();
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXcd y = p * x;
    const Complex rayleigh = x.dot(y);
    const double residual = (y - rayleigh * x).norm();
    x = y.normalized();
    if (residual < tol) break;
  }
  return x;
}

}  // namespace

std::optional<std::string> check_decomposition(const ExtremalDecomposition& d, double tol) {
  const Eigen::Index n = d.v.size();
  if (n < 1) return "v must be non-empty";
  if (d.diag_phases.size() != n) return "diag_phases and v differ in length";
  const double expected = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(std::abs(d.v(k)) - expected) > tol) {
      std::ostringstream msg;
      msg << "|v_" << k << "| = " << std::abs(d.v(k)) << " but must equal 1/sqrt(n) = " << expected;
      return msg.str();
    }
  }
  const Complex sum_phase = std::polar(1.0, d.diag_phases.sum());
  if (std::abs(sum_phase - std::polar(1.0, d.alpha)) > tol) {
    return "e^{i sum(diag_phases)} differs from e^{i alpha}";
  }
  return std::nullopt;
}

CMatrix extremal_projector(const ExtremalDecomposition& d) { return d.v * d.v.adjoint(); }

CMatrix build_projector_form(double alpha, const CMatrix& projector,
                             const Eigen::VectorXd& phases) {
  const Eigen::Index n = projector.rows();
  const Complex weight = 1.0 - std::polar(1.0, -alpha);
  const CMatrix left = CMatrix::Identity(n, n) - weight * projector;
  return left * diag_phases(phases);
}

CMatrix build_extremal(const ExtremalDecomposition& d) {
  if (auto problem = check_decomposition(d)) {
    throw std::invalid_argument("build_extremal: " + *problem);
  }
  return build_projector_form(d.alpha, extremal_projector(d), d.diag_phases);
}

CMatrix build_u_theta(int n, double theta) {
  const double alpha = alpha_of_theta(n, theta);
  const Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Complex weight = 1.0 - std::polar(1.0, -alpha);
  const CMatrix inner = CMatrix::Identity(n, n) - weight * (v * v.transpose());
  return std::polar(1.0, alpha / n) * inner;
}

double homotopy_omega_max(int n) { return std::atan(std::sqrt(static_cast<double>(n - 1))); }

CMatrix build_homotopy_matrix(int n, double alpha, double omega) {
  if (n < 2) throw std::invalid_argument("build_homotopy_matrix: n must be >= 2");
  const double omega_max = homotopy_omega_max(n);
  if (!(omega >= -1e-12 && omega <= omega_max + 1e-12)) {
    throw std::invalid_argument("build_homotopy_matrix: omega outside [0, arctan sqrt(n-1)]");
  }
  const double w = std::clamp(omega, 0.0, omega_max);
  Eigen::VectorXcd v(n);
  v(0) = std::cos(w);
  const double tail = std::sin(w) / std::sqrt(static_cast<double>(n - 1));
  for (int k = 1; k < n; ++k) v(k) = tail;
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(n);
  phases(0) = alpha;
  return build_projector_form(alpha, v * v.transpose(), phases);
}

Complex homotopy_diag_product(int n, double alpha, double omega) {
  const Complex weight = 1.0 - std::polar(1.0, -alpha);
  const double c = std::cos(omega);
  const double s = std::sin(omega);
  const Complex head = 1.0 - weight * (c * c);
  const Complex tail = 1.0 - weight * (s * s / (n - 1));
  return std::polar(1.0, alpha) * head * int_pow(tail, n - 1);
}

CMatrix build_u_z(int n, Complex z) {
  if (n < 2) throw std::invalid_argument("build_u_z: n must be >= 2");
  const double modulus = std::abs(z);
  if (modulus > 1.0 + 1e-12) throw std::invalid_argument("build_u_z: |z| exceeds 1");
  // |polar(1, t)| can land an ulp below 1; snap so unit-circle inputs give an
  // exactly diagonal U_z.
  const double m = modulus >= 1.0 - 4.0 * std::numeric_limits<double>::epsilon() ? 1.0 : modulus;
  const double diag = std::sqrt(m);
  const double off = std::sqrt(1.0 - m);
  // sgn 0 = 0 would zero the first column; any unit phase keeps U_z unitary and
  // the diagonal product is 0 regardless.
  const Complex phase = modulus == 0.0 ? Complex{1.0, 0.0} : signum(z);
  CMatrix u = CMatrix::Identity(n, n);
  u(0, 0) = diag * phase;
  u(0, 1) = -off;
  u(1, 0) = off * phase;
  u(1, 1) = diag;
  return u;
}

ExtremalDecomposition decompose_su2(Complex z, Complex w) {
  if (std::abs(std::norm(z) + std::norm(w) - 1.0) > 1e-12) {
    throw std::invalid_argument("decompose_su2: |z|^2 + |w|^2 must equal 1");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ExtremalDecomposition d;
  d.v.resize(2);
  d.diag_phases.resize(2);
  if (w == 0.0) {
    d.alpha = 0.0;
    d.diag_phases << std::arg(z), -std::arg(z);
    d.v << inv_sqrt2, inv_sqrt2;
  } else if (z == 0.0) {
    d.alpha = kPi;
    d.diag_phases << kPi, 0.0;
    d.v << inv_sqrt2, inv_sqrt2 * w;
  } else {
    const double half = std::atan2(std::abs(w), std::abs(z));
    d.alpha = 2.0 * half;
    d.diag_phases << reduce_angle(half + std::arg(z)), reduce_angle(half - std::arg(z));
    d.v << inv_sqrt2 * signum(z), inv_sqrt2 * kI * signum(w);
  }
  return d;
}

namespace {

std::optional<ExtremalDecomposition> recognize_su2(const CMatrix& u, double tol) {
  Complex z = u(0, 0);
  Complex w = u(1, 0);
  const double norm = std::sqrt(std::norm(z) + std::norm(w));
  z /= norm;
  w /= norm;
  ExtremalDecomposition d = decompose_su2(z, w);
  if (max_abs(build_extremal(d) - u) > tol) return std::nullopt;
  return d;
}

}  // namespace

std::optional<ExtremalDecomposition> recognize_extremal(const CMatrix& u, double tol) {
  const Eigen::Index n = u.rows();
  if (n < 2 || u.cols() != n) throw std::invalid_argument("recognize_extremal: need n >= 2");
  if (!is_unitary(u, tol)) throw std::invalid_argument("recognize_extremal: input is not unitary");
  if (n == 2) return recognize_su2(u, tol);

  const double nd = static_cast<double>(n);
  const Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(nd));

  if (max_off_diagonal(u) <= tol) {
    ExtremalDecomposition d{0.0, uniform, Eigen::VectorXd(n)};
    for (Eigen::Index j = 0; j < n; ++j) d.diag_phases(j) = std::arg(u(j, j));
    balance_phases(d.diag_phases, 0.0);
    return d;
  }

  const Complex p = diag_product(u);
  const double modulus = std::abs(p);
  if (modulus <= tol) return std::nullopt;
  const double theta = std::arg(p);
  if (std::abs(modulus - radius_of_theta(static_cast<int>(n), theta).r) > tol) return std::nullopt;

  double alpha = alpha_of_theta(static_cast<int>(n), theta);
  if (std::abs(alpha) < 0.5 * kPi) {
    // theta is flat near alpha = 0; the off-diagonal moduli 2|sin(alpha/2)|/n
    // pin |alpha| far more precisely there.
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (j != k) off += std::norm(u(j, k));
    const double sin2 = off / (nd * (nd - 1.0)) * nd * nd / 4.0;
    const double magnitude = 2.0 * std::asin(std::min(1.0, std::sqrt(sin2)));
    alpha = std::copysign(magnitude, alpha);
  }
  const Complex weight = 1.0 - std::polar(1.0, -alpha);
  if (std::abs(weight) == 0.0) return std::nullopt;

  const double diag_arg = std::arg(1.0 - weight / nd);
  Eigen::VectorXd phases(n);
  for (Eigen::Index j = 0; j < n; ++j) phases(j) = std::arg(u(j, j)) - diag_arg;
  const CMatrix m = u * diag_phases(-phases);
  const CMatrix proj = (CMatrix::Identity(n, n) - m) / weight;

  const double ptol = tol / std::abs(weight);
  if (max_abs(proj - proj.adjoint()) > ptol) return std::nullopt;
  if (max_abs(proj * proj - proj) > ptol) return std::nullopt;
  if (std::abs(proj.trace() - 1.0) > ptol) return std::nullopt;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(proj(j, j) - 1.0 / nd) > ptol) return std::nullopt;

  const Eigen::VectorXcd x = dominant_vector(proj, tol);
  ExtremalDecomposition d;
  d.alpha = reduce_angle(alpha);
  if (d.alpha == -kPi) d.alpha = kPi;
  d.v.resize(n);
  const double gauge = std::arg(x(0));
  for (Eigen::Index k = 0; k < n; ++k) d.v(k) = std::polar(1.0 / std::sqrt(nd), std::arg(x(k)) - gauge);
  d.v(0) = 1.0 / std::sqrt(nd);
  d.diag_phases = phases;
  balance_phases(d.diag_phases, d.alpha);

  if (max_abs(build_extremal(d) - u) > tol) return std::nullopt;
  return d;
}

}  // namespace sudiag
