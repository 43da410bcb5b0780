#include "sudiag/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sudiag/boundary.hpp"
#include "sudiag/constructors.hpp"
#include "sudiag/region.hpp"

namespace sudiag {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string describe(std::string_view label, std::int64_t index, Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << label << ' ' << index << " z=(" << z.real() << ',' << z.imag() << ')';
  return out.str();
}

}  // namespace

std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::MonteCarlo: return "MonteCarlo";
    case ReportKind::Preimage: return "Preimage";
    case ReportKind::ConstrainedMax: return "ConstrainedMax";
    case ReportKind::Proposition1: return "Proposition1";
    case ReportKind::SOInterval: return "SOInterval";
  }
  return "?";
}

std::optional<double> VerificationReport::metric(std::string_view name) const {
  for (const auto& [key, value] : metrics)
    if (key == name) return value;
  return std::nullopt;
}

bool same_outcome(const VerificationReport& a, const VerificationReport& b) {
  if (a.kind != b.kind || a.n != b.n || a.trials != b.trials || a.failures != b.failures ||
      a.seed != b.seed || a.details != b.details || a.metrics != b.metrics) {
    return false;
  }
  // NaN-safe bitwise compare is not needed: worst_margin is always finite.
  if (a.worst_margin != b.worst_margin) return false;
  if (a.witness.has_value() != b.witness.has_value()) return false;
  return !a.witness || *a.witness == *b.witness;
}

VerificationReport monte_carlo_containment(int n, std::int64_t trials, RngSeed seed, double tol,
                                           Execution exec) {
  if (n < 1 || trials < 1) throw std::invalid_argument("monte_carlo_containment: bad arguments");
  const auto start = Clock::now();
  const BoundaryModel model(n);
  const std::vector<Complex> products = sample_su_diag_products(n, trials, seed, exec);
  const std::vector<MembershipVerdict> verdicts = classify_points(model, products, tol, exec);

  VerificationReport report;
  report.kind = ReportKind::MonteCarlo;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  std::int64_t inside = 0;
  std::int64_t on_boundary = 0;
  for (std::int64_t k = 0; k < trials; ++k) {
    const MembershipVerdict& v = verdicts[k];
    report.worst_margin = std::min(report.worst_margin, v.signed_margin);
    if (v.status == Membership::Inside) ++inside;
    if (v.status == Membership::OnBoundary) ++on_boundary;
    if (v.status == Membership::Outside) {
      ++report.failures;
      report.details.push_back({describe("trial", k, products[k]), std::abs(products[k]),
                                std::abs(products[k]) + v.signed_margin, v.signed_margin});
    }
  }
  report.metrics = {{"inside", static_cast<double>(inside)},
                    {"on_boundary", static_cast<double>(on_boundary)},
                    {"tol", tol}};
  report.elapsed_seconds = seconds_since(start);
  return report;
}

VerificationReport verify_proposition1(int n, std::int64_t trials, RngSeed seed, int grid,
                                       Execution exec) {
  if (n < 2 || trials < 0 || grid < 2) {
    throw std::invalid_argument("verify_proposition1: need n >= 2, trials >= 0, grid >= 2");
  }
  const auto start = Clock::now();

  struct Sample {
    Complex product;
    double off_diagonal;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(trials));
  for_each_index(trials, exec, [&](std::int64_t k) {
    const CMatrix u = haar_unitary(n, derive_seed(seed, k));
    samples[k] = {diag_product(u), max_off_diagonal(u)};
  });

  VerificationReport report;
  report.kind = ReportKind::Proposition1;
  report.n = n;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  double max_modulus = 0.0;
  for (std::int64_t k = 0; k < trials; ++k) {
    const double modulus = std::abs(samples[k].product);
    max_modulus = std::max(max_modulus, modulus);
    report.worst_margin = std::min(report.worst_margin, 1.0 - modulus);
    if (modulus > 1.0 + 1e-12) {
      ++report.failures;
      report.details.push_back({describe("haar", k, samples[k].product), modulus, 1.0, modulus - 1.0});
    } else if (samples[k].off_diagonal > 1e-3 && modulus >= 1.0 - 1e-9) {
      ++report.failures;
      report.details.push_back(
          {describe("non-diagonal", k, samples[k].product), modulus, 1.0 - 1e-9, modulus - 1.0});
    }
  }

  std::int64_t lattice = 0;
  double max_lattice_error = 0.0;
  for (int row = 0; row < grid; ++row) {
    for (int col = 0; col < grid; ++col) {
      const Complex z{-1.0 + 2.0 * col / (grid - 1), -1.0 + 2.0 * row / (grid - 1)};
      if (std::abs(z) > 1.0) continue;
      const CMatrix u = build_u_z(n, z);
      const double err = std::abs(diag_product(u) - z);
      max_lattice_error = std::max(max_lattice_error, err);
      if (err > 1e-12 || !is_unitary(u, 1e-12)) {
        ++report.failures;
        report.details.push_back({describe("lattice", lattice, z), std::abs(diag_product(u)),
                                  std::abs(z), err});
      }
      ++lattice;
    }
  }

  report.trials = trials + lattice;
  if (trials == 0) report.worst_margin = 0.0;
  report.metrics = {{"haar_samples", static_cast<double>(trials)},
                    {"lattice_points", static_cast<double>(lattice)},
                    {"max_abs_diag_product", max_modulus},
                    {"max_lattice_error", max_lattice_error}};
  report.elapsed_seconds = seconds_since(start);
  return report;
}

VerificationReport verify_so_interval(int n, int sweep, std::int64_t trials, RngSeed seed,
                                      Execution exec) {
  if (n < 2 || sweep < 1 || trials < 0) {
    throw std::invalid_argument("verify_so_interval: need n >= 2, sweep >= 1, trials >= 0");
  }
  const auto start = Clock::now();
  const auto [lower, upper] = so_interval(n);
  const double width = upper - lower;

  VerificationReport report;
  report.kind = ReportKind::SOInterval;
  report.n = n;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  auto fail = [&](std::string input, double measured, double expected) {
    ++report.failures;
    report.details.push_back({std::move(input), measured, expected, measured - expected});
  };

  // (a) A(pi, omega) sweep.
  const double omega_max = homotopy_omega_max(n);
  std::vector<Complex> sweep_values(static_cast<std::size_t>(sweep) + 1);
  for_each_index(sweep + 1, exec, [&](std::int64_t k) {
    const double omega = std::min(omega_max, omega_max * static_cast<double>(k) / sweep);
    sweep_values[k] = diag_product(build_homotopy_matrix(n, std::numbers::pi, omega));
  });
  std::vector<double> reals;
  reals.reserve(sweep_values.size() + 2);
  for (std::size_t k = 0; k < sweep_values.size(); ++k) {
    const Complex p = sweep_values[k];
    if (std::abs(p.imag()) > 1e-12) fail(describe("sweep-imag", k, p), p.imag(), 0.0);
    if (p.real() < lower - 1e-9 || p.real() > upper + 1e-9) {
      fail(describe("sweep-range", k, p), p.real(), std::clamp(p.real(), lower, upper));
    }
    reals.push_back(p.real());
  }
  const double sweep_start = reals.front();
  const double sweep_end = reals.back();
  reals.push_back(lower);
  reals.push_back(upper);
  std::sort(reals.begin(), reals.end());
  double max_gap = 0.0;
  for (std::size_t k = 1; k < reals.size(); ++k) max_gap = std::max(max_gap, reals[k] - reals[k - 1]);
  const double gap_bound = 2.0 * width / sweep;
  if (!(max_gap < gap_bound)) fail("sweep max gap", max_gap, gap_bound);
  if (std::abs(sweep_start - upper) > 1e-12) fail("sweep start A(pi,0)", sweep_start, upper);
  if (std::abs(sweep_end - lower) > 1e-12) fail("sweep end A(pi,omega_max)", sweep_end, lower);

  // (b) Haar SO(n).
  std::vector<Complex> products(static_cast<std::size_t>(trials));
  for_each_index(trials, exec, [&](std::int64_t k) {
    products[k] = diag_product(haar_special_orthogonal(n, derive_seed(seed, k)));
  });
  for (std::int64_t k = 0; k < trials; ++k) {
    const Complex p = products[k];
    report.worst_margin = std::min(report.worst_margin, std::min(p.real() - lower, upper - p.real()));
    if (std::abs(p.imag()) > 1e-12) fail(describe("haar-imag", k, p), p.imag(), 0.0);
    if (p.real() < lower - 1e-9 || p.real() > upper + 1e-9) {
      fail(describe("haar-range", k, p), p.real(), std::clamp(p.real(), lower, upper));
    }
  }
  if (trials == 0) report.worst_margin = 0.0;

  // (c) Endpoint extremizers: diag(sigma) with prod sigma = 1, and
  // (I - 2uu^T) diag(sigma) with |u_k| = 1/sqrt(n), prod sigma = -1.
  Eigen::VectorXd even_signs = Eigen::VectorXd::Zero(n);
  even_signs(0) = std::numbers::pi;
  even_signs(1) = std::numbers::pi;
  const CMatrix top = diag_phases(even_signs).real().cast<Complex>();
  const Complex top_value = diag_product(top);
  if (std::abs(top_value - upper) > 1e-12 || !is_special_orthogonal(top)) {
    fail("upper extremizer diag(-1,-1,1,...)", top_value.real(), upper);
  }
  Eigen::VectorXd odd_signs = Eigen::VectorXd::Zero(n);
  odd_signs(0) = std::numbers::pi;
  const Eigen::VectorXcd u = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const CMatrix bottom = build_projector_form(std::numbers::pi, (u * u.transpose()).real().cast<Complex>(),
                                              odd_signs)
                             .real()
                             .cast<Complex>();
  const Complex bottom_value = diag_product(bottom);
  if (std::abs(bottom_value - lower) > 1e-12 || !is_special_orthogonal(bottom)) {
    fail("lower extremizer (I - 2uu^T) diag(-1,1,...)", bottom_value.real(), lower);
  }

  report.trials = static_cast<std::int64_t>(sweep_values.size()) + trials + 2;
  report.metrics = {{"lower", lower},
                    {"upper", upper},
                    {"max_gap", max_gap},
                    {"gap_bound", gap_bound},
                    {"upper_extremizer_value", top_value.real()},
                    {"lower_extremizer_value", bottom_value.real()}};
  report.elapsed_seconds = seconds_since(start);
  return report;
}

}  // namespace sudiag
