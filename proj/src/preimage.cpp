#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "sudiag/boundary.hpp"
#include "sudiag/constructors.hpp"
#include "sudiag/region.hpp"
#include "sudiag/verify.hpp"

namespace sudiag {

namespace {

constexpr double kPi = std::numbers::pi;

struct Point {
  double alpha;
  double omega;
  double residual;
};

class HomotopyProblem {
 public:
  HomotopyProblem(int n, Complex target, const PreimageConfig& config)
      : n_(n), target_(target), omega_max_(homotopy_omega_max(n)), config_(config) {}

  double omega_max() const { return omega_max_; }

  Complex residual(double alpha, double omega) const {
    return homotopy_diag_product(n_, alpha, omega) - target_;
  }

  Point at(double alpha, double omega) const {
    return {alpha, omega, std::abs(residual(alpha, omega))};
  }

  // Damped Newton on (Re, Im) with a finite-difference Jacobian. omega is
  // clamped to its interval, alpha wraps around the circle.
  Point newton(Point p, double tol) const {
    const double h = config_.fd_step;
    for (int iter = 0; iter < config_.max_newton_iterations && p.residual > tol; ++iter) {
      const Complex r = residual(p.alpha, p.omega);
      const Complex da = (residual(p.alpha + h, p.omega) - residual(p.alpha - h, p.omega)) / (2.0 * h);
      const double w_hi = std::min(omega_max_, p.omega + h);
      const double w_lo = std::max(0.0, p.omega - h);
      const Complex dw = (residual(p.alpha, w_hi) - residual(p.alpha, w_lo)) / (w_hi - w_lo);

      // Levenberg-regularized 2x2 solve of J delta = -r.
      const double j00 = da.real(), j01 = dw.real(), j10 = da.imag(), j11 = dw.imag();
      const double a = j00 * j00 + j10 * j10;
      const double b = j00 * j01 + j10 * j11;
      const double d = j01 * j01 + j11 * j11;
      const double lambda = 1e-14 * (a + d) + 1e-300;
      const double g0 = -(j00 * r.real() + j10 * r.imag());
      const double g1 = -(j01 * r.real() + j11 * r.imag());
      const double det = (a + lambda) * (d + lambda) - b * b;
      if (!(std::abs(det) > 0.0)) break;
      const double step_a = ((d + lambda) * g0 - b * g1) / det;
      const double step_w = ((a + lambda) * g1 - b * g0) / det;

      bool improved = false;
      for (double t = 1.0; t > 1e-12; t *= 0.5) {
        const double alpha = reduce_angle(p.alpha + t * step_a);
        const double omega = std::clamp(p.omega + t * step_w, 0.0, omega_max_);
        const Point next = at(alpha, omega);
        if (next.residual < p.residual) {
          p = next;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    return p;
  }

  // Cells of an alpha x omega lattice centred on `centre` with the given half
  // widths; the full domain when centre is empty.
  std::vector<Point> scan(const Point* centre, double half_alpha, double half_omega) const {
    const int na = config_.alpha_cells;
    const int nw = config_.omega_cells;
    std::vector<Point> cells;
    cells.reserve(static_cast<std::size_t>(na) * nw);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nw; ++j) {
        double alpha;
        double omega;
        if (centre == nullptr) {
          alpha = -kPi + 2.0 * kPi * i / na;
          omega = omega_max_ * j / (nw - 1);
        } else {
          alpha = reduce_angle(centre->alpha - half_alpha + 2.0 * half_alpha * i / (na - 1));
          omega = std::clamp(centre->omega - half_omega + 2.0 * half_omega * j / (nw - 1), 0.0,
                             omega_max_);
        }
        cells.push_back(at(alpha, omega));
      }
    }
    const std::size_t keep = std::min<std::size_t>(cells.size(), config_.newton_starts);
    std::partial_sort(cells.begin(), cells.begin() + keep, cells.end(),
                      [](const Point& x, const Point& y) { return x.residual < y.residual; });
    cells.resize(keep);
    return cells;
  }

 private:
  int n_;
  Complex target_;
  double omega_max_;
  PreimageConfig config_;
};

}  // namespace

PreimageResult solve_preimage(int n, Complex z, double tol, const PreimageConfig& config) {
  if (n < 3) throw std::invalid_argument("solve_preimage: n must be >= 3");
  const HomotopyProblem problem(n, z, config);

  Point best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  double half_alpha = kPi;
  double half_omega = 0.5 * problem.omega_max();
  const Point* centre = nullptr;
  for (int level = 0; level <= config.refinements && best.residual > tol; ++level) {
    for (const Point& start : problem.scan(centre, half_alpha, half_omega)) {
      const Point p = problem.newton(start, tol);
      if (p.residual < best.residual) best = p;
      if (best.residual <= tol) break;
    }
    centre = &best;
    half_alpha = level == 0 ? 4.0 * kPi / config.alpha_cells : half_alpha / 8.0;
    half_omega = level == 0 ? 4.0 * problem.omega_max() / config.omega_cells : half_omega / 8.0;
  }

  PreimageResult result;
  result.alpha = best.alpha;
  result.omega = best.omega;
  result.matrix = build_homotopy_matrix(n, best.alpha, best.omega);
  result.residual = std::abs(diag_product(result.matrix) - z);
  result.converged = result.residual <= tol;
  return result;
}

CMatrix preimage(int n, Complex z, double tol) {
  if (n < 3) throw std::invalid_argument("preimage: n must be >= 3");
  if (su_region_contains(n, z, tol).status == Membership::Outside) {
    throw std::domain_error("preimage: target lies outside the diagonal-product image");
  }
  PreimageResult result = solve_preimage(n, z, tol);
  if (!result.converged) {
    std::ostringstream msg;
    msg << "preimage: solver did not reach tolerance " << tol << ", best residual "
        << result.residual;
    throw PreimageError(msg.str(), result.residual);
  }
  return std::move(result.matrix);
}

VerificationReport verify_preimages(int n, std::int64_t points, RngSeed seed, double tol,
                                    Execution exec) {
  if (n < 3 || points < 1) throw std::invalid_argument("verify_preimages: need n >= 3, points >= 1");
  const auto start = std::chrono::steady_clock::now();
  const BoundaryModel model(n);

  struct Outcome {
    Complex target;
    double residual;
    bool special_unitary;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(points));
  for_each_index(points, exec, [&](std::int64_t k) {
    std::mt19937_64 rng(derive_seed(seed, k).value);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    Complex z;
    do {
      const double re = coord(rng);
      const double im = coord(rng);
      z = {re, im};
    } while (std::abs(z) > 1.0 || su_region_contains(model, z).status != Membership::Inside);
    const PreimageResult r = solve_preimage(n, z, tol);
    outcomes[k] = {z, r.residual, is_special_unitary(r.matrix, 1e-10)};
  });

  VerificationReport report;
  report.kind = ReportKind::Preimage;
  report.n = n;
  report.trials = points;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;
  for (std::int64_t k = 0; k < points; ++k) {
    const Outcome& o = outcomes[k];
    max_residual = std::max(max_residual, o.residual);
    report.worst_margin = std::min(report.worst_margin, tol - o.residual);
    if (o.residual > tol || !o.special_unitary) {
      ++report.failures;
      std::ostringstream input;
      input.precision(17);
      input << "point " << k << " z=(" << o.target.real() << ',' << o.target.imag() << ')'
            << (o.special_unitary ? "" : " not-SU");
      report.details.push_back({input.str(), o.residual, tol, o.residual - tol});
    }
  }
  report.metrics = {{"max_residual", max_residual}, {"tol", tol}};
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sudiag
