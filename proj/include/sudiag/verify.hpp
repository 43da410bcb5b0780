#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sudiag/kernels.hpp"
#include "sudiag/matrix_core.hpp"

namespace sudiag {

enum class ReportKind { MonteCarlo, Preimage, ConstrainedMax, Proposition1, SOInterval };

std::string_view to_string(ReportKind kind);

struct DetailRecord {
  std::string input;
  double measured = 0.0;
  double expected = 0.0;
  double error = 0.0;

  friend bool operator==(const DetailRecord&, const DetailRecord&) = default;
};

/// Outcome of a verification run. `details` holds one record per failure
/// (plus informational records for optimizer restarts), sorted by input.
/// `elapsed_seconds` is wall time and is the only field that varies between
/// identical runs.
struct VerificationReport {
  ReportKind kind = ReportKind::MonteCarlo;
  int n = 0;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double worst_margin = 0.0;
  std::vector<DetailRecord> details;
  RngSeed seed;
  double elapsed_seconds = 0.0;
  /// Named scalar results in insertion order (best value, targets, residuals).
  std::vector<std::pair<std::string, double>> metrics;
  /// Matrix backing the result when there is one (e.g. the best maximizer).
  std::optional<CMatrix> witness;

  std::optional<double> metric(std::string_view name) const;
};

/// Field-by-field equality ignoring elapsed_seconds.
bool same_outcome(const VerificationReport& a, const VerificationReport& b);

// Haar SU(n) samples classified by su_region_contains. A failure is an Outside
// verdict; worst_margin is the smallest signed margin seen.
VerificationReport monte_carlo_containment(int n, std::int64_t trials, RngSeed seed,
                                           double tol = 1e-9,
                                           Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Preimages through the homotopy family A(alpha, omega).

struct PreimageResult {
  CMatrix matrix;
  double alpha = 0.0;
  double omega = 0.0;
  double residual = 0.0;
  bool converged = false;
};

class PreimageError : public std::runtime_error {
 public:
  PreimageError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

struct PreimageConfig {
  int alpha_cells = 256;
  int omega_cells = 128;
  int newton_starts = 8;
  int max_newton_iterations = 100;
  int refinements = 4;
  double fd_step = 1e-7;
};

/// Best effort solve of diag_product(A(alpha, omega)) = z. Never throws on
/// non-convergence; check `converged`.
PreimageResult solve_preimage(int n, Complex z, double tol = 1e-10,
                              const PreimageConfig& config = {});

/// Matrix in SU(n) with |diag_product - z| <= tol. Throws std::domain_error when
/// z is outside the region and PreimageError when the solver does not converge.
CMatrix preimage(int n, Complex z, double tol = 1e-10);

/// Rejection-samples `points` interior targets from the unit disk, solves each
/// and checks the residual and SU(n) membership.
VerificationReport verify_preimages(int n, std::int64_t points, RngSeed seed, double tol = 1e-10,
                                    Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Direct numerical solution of: maximize Re(e^{-i theta} Pd(U)) over SU(n)
// subject to Im(e^{-i theta} Pd(U)) = 0.

struct OptimizerConfig {
  int restarts = 8;
  int max_iterations = 2000;
  double step_init = 0.5;
  double constraint_penalty_init = 10.0;
  double penalty_growth = 10.0;
  int escalations = 6;
  double tol_value = 1e-13;
  double tol_constraint = 1e-6;
  double fd_step = 1e-6;
  double recognize_tol = 1e-4;
};

/// Penalty-method ascent with random restarts. Metrics: best_value, target
/// (|gamma(alpha(theta))|), constraint_residual, recognized, target_tol.
/// witness holds the best maximizer.
VerificationReport constrained_max_numeric(int n, double theta, const OptimizerConfig& config,
                                           RngSeed seed, Execution exec = Execution::Parallel);

/// Tolerance the optimizer is held to: 1e-3 within 0.1 of the cusp at
/// theta = 0, 1e-4 elsewhere.
double constrained_max_tolerance(double theta);

// ---------------------------------------------------------------------------

/// Unit-disk image of U(n): Haar bound, U_z lattice reproduction on a
/// grid x grid lattice, and the strict bound for non-diagonal samples.
VerificationReport verify_proposition1(int n, std::int64_t trials, RngSeed seed, int grid,
                                       Execution exec = Execution::Parallel);

/// SO(n) interval: A(pi, omega) sweep coverage, Haar SO(n) samples, and the
/// two endpoint extremizers.
VerificationReport verify_so_interval(int n, int sweep, std::int64_t trials, RngSeed seed,
                                      Execution exec = Execution::Parallel);

}  // namespace sudiag
