#pragma once

// Data-parallel loops. Every kernel has a serial reference path and an OpenMP
// path; both write result k into slot k, so outputs are identical bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "sudiag/boundary.hpp"
#include "sudiag/matrix_core.hpp"
#include "sudiag/region.hpp"

namespace sudiag {

enum class Execution { Serial, Parallel };

template <class Fn>
void for_each_index(std::int64_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::int64_t k = 0; k < count; ++k) fn(k);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) fn(k);
}

/// Diagonal products of Haar SU(n) samples; sample k is drawn from
/// derive_seed(seed, k).
std::vector<Complex> sample_su_diag_products(int n, std::int64_t trials, RngSeed seed,
                                             Execution exec = Execution::Parallel);

std::vector<MembershipVerdict> classify_points(const BoundaryModel& model,
                                               std::span<const Complex> points, double tol,
                                               Execution exec = Execution::Parallel);

std::vector<MembershipVerdict> classify_points_winding(const WindingOracle& oracle,
                                                       std::span<const Complex> points,
                                                       double tol,
                                                       Execution exec = Execution::Parallel);

/// Row-major lattice of side `side` over [lo, hi]^2.
std::vector<Complex> square_grid(double lo, double hi, int side);

}  // namespace sudiag
