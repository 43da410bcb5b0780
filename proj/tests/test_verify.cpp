#include <doctest.h>

#include <cmath>

#include "sudiag/boundary.hpp"
#include "sudiag/constructors.hpp"
#include "sudiag/region.hpp"
#include "sudiag/verify.hpp"
#include "test_support.hpp"

using namespace sudiag;
using sudiag::testing::kPi;

namespace {

void check_report_contract(const VerificationReport& r) {
  CHECK(r.failures <= r.trials);
  CHECK(r.details.size() >= static_cast<std::size_t>(r.failures));
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("monte carlo containment, small n") {
  const VerificationReport one = monte_carlo_containment(1, 100, RngSeed{1});
  CHECK(one.failures == 0);
  for (const Complex& p : sample_su_diag_products(1, 100, RngSeed{1})) CHECK(p == Complex{1.0, 0.0});

  const VerificationReport two = monte_carlo_containment(2, 10000, RngSeed{2});
  CHECK(two.failures == 0);
  for (const Complex& p : sample_su_diag_products(2, 10000, RngSeed{2})) {
    CHECK(std::abs(p.imag()) <= 1e-9);
    CHECK(p.real() >= -1e-9);
    CHECK(p.real() <= 1.0 + 1e-9);
  }
  check_report_contract(two);
}

TEST_CASE("monte carlo containment, n = 3 and 5") {
  for (int n : {3, 5}) {
    const VerificationReport r = monte_carlo_containment(n, 20000, RngSeed{3});
    CHECK(r.failures == 0);
    CHECK(r.worst_margin > -1e-9);
    CHECK(r.metric("inside").value() + r.metric("on_boundary").value() == 20000.0);
    check_report_contract(r);
  }
}

TEST_CASE("serial and parallel runs give identical reports") {
  CHECK(same_outcome(monte_carlo_containment(4, 3000, RngSeed{5}, 1e-9, Execution::Serial),
                     monte_carlo_containment(4, 3000, RngSeed{5}, 1e-9, Execution::Parallel)));
  CHECK(same_outcome(verify_preimages(3, 10, RngSeed{5}, 1e-10, Execution::Serial),
                     verify_preimages(3, 10, RngSeed{5}, 1e-10, Execution::Parallel)));
  CHECK(same_outcome(verify_proposition1(4, 500, RngSeed{5}, 11, Execution::Serial),
                     verify_proposition1(4, 500, RngSeed{5}, 11, Execution::Parallel)));
  CHECK(same_outcome(verify_so_interval(4, 500, 500, RngSeed{5}, Execution::Serial),
                     verify_so_interval(4, 500, 500, RngSeed{5}, Execution::Parallel)));
  OptimizerConfig config;
  config.restarts = 3;
  CHECK(same_outcome(constrained_max_numeric(3, 1.0, config, RngSeed{5}, Execution::Serial),
                     constrained_max_numeric(3, 1.0, config, RngSeed{5}, Execution::Parallel)));
}

TEST_CASE("different seeds give different samples") {
  CHECK(sample_su_diag_products(3, 10, RngSeed{1}) != sample_su_diag_products(3, 10, RngSeed{2}));
}

TEST_CASE("preimage: z = 1, boundary point, interior points") {
  const CMatrix one = preimage(3, 1.0);
  CHECK(std::abs(diag_product(one) - 1.0) <= 1e-10);
  CHECK(is_special_unitary(one));

  const Complex edge = gamma(4, 0.9);
  const PreimageResult r = solve_preimage(4, edge, 1e-10);
  CHECK(r.converged);
  CHECK(r.residual <= 1e-10);
  CHECK(std::abs(r.omega - homotopy_omega_max(4)) < 1e-4);

  for (Complex z : {Complex{0.0, 0.0}, Complex{0.15, 0.05}, Complex{-0.02, 0.0}, Complex{0.3, -0.05}}) {
    const CMatrix u = preimage(3, z);
    CHECK(std::abs(diag_product(u) - z) <= 1e-10);
    CHECK(is_special_unitary(u));
  }
  CHECK_THROWS_AS(preimage(3, {0.9, 0.4}), std::domain_error);
  CHECK_THROWS_AS(preimage(2, 0.5), std::invalid_argument);
}

TEST_CASE("preimage batch") {
  const VerificationReport r = verify_preimages(4, 30, RngSeed{9});
  CHECK(r.failures == 0);
  CHECK(r.metric("max_residual").value() <= 1e-10);
  check_report_contract(r);
}

TEST_CASE("constrained maximization matches the boundary on both sides") {
  OptimizerConfig config;
  const VerificationReport top = constrained_max_numeric(3, 0.0, config, RngSeed{0});
  CHECK(top.failures == 0);
  CHECK(std::abs(top.metric("best_value").value() - 1.0) < 1e-6);
  CHECK(std::abs(diag_product(*top.witness) - 1.0) < 1e-6);

  const VerificationReport pi3 = constrained_max_numeric(3, kPi, config, RngSeed{0});
  CHECK(std::abs(pi3.metric("best_value").value() - 1.0 / 27.0) < 1e-4);

  const VerificationReport r = constrained_max_numeric(4, 2.0, config, RngSeed{1});
  CHECK(r.failures == 0);
  CHECK(std::abs(r.metric("best_value").value() - radius_of_theta(4, 2.0).r) < 1e-4);
  CHECK(r.metric("recognized").value() == 1.0);
  CHECK(r.metric("rebuilt_diag_product_error").value() < 1e-6);
  CHECK(is_special_unitary(*r.witness, 1e-10));
  // Never above the theorem's bound.
  for (const DetailRecord& d : r.details) CHECK(d.measured <= d.expected + 1e-6);
  CHECK(r.details.size() == static_cast<std::size_t>(config.restarts));
}

TEST_CASE("optimizer config validation") {
  OptimizerConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(constrained_max_numeric(3, 0.5, bad, RngSeed{}), std::invalid_argument);
  CHECK_THROWS_AS(constrained_max_numeric(2, 0.5, OptimizerConfig{}, RngSeed{}), std::invalid_argument);
  CHECK(constrained_max_tolerance(0.05) == 1e-3);
  CHECK(constrained_max_tolerance(1.0) == 1e-4);
}

TEST_CASE("proposition 1") {
  const VerificationReport r = verify_proposition1(4, 2000, RngSeed{7}, 41);
  CHECK(r.failures == 0);
  CHECK(r.metric("max_abs_diag_product").value() <= 1.0 + 1e-12);
  CHECK(r.metric("max_lattice_error").value() <= 1e-12);
  check_report_contract(r);
}

TEST_CASE("SO interval") {
  for (int n = 2; n <= 5; ++n) {
    const VerificationReport r = verify_so_interval(n, 2000, 2000, RngSeed{8});
    CHECK(r.failures == 0);
    CHECK(std::abs(r.metric("lower_extremizer_value").value() + std::pow(1.0 - 2.0 / n, n)) < 1e-12);
    CHECK(r.metric("upper_extremizer_value").value() == doctest::Approx(1.0).epsilon(1e-12));
    check_report_contract(r);
  }
}

TEST_CASE("failure reporting") {
  // For n = 2 the margin is tol - distance, so tol = -1 puts every sample Outside.
  const VerificationReport r = monte_carlo_containment(2, 50, RngSeed{1}, -1.0);
  CHECK(r.failures == 50);
  CHECK(r.details.size() == 50);
  check_report_contract(r);
}

}  // TEST_SUITE
