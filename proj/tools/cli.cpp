#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sudiag/boundary.hpp"
#include "sudiag/constructors.hpp"
#include "sudiag/output_record.hpp"
#include "sudiag/region.hpp"
#include "sudiag/verify.hpp"

namespace sudiag::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out_path, "Output file (default: standard output)");
}

ParamValue seed_param(std::uint64_t seed) {
  if (seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    return static_cast<std::int64_t>(seed);
  }
  return std::to_string(seed);
}

int emit(const OutputRecord& record, const OutputOptions& o, std::ostream& out, std::ostream& err) {
  const Format format = o.format == "json" ? Format::Json : Format::Csv;
  if (o.out_path.empty()) {
    write_record(out, record, format);
    return kOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << o.out_path << " for writing\n";
    return kIo;
  }
  write_record(file, record, format);
  file.flush();
  if (!file) {
    err << "error: write to " << o.out_path << " failed\n";
    return kIo;
  }
  return kOk;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int k = 0; k < count; ++k) xs[k] = lo + (hi - lo) * k / (count - 1);
  xs.back() = hi;
  return xs;
}

// ---------------------------------------------------------------------------

struct BoundaryArgs {
  int n = 3;
  int samples = 1024;
  OutputOptions output;
};

int cmd_boundary(const BoundaryArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 1 || a.samples < 2) throw std::invalid_argument("boundary: need n >= 1 and samples >= 2");
  OutputRecord record;
  record.command = "boundary";
  record.set("n", std::int64_t{a.n});
  record.set("samples", std::int64_t{a.samples});
  record.columns = {"alpha", "re", "im", "theta", "r"};
  for (double alpha : linspace(-kPi, kPi, a.samples)) {
    const Complex g = gamma(a.n, alpha);
    double theta = std::arg(g);
    double r = std::abs(g);
    if (a.n >= 3) {
      theta = theta_of_alpha(a.n, alpha);
      r = gamma_modulus(a.n, alpha);
    }
    record.rows.push_back({alpha, g.real(), g.imag(), theta, r});
  }
  return emit(record, a.output, out, err);
}

struct GammaImageArgs {
  int n = 3;
  int alpha_samples = 101;
  int y_samples = 51;
  OutputOptions output;
};

int cmd_gamma_image(const GammaImageArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 3 || a.alpha_samples < 2 || a.y_samples < 2) {
    throw std::invalid_argument("gamma-image: need n >= 3 and at least 2 samples per axis");
  }
  OutputRecord record;
  record.command = "gamma-image";
  record.set("n", std::int64_t{a.n});
  record.set("alpha_samples", std::int64_t{a.alpha_samples});
  record.set("y_samples", std::int64_t{a.y_samples});
  record.set("reference_radius", std::pow(1.0 - 2.0 / a.n, a.n));
  record.columns = {"alpha", "y", "re", "im", "jacobian"};
  const std::vector<double> ys = linspace(1.0, a.n - 1.0, a.y_samples);
  for (double alpha : linspace(0.0, kPi, a.alpha_samples)) {
    for (double y : ys) {
      const Complex g = big_gamma(a.n, alpha, y);
      record.rows.push_back({alpha, y, g.real(), g.imag(), jacobian_big_gamma(a.n, alpha, y)});
    }
  }
  return emit(record, a.output, out, err);
}

struct MembershipArgs {
  int n = 3;
  double re = 0.0;
  double im = 0.0;
  double tol = kRegionTol;
};

int cmd_membership(const MembershipArgs& a, std::ostream& out) {
  if (a.n < 1 || !(a.tol >= 0.0)) throw std::invalid_argument("membership: need n >= 1, tol >= 0");
  const Complex z{a.re, a.im};
  const MembershipVerdict polar = su_region_contains(a.n, z, a.tol);
  std::ostringstream line;
  line.precision(17);
  line << "n=" << a.n << " z=(" << a.re << ',' << a.im << ") polar=" << to_string(polar.status)
       << " margin=" << polar.signed_margin;
  if (a.n >= 3) {
    const MembershipVerdict winding = su_region_contains_winding(a.n, z, kWindingSamples, a.tol);
    line << " winding=" << to_string(winding.status) << " margin=" << winding.signed_margin;
  } else {
    line << " winding=n/a";
  }
  out << line.str() << '\n';
  return polar.status == Membership::Outside ? kNegative : kOk;
}

struct ExtremalArgs {
  int n = 3;
  std::optional<double> theta;
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  OutputOptions output;
};

// Random decomposition with the given alpha: v_k = e^{i phi_k}/sqrt(n) and
// diagonal phases whose sum is alpha modulo 2 pi.
ExtremalDecomposition random_decomposition(int n, double alpha, RngSeed seed) {
  std::mt19937_64 rng(derive_seed(seed, 0).value);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  ExtremalDecomposition d{reduce_angle(alpha), Eigen::VectorXcd(n), Eigen::VectorXd(n)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) d.v(k) = std::polar(scale, angle(rng));
  double sum = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    d.diag_phases(k) = angle(rng);
    sum += d.diag_phases(k);
  }
  d.diag_phases(n - 1) = reduce_angle(alpha - sum);
  return d;
}

int cmd_extremal(const ExtremalArgs& a, std::ostream& out, std::ostream& err) {
  if (a.theta.has_value() == a.alpha.has_value()) {
    err << "error: extremal needs exactly one of --theta or --alpha\n";
    return kUsage;
  }
  OutputRecord record;
  record.command = "extremal";
  record.set("n", std::int64_t{a.n});
  record.set("seed", seed_param(a.seed));
  CMatrix u;
  double alpha = 0.0;
  if (a.theta) {
    if (a.n < 3) throw std::invalid_argument("extremal: --theta needs n >= 3");
    alpha = alpha_of_theta(a.n, *a.theta);
    u = build_u_theta(a.n, *a.theta);
    record.set("mode", std::string("theta"));
    record.set("theta", *a.theta);
  } else {
    if (a.n < 2) throw std::invalid_argument("extremal: --alpha needs n >= 2");
    const ExtremalDecomposition d = random_decomposition(a.n, *a.alpha, RngSeed{a.seed});
    alpha = d.alpha;
    u = build_extremal(d);
    record.set("mode", std::string("alpha"));
  }
  const Complex pd = diag_product(u);
  const Complex g = gamma(a.n, alpha);
  record.set("alpha", alpha);
  record.set("diag_product_re", pd.real());
  record.set("diag_product_im", pd.imag());
  record.set("gamma_re", g.real());
  record.set("gamma_im", g.imag());
  record.set("diag_product_error", std::abs(pd - g));
  append_matrix(record, u);
  return emit(record, a.output, out, err);
}

struct PreimageArgs {
  int n = 3;
  double re = 0.0;
  double im = 0.0;
  double tol = 1e-10;
  OutputOptions output;
};

int cmd_preimage(const PreimageArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 3 || !(a.tol > 0.0)) throw std::invalid_argument("preimage: need n >= 3 and tol > 0");
  const Complex z{a.re, a.im};
  if (su_region_contains(a.n, z, a.tol).status == Membership::Outside) {
    err << "preimage: target lies outside the image for n=" << a.n << '\n';
    return kNegative;
  }
  const PreimageResult result = solve_preimage(a.n, z, a.tol);
  OutputRecord record;
  record.command = "preimage";
  record.set("n", std::int64_t{a.n});
  record.set("re", a.re);
  record.set("im", a.im);
  record.set("tol", a.tol);
  record.set("alpha", result.alpha);
  record.set("omega", result.omega);
  record.set("residual", result.residual);
  record.set("converged", std::int64_t{result.converged});
  append_matrix(record, result.matrix);
  const int status = emit(record, a.output, out, err);
  if (status != kOk) return status;
  if (!result.converged) {
    err << "preimage: no convergence, best residual " << format_double(result.residual) << '\n';
    return kNoConvergence;
  }
  return kOk;
}

struct VerifyArgs {
  std::string kind = "montecarlo";
  int n = 3;
  std::optional<std::int64_t> trials;
  int grid = 41;
  int sweep = 10000;
  double theta = 0.0;
  std::optional<double> tol;
  int restarts = OptimizerConfig{}.restarts;
  std::uint64_t seed = 0;
  bool serial = false;
  std::string witness_out;
  OutputOptions output;
};

OutputRecord report_record(const VerificationReport& report, const VerifyArgs& a) {
  OutputRecord record;
  record.command = "verify";
  record.set("kind", std::string(to_string(report.kind)));
  record.set("n", std::int64_t{report.n});
  record.set("trials", report.trials);
  record.set("failures", report.failures);
  record.set("worst_margin", report.worst_margin);
  record.set("seed", seed_param(report.seed.value));
  if (a.kind == "prop1") record.set("grid", std::int64_t{a.grid});
  if (a.kind == "so") record.set("sweep", std::int64_t{a.sweep});
  for (const auto& [name, value] : report.metrics) record.set(name, value);
  record.columns = {"detail", "measured", "expected", "error"};
  for (std::size_t k = 0; k < report.details.size(); ++k) {
    const DetailRecord& d = report.details[k];
    record.set("detail_" + std::to_string(k), d.input);
    record.rows.push_back({static_cast<double>(k), d.measured, d.expected, d.error});
  }
  return record;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const Execution exec = a.serial ? Execution::Serial : Execution::Parallel;
  const RngSeed seed{a.seed};
  VerificationReport report;
  if (a.kind == "montecarlo") {
    report = monte_carlo_containment(a.n, a.trials.value_or(100000), seed, a.tol.value_or(kRegionTol),
                                     exec);
  } else if (a.kind == "preimage") {
    report = verify_preimages(a.n, a.trials.value_or(100), seed, a.tol.value_or(1e-10), exec);
  } else if (a.kind == "constrained-max") {
    OptimizerConfig config;
    config.restarts = a.restarts;
    report = constrained_max_numeric(a.n, a.theta, config, seed, exec);
  } else if (a.kind == "prop1") {
    report = verify_proposition1(a.n, a.trials.value_or(10000), seed, a.grid, exec);
  } else {
    report = verify_so_interval(a.n, a.sweep, a.trials.value_or(10000), seed, exec);
  }

  int status = emit(report_record(report, a), a.output, out, err);
  if (status != kOk) return status;
  if (!a.witness_out.empty() && report.witness) {
    OutputRecord witness;
    witness.command = "verify-witness";
    witness.set("kind", std::string(to_string(report.kind)));
    witness.set("n", std::int64_t{report.n});
    witness.set("seed", seed_param(report.seed.value));
    append_matrix(witness, *report.witness);
    status = emit(witness, OutputOptions{a.output.format, a.witness_out}, out, err);
    if (status != kOk) return status;
  }
  err << to_string(report.kind) << " n=" << report.n << " trials=" << report.trials
      << " failures=" << report.failures << " elapsed=" << report.elapsed_seconds << "s\n";
  return report.failures == 0 ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagonal products of special unitary matrices"};
  app.name("sudiag");
  app.require_subcommand(1);

  BoundaryArgs boundary;
  auto* c_boundary = app.add_subcommand("boundary", "Sample the boundary curve gamma over [-pi, pi]");
  c_boundary->add_option("--n", boundary.n, "Matrix size (>= 1)");
  c_boundary->add_option("--samples", boundary.samples, "Number of alpha samples (>= 2)");
  add_output_options(c_boundary, boundary.output);
  c_boundary->footer("Columns: alpha, re, im, theta, r");

  GammaImageArgs image;
  auto* c_image = app.add_subcommand("gamma-image", "Grid image of Gamma over [0, pi] x [1, n-1]");
  c_image->add_option("--n", image.n, "Matrix size (>= 3)");
  c_image->add_option("--alpha-samples", image.alpha_samples, "Grid points in alpha");
  c_image->add_option("--y-samples", image.y_samples, "Grid points in y");
  add_output_options(c_image, image.output);
  c_image->footer("Columns: alpha, y, re, im, jacobian. Header carries reference_radius = (1-2/n)^n.");

  MembershipArgs membership;
  auto* c_membership = app.add_subcommand("membership", "Test z against the image with both oracles");
  c_membership->add_option("--n", membership.n, "Matrix size (>= 1)");
  c_membership->add_option("--re", membership.re, "Real part of z");
  c_membership->add_option("--im", membership.im, "Imaginary part of z");
  c_membership->add_option("--tol", membership.tol, "Boundary band half-width");
  c_membership->footer("Exit 0 for Inside/OnBoundary, 1 for Outside.");

  ExtremalArgs extremal;
  auto* c_extremal = app.add_subcommand("extremal", "Build an extremal matrix");
  c_extremal->add_option("--n", extremal.n, "Matrix size");
  c_extremal->add_option("--theta", extremal.theta, "Polar angle of the target boundary point (radians)");
  c_extremal->add_option("--alpha", extremal.alpha, "Curve parameter (radians); random v and phases");
  c_extremal->add_option("--seed", extremal.seed, "Seed for --alpha mode");
  add_output_options(c_extremal, extremal.output);
  c_extremal->footer("Columns: re_k, im_k per matrix column; header carries the diagonal product and gamma.");

  PreimageArgs pre;
  auto* c_preimage = app.add_subcommand("preimage", "Find U in SU(n) with a given diagonal product");
  c_preimage->add_option("--n", pre.n, "Matrix size (>= 3)");
  c_preimage->add_option("--re", pre.re, "Real part of z");
  c_preimage->add_option("--im", pre.im, "Imaginary part of z");
  c_preimage->add_option("--tol", pre.tol, "Residual tolerance");
  add_output_options(c_preimage, pre.output);
  c_preimage->footer("Columns: re_k, im_k per matrix column. Exit 1 outside the image, 4 on non-convergence.");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Run a numerical verification");
  c_verify->add_option("--kind", verify.kind, "montecarlo, preimage, constrained-max, prop1 or so")
      ->check(CLI::IsMember({"montecarlo", "preimage", "constrained-max", "prop1", "so"}));
  c_verify->add_option("--n", verify.n, "Matrix size");
  c_verify->add_option("--trials", verify.trials, "Samples (points for preimage)");
  c_verify->add_option("--grid", verify.grid, "Lattice side for prop1");
  c_verify->add_option("--sweep", verify.sweep, "Sweep steps for so");
  c_verify->add_option("--theta", verify.theta, "Ray angle for constrained-max (radians)");
  c_verify->add_option("--tol", verify.tol, "Tolerance for montecarlo and preimage");
  c_verify->add_option("--restarts", verify.restarts, "Optimizer restarts");
  c_verify->add_option("--seed", verify.seed, "Base seed");
  c_verify->add_flag("--serial", verify.serial, "Use the serial reference path");
  c_verify->add_option("--witness-out", verify.witness_out, "File for the best maximizer (constrained-max)");
  add_output_options(c_verify, verify.output);
  c_verify->footer("Columns: detail, measured, expected, error; detail_k headers hold the input summaries.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_boundary->parsed()) return cmd_boundary(boundary, out, err);
    if (c_image->parsed()) return cmd_gamma_image(image, out, err);
    if (c_membership->parsed()) return cmd_membership(membership, out);
    if (c_extremal->parsed()) return cmd_extremal(extremal, out, err);
    if (c_preimage->parsed()) return cmd_preimage(pre, out, err);
    return cmd_verify(verify, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace sudiag::cli
