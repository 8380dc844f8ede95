#include "fpdde/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fpdde/elliptic.hpp"
#include "fpdde/error.hpp"

namespace fpdde {
namespace {

// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double modulus_or_inf(Complex v) {
  const double a = std::abs(v);
  return std::isfinite(a) ? a : std::numeric_limits<double>::infinity();
}

}  // namespace

void SamplingPolicy::validate() const {
  if (samples < 1) throw ProblemError("sample count must be >= 1");
  if (!(radius > 0.0)) throw ProblemError("sampling radius must be positive");
  if (!(tolerance > 0.0)) throw ProblemError("tolerance must be positive");
  if (!(pole_epsilon >= 0.0)) throw ProblemError("pole threshold must be non-negative");
}

std::vector<std::vector<Complex>> sample_points(const SamplingPolicy& policy, int dimension) {
  policy.validate();
  if (dimension < 1) throw ProblemError("dimension must be >= 1");
  std::mt19937_64 rng(policy.seed);
  std::vector<std::vector<Complex>> points(static_cast<std::size_t>(policy.samples),
                                           std::vector<Complex>(static_cast<std::size_t>(dimension)));
  for (auto& p : points) {
    for (auto& x : p) {
      const double rho = policy.radius * std::sqrt(unit_uniform(rng));
      const double theta = 2.0 * std::numbers::pi * unit_uniform(rng);
      x = std::polar(rho, theta);
    }
  }
  return points;
}

VerificationReport check_residual(const Expr& residual, std::span<const Expr> scale_terms,
                                  const SamplingPolicy& policy, int dimension) {
  const auto points = sample_points(policy, dimension);
  bool elliptic = contains_elliptic(residual);
  for (const auto& t : scale_terms) elliptic = elliptic || contains_elliptic(t);
  const EvalOptions opts{elliptic ? &EllipticContext::shared() : nullptr, policy.pole_epsilon};

  VerificationReport report;
  report.policy = policy;
  for (const auto& p : points) {
    double res = 0.0;
    double scale = 1.0;
    try {
      res = modulus_or_inf(eval(residual, p, opts));
      for (const auto& t : scale_terms) scale = std::max(scale, modulus_or_inf(eval(t, p, opts)));
    } catch (const PoleHit&) {
      ++report.points_skipped;
      continue;
    }
    ++report.points_tested;
    const double rel = std::isfinite(scale) ? res / scale : std::numeric_limits<double>::infinity();
    report.max_abs_residual = std::max(report.max_abs_residual, res);
    report.max_rel_residual = std::max(report.max_rel_residual, rel);
  }
  report.pass = report.max_rel_residual <= policy.tolerance && 2 * report.points_skipped < policy.samples;
  return report;
}

VerificationReport verify_problem(const PDDEProblem& problem, const Expr& f, const SamplingPolicy& policy) {
  const auto terms = equation_terms(problem, f);
  return check_residual(residual(problem, f), terms, policy, problem.dimension);
}

std::vector<double> default_order_radii() {
  std::vector<double> radii;
  for (int k = 2; k <= 24; ++k) radii.push_back(std::ldexp(1.0, k));
  return radii;
}

GrowthEstimate estimate_order(const Expr& f, int dimension, std::span<const double> radii,
                              const OrderOptions& options) {
  if (contains_elliptic(f)) throw EvalError("order estimation needs an entire candidate");
  if (dimension < 1) throw ProblemError("dimension must be >= 1");
  if (options.directions < 1) throw ProblemError("need at least one direction");
  if (radii.size() < 2) throw ProblemError("order estimation needs at least two radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1]))) {
      throw ProblemError("radii must be positive and strictly increasing");
    }
  }

  // Uniform directions on the unit sphere of C^n: normalised complex Gaussians.
  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<Complex>> dirs(static_cast<std::size_t>(options.directions));
  for (auto& u : dirs) {
    u.resize(static_cast<std::size_t>(dimension));
    double norm2 = 0.0;
    for (auto& x : u) {
      const double r = std::sqrt(-2.0 * std::log1p(-unit_uniform(rng)));
      x = std::polar(r, 2.0 * std::numbers::pi * unit_uniform(rng));
      norm2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : u) x *= inv;
  }

  GrowthEstimate est;
  est.directions = options.directions;
  std::vector<Complex> z(static_cast<std::size_t>(dimension));
  for (double r : radii) {
    double best = -std::numeric_limits<double>::infinity();
    bool finite = true;
    for (const auto& u : dirs) {
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = r * u[j];
      const ScaledComplex v = eval_scaled(f, z);
      if (v.is_zero()) continue;
      if (!v.is_finite()) {
        finite = false;
        break;
      }
      best = std::max(best, v.log_abs());
    }
    if (!finite) {
      est.truncated = true;
      break;
    }
    est.radii.push_back(r);
    est.log_max_modulus.push_back(best);
  }
  if (est.radii.size() < 2) throw ProblemError("fewer than two radii evaluated to finite values");

  // log+ log M(r) against log r.
  const std::size_t count = est.radii.size();
  const std::size_t first = std::min(count / 2, count - 2);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(count - first);
  for (std::size_t k = first; k < count; ++k) {
    const double x = std::log(est.radii[k]);
    const double y = std::log(std::max(est.log_max_modulus[k], 1.0));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  est.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return est;
}

}  // namespace fpdde
