#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpdde/expr.hpp"
#include "fpdde/operators.hpp"

namespace fpdde {

struct SamplingPolicy {
  int samples = 200;
  double radius = 2.0;
  std::uint64_t seed = 42;
  double pole_epsilon = 1e-8;
  double tolerance = 1e-8;

  void validate() const;
};

struct VerificationReport {
  int points_tested = 0;
  int points_skipped = 0;  // pole hits
  double max_abs_residual = 0.0;
  // |res| / max(1, max_t |scale_term_t|), maximised over tested points.
  double max_rel_residual = 0.0;
  bool pass = false;
  SamplingPolicy policy;
};

// `samples` points in the polydisc: every coordinate uniform on the disc of
// the given radius. Deterministic in the seed.
std::vector<std::vector<Complex>> sample_points(const SamplingPolicy& policy, int dimension);

// Pass iff max_rel_residual <= tolerance and fewer than half of the points
// were skipped. A point is skipped when evaluating the residual or any scale
// term hits a pole (denominator below policy.pole_epsilon).
VerificationReport check_residual(const Expr& residual, std::span<const Expr> scale_terms,
                                  const SamplingPolicy& policy, int dimension);

VerificationReport verify_problem(const PDDEProblem& problem, const Expr& f,
                                  const SamplingPolicy& policy);

// Max-modulus growth estimate. log_max_modulus[k] is log M(radii[k]), where
// M(r) is the largest |f| seen over the sampled unit directions scaled to
// |z| = r. order is the least-squares slope of log log M(r) against log r
// over the upper half of the usable radii.
struct GrowthEstimate {
  std::vector<double> radii;
  std::vector<double> log_max_modulus;
  double order = 0.0;
  int directions = 0;
  // Set when the requested ladder was cut at the first radius whose
  // evaluation was not finite.
  bool truncated = false;
};

struct OrderOptions {
  int directions = 256;
  std::uint64_t seed = 42;
};

// Geometric ladder 2^2 .. 2^24. Large radii are needed for polynomials, whose
// log log M(r) / log r decays only like 1 / log r.
std::vector<double> default_order_radii();

// Throws EvalError for expressions containing Wp nodes, PoleHit when a
// denominator vanishes, ProblemError for fewer than two usable radii or a
// ladder that is not strictly increasing and positive.
GrowthEstimate estimate_order(const Expr& f, int dimension, std::span<const double> radii,
                              const OrderOptions& options = {});

}  // namespace fpdde
