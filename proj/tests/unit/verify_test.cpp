#include <gtest/gtest.h>

#include <numbers>

#include "fpdde/error.hpp"
#include "fpdde/problem_file.hpp"
#include "fpdde/verify.hpp"

using namespace fpdde;

namespace {

TEST(Sampling, DeterministicAndInsideThePolydisc) {
  SamplingPolicy p;
  p.samples = 500;
  p.radius = 1.5;
  const auto a = sample_points(p, 4);
  const auto b = sample_points(p, 4);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 500u);
  for (const auto& z : a) {
    ASSERT_EQ(z.size(), 4u);
    for (auto x : z) EXPECT_LE(std::abs(x), 1.5);
  }
  p.seed = 43;
  EXPECT_NE(sample_points(p, 4), a);
}

// Uniform on the disc: E[z] = 0, E|z|^2 = r^2 / 2.
TEST(Sampling, Moments) {
  SamplingPolicy p;
  p.samples = 20000;
  Complex mean = 0.0;
  double second = 0.0;
  for (const auto& z : sample_points(p, 1)) {
    mean += z[0];
    second += std::norm(z[0]);
  }
  mean /= static_cast<double>(p.samples);
  second /= p.samples;
  EXPECT_LT(std::abs(mean), 0.05);
  EXPECT_NEAR(second, 2.0, 0.05);
}

TEST(Sampling, PolicyValidation) {
  SamplingPolicy p;
  p.samples = 0;
  EXPECT_THROW(p.validate(), ProblemError);
  p = {};
  p.radius = -1.0;
  EXPECT_THROW(p.validate(), ProblemError);
  p = {};
  p.tolerance = 0.0;
  EXPECT_THROW(p.validate(), ProblemError);
}

TEST(CheckResidual, ZeroAndNonzero) {
  const Expr f = parse("sin(z1)^2 + cos(z1)^2", 1);
  const std::vector<Expr> scale{f};
  const VerificationReport ok = check_residual(f - Expr(1.0), scale, SamplingPolicy{}, 1);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.points_tested, 200);
  EXPECT_LT(ok.max_rel_residual, 1e-13);

  const VerificationReport bad = check_residual(parse("z1^2", 1), std::vector<Expr>{}, SamplingPolicy{}, 1);
  EXPECT_FALSE(bad.pass);
  EXPECT_GT(bad.max_rel_residual, 1e-2);
}

// Large cancelling terms are judged relative to their size.
TEST(CheckResidual, RelativeToScaleTerms) {
  const Expr big = parse("exp(20*z1)", 1);
  const std::vector<Expr> scale{big};
  const VerificationReport r = check_residual(big - big * Expr(1.0 + 1e-15), scale, SamplingPolicy{}, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.max_abs_residual, 1e-8);
}

TEST(CheckResidual, PoleHitsAreSkipped) {
  SamplingPolicy p;
  p.pole_epsilon = 1.0;  // |z1| < 1 counts as a pole of 1/z1
  const VerificationReport r = check_residual(parse("1/z1 - 1/z1", 1), std::vector<Expr>{}, p, 1);
  EXPECT_GT(r.points_skipped, 0);
  EXPECT_EQ(r.points_tested + r.points_skipped, 200);
  EXPECT_TRUE(r.pass);  // about a quarter of the disc of radius 2 is skipped

  p.radius = 0.5;  // everything skipped: no verdict can pass
  const VerificationReport all = check_residual(parse("1/z1 - 1/z1", 1), std::vector<Expr>{}, p, 1);
  EXPECT_EQ(all.points_skipped, 200);
  EXPECT_FALSE(all.pass);
}

TEST(CheckResidual, DeterministicSerialization) {
  const Expr r = parse("z1*z2 - z2*z1 + 1e-12*z1", 2);
  const std::string a = report_to_json(check_residual(r, std::vector<Expr>{}, SamplingPolicy{}, 2));
  const std::string b = report_to_json(check_residual(r, std::vector<Expr>{}, SamplingPolicy{}, 2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_to_text(check_residual(r, std::vector<Expr>{}, SamplingPolicy{}, 2)),
            report_to_text(check_residual(r, std::vector<Expr>{}, SamplingPolicy{}, 2)));
}

TEST(Order, KnownGrowth) {
  const auto radii = default_order_radii();
  EXPECT_NEAR(estimate_order(parse("exp(z1 + z2)", 2), 2, radii).order, 1.0, 0.15);
  EXPECT_NEAR(estimate_order(parse("exp(z1^2) + z2", 2), 2, radii).order, 2.0, 0.2);
  EXPECT_NEAR(estimate_order(parse("exp(z1*z2*z3)", 3), 3, radii).order, 3.0, 0.3);
  EXPECT_LE(estimate_order(parse("z1^3*z2", 2), 2, radii).order, 0.2);
  EXPECT_LE(estimate_order(parse("7", 1), 1, radii).order, 0.2);
}

TEST(Order, StableUnderMoreDirections) {
  const auto radii = default_order_radii();
  for (const char* s : {"exp(z1 + z2)", "exp(z1^2) + z2", "z1^3*z2", "sin(z1)*exp(z2^2/3)"}) {
    const Expr f = parse(s, 2);
    const double a = estimate_order(f, 2, radii, {256, 42}).order;
    const double b = estimate_order(f, 2, radii, {512, 42}).order;
    EXPECT_LT(std::abs(a - b), 0.1) << s;
  }
}

TEST(Order, Errors) {
  const auto radii = default_order_radii();
  EXPECT_THROW(estimate_order(parse("wp(z1)", 1), 1, radii), EvalError);
  const std::vector<double> one{2.0};
  EXPECT_THROW(estimate_order(parse("z1", 1), 1, one), ProblemError);
  const std::vector<double> down{8.0, 4.0, 2.0};
  EXPECT_THROW(estimate_order(parse("z1", 1), 1, down), ProblemError);
}

}  // namespace
