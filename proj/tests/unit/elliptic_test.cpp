#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fpdde/elliptic.hpp"
#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"
#include "near.hpp"

using namespace fpdde;
using fpdde::testing::rel_diff;

namespace {

const EllipticContext& ctx() { return EllipticContext::shared(); }

// Composite Simpson on [0, 1].
template <class F>
double simpson(F f, int intervals) {
  const double h = 1.0 / intervals;
  double s = f(0.0) + f(1.0);
  for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return s * h / 3.0;
}

// omega1 = int_{t0}^inf dt / sqrt(4 t^3 - 1), t0 = 4^(-1/3). With t = t0 + s^2
// the integrand is 1 / sqrt(3 t0^2 + 3 t0 s^2 + s^4) on [0, inf); the tail
// s > 1 is folded onto (0, 1] by s = 1 / v.
TEST(Elliptic, HalfPeriodMatchesQuadrature) {
  const double t0 = std::cbrt(0.25);
  const auto head = [&](double s) { return 1.0 / std::sqrt(3 * t0 * t0 + 3 * t0 * s * s + s * s * s * s); };
  const auto tail = [&](double v) { return 1.0 / std::sqrt(3 * t0 * t0 * v * v * v * v + 3 * t0 * v * v + 1.0); };
  const double omega = simpson(head, 4000) + simpson(tail, 4000);
  EXPECT_NEAR(ctx().omega1().real(), omega, 1e-12);
  EXPECT_EQ(ctx().omega1().imag(), 0.0);
  EXPECT_LT(std::abs(ctx().omega2() - ctx().omega1() * std::polar(1.0, std::numbers::pi / 3)), 1e-14);
}

TEST(Elliptic, ValueAtHalfPeriod) {
  EXPECT_NEAR(std::abs(ctx().wp_pair(ctx().omega1()).first - std::cbrt(0.25)), 0.0, 1e-8);
  EXPECT_LT(std::abs(ctx().wp_pair(ctx().omega1()).second), 1e-7);
}

// P(z) = z^-2 + z^4 / 28 + O(z^10).
TEST(Elliptic, NearOriginSeries) {
  const auto [p, dp] = ctx().wp_pair(0.1);
  EXPECT_NEAR(p.real(), 100.0 + 1e-4 / 28.0, 1e-10);
  EXPECT_NEAR(p.imag(), 0.0, 1e-12);
  EXPECT_NEAR(dp.real(), -2000.0 + 4e-3 / 28.0, 1e-9);
}

TEST(Elliptic, LaurentCoefficients) {
  const auto c = ctx().laurent_coefficients();
  ASSERT_GT(c.size(), 6u);
  EXPECT_EQ(c[2], 0.0);
  EXPECT_DOUBLE_EQ(c[3], 1.0 / 28.0);
  EXPECT_EQ(c[4], 0.0);
  EXPECT_EQ(c[5], 0.0);
  EXPECT_DOUBLE_EQ(c[6], 3.0 / (13.0 * 3.0) * (c[3] * c[3]));
}

TEST(Elliptic, OdeEvenPeriodic) {
  const auto [w1, w2] = ctx().half_periods();
  for (int a = 0; a < 25; ++a) {
    for (int b = 0; b < 25; ++b) {
      const Complex z = 2.0 * w1 * ((a + 0.3) / 25.0) + 2.0 * w2 * ((b + 0.6) / 25.0);
      try {
        const auto [p, dp] = ctx().wp_pair(z);
        const double scale = std::max({1.0, std::norm(dp), 4.0 * std::pow(std::abs(p), 3)});
        EXPECT_LE(std::abs(dp * dp - 4.0 * p * p * p + 1.0) / scale, 1e-9);
        const auto [pm, dpm] = ctx().wp_pair(-z);
        EXPECT_LE(rel_diff(pm, p), 1e-12);
        EXPECT_LE(rel_diff(dpm, -dp), 1e-12);
        EXPECT_LE(rel_diff(ctx().wp_pair(z + 2.0 * w1).first, p), 1e-9);
        EXPECT_LE(rel_diff(ctx().wp_pair(z + 2.0 * w2).first, p), 1e-9);
        EXPECT_LE(rel_diff(ctx().wp_pair(z - 6.0 * w2 + 4.0 * w1).first, p), 1e-9);
      } catch (const PoleHit&) {
      }
    }
  }
}

TEST(Elliptic, DerivativeMatchesFiniteDifference) {
  const Expr wp = Expr::wp(Expr::var(1));
  const EvalOptions opts{&ctx()};
  for (const auto& z : fpdde::testing::points(1, 100, 13, 3.0)) {
    try {
      if (std::abs(ctx().reduce_point(z[0])) < 0.1) continue;  // too close to a pole for the stencil
      const Complex dp = ctx().wp_pair(z[0]).second;
      EXPECT_LE(rel_diff(fd_partial(wp, 1, z, 1e-5, opts), dp), 1e-5);
    } catch (const PoleHit&) {
    }
  }
}

TEST(Elliptic, ReducePoint) {
  const auto [w1, w2] = ctx().half_periods();
  const Complex z(0.37, -0.21);
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      const Complex moved = z + 2.0 * w1 * static_cast<double>(a) + 2.0 * w2 * static_cast<double>(b);
      EXPECT_LT(std::abs(ctx().reduce_point(moved) - z), 1e-13);
    }
  }
  EXPECT_THROW(ctx().reduce_point(2.0 * w1 + 2.0 * w2), PoleHit);
  EXPECT_THROW(ctx().wp_pair(2.0 * w1 + Complex(1e-3, 0.0)), PoleHit);
}

}  // namespace
