#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "draws.hpp"
#include "fpdde/constructors.hpp"
#include "fpdde/elliptic.hpp"
#include "fpdde/error.hpp"
#include "fpdde/problem_file.hpp"
#include "fpdde/verify.hpp"
#include "near.hpp"

using namespace fpdde;
using fpdde::testing::points;

namespace {

constexpr Complex I{0.0, 1.0};
const double kPi = std::numbers::pi;
const std::filesystem::path kFixtures = FPDDE_FIXTURE_DIR;

ProblemFile fixture(int k) { return load_problem_file(kFixtures / ("example" + std::to_string(k) + ".json")); }

double max_rel_gap(const Expr& a, const Expr& b, int n) {
  double worst = 0.0;
  for (const auto& z : points(n, 40, 17)) worst = std::max(worst, fpdde::testing::rel_diff(eval(a, z), eval(b, z)));
  return worst;
}

void expect_solves(const Construction& made) {
  const VerificationReport r = verify_problem(made.problem, made.f, SamplingPolicy{});
  EXPECT_TRUE(r.pass) << to_string(made.f) << " max_rel=" << r.max_rel_residual;
}

// Rebuild the fixture candidates from their periodic parts.
TEST(Construct, ReproducesExampleFour) {
  const std::vector<Complex> c{0.0, kPi * I, kPi * I};
  const Construction made = construct_cor1(3, c, parse("exp(z2 + z3)", 3));
  expect_solves(made);
  EXPECT_LT(max_rel_gap(made.f, *fixture(4).candidate, 3), 1e-12);
}

TEST(Construct, FixturesMatchTheirConstructions) {
  for (int k : {1, 3, 4, 5, 6, 7}) {
    const ProblemFile pf = fixture(k);
    EXPECT_TRUE(verify_problem(pf.problem, *pf.candidate, SamplingPolicy{}).pass) << "example " << k;
  }
}

TEST(Construct, RandomDrawsEveryFamily) {
  for (auto fam : fpdde::testing::kAllFamilies) {
    fpdde::testing::Drawer d(5000 + static_cast<int>(fam));
    for (int i = 0; i < 10; ++i) expect_solves(fpdde::testing::draw_construction(fam, d));
  }
}

TEST(Construct, CorollariesAgreeWithTheorems) {
  fpdde::testing::Drawer d(91);
  for (int i = 0; i < 10; ++i) {
    const int n = d.integer(2, 4);
    const auto c = d.shift(n);
    const std::vector<Complex> plain(c.begin() + 1, c.end());
    const auto rot = fpdde::testing::rotated_period(c);
    if (std::abs(fpdde::testing::sum(plain, 0)) < 0.3 || std::abs(fpdde::testing::sum(rot, 0)) < 0.3) continue;
    const Expr g2 = make_periodic(plain, 2, d.seed());
    EXPECT_LT(max_rel_gap(construct_cor1(n, c, g2).f, construct_t1({n, c, SolutionForm::II, g2}).f, n), 1e-10);
    const Expr g4 = make_periodic(rot, 2, d.seed(), PeriodBasis::Rotated);
    EXPECT_LT(max_rel_gap(construct_cor2(n, c, g4).f, construct_t2({n, c, SolutionForm::II, g4}).f, n), 1e-10);
  }
}

// With c1 = 0 form II is purely periodic; the quasi-period drift vanishes.
TEST(Construct, FormTwoWithoutDrift) {
  const std::vector<Complex> c{0.0, 1.0, -1.0};  // tau = 0 is fine here
  const Expr g = make_periodic(std::vector<Complex>{1.0, -1.0}, 2, 4);
  expect_solves(construct_t1({3, c, SolutionForm::II, g}));
}

TEST(Construct, Rejections) {
  const std::vector<Complex> c{1.0, 1.0, -1.0};  // tau = 0, c1 != 0
  const Expr g = make_periodic(std::vector<Complex>{1.0, -1.0}, 2, 4);
  EXPECT_THROW(construct_t1({3, c, SolutionForm::II, g}), ProblemError);
  EXPECT_THROW(construct_cor1(3, c, g), ProblemError);

  const std::vector<Complex> c2{0.5, 1.0};
  EXPECT_THROW(construct_t1({2, c2, SolutionForm::II, parse("z2", 2)}), ProblemError);        // not periodic
  EXPECT_THROW(construct_t1({2, c2, SolutionForm::II, parse("exp(z1)", 2)}), ProblemError);   // uses z1
  EXPECT_THROW(construct_t1({2, c2, SolutionForm::I, parse("exp(2*pi*i*z2)", 2)}), ProblemError);  // no drift
  EXPECT_THROW(construct_t2({2, c2, SolutionForm::II, parse("exp(2*pi*i*z2)", 2)}), ProblemError);  // not rotated
  EXPECT_THROW(construct_t1({2, {0.0, 0.0}, SolutionForm::II, Expr(1.0)}), ProblemError);
}

// G = 0 and c = (2, 1): f is polynomial and the residual vanishes exactly at integers.
TEST(Legacy, PolynomialCase) {
  const std::vector<Complex> c{2.0, 1.0};
  for (auto which : {LegacyEquation::Equ1, LegacyEquation::Equ2}) {
    const Construction made = construct_legacy(which, Expr(0.0), c);
    const Expr r = residual(made.problem, made.f);
    for (int a = -3; a <= 3; ++a) {
      for (int b = -3; b <= 3; ++b) {
        const Complex z[] = {static_cast<double>(a), static_cast<double>(b)};
        EXPECT_EQ(eval(r, z), Complex(0.0));
      }
    }
  }
  EXPECT_THROW(construct_legacy(LegacyEquation::Equ1, Expr(0.0), std::vector<Complex>{1.0, 0.0}), ProblemError);
  EXPECT_THROW(construct_legacy(LegacyEquation::Equ2, Expr(0.0), std::vector<Complex>{1.0, 1.0}), ProblemError);
}

TEST(NegativeControl, CubicPowerFails) {
  fpdde::testing::Drawer d(33);
  for (int i = 0; i < 5; ++i) {
    const int n = d.integer(2, 4);
    const auto c = d.shift(n);
    const std::vector<Complex> period(c.begin() + 1, c.end());
    const Construction made = negative_control_cubic(n, c, make_periodic(period, 2, d.seed()));
    EXPECT_EQ(made.problem.m1, 3);
    const VerificationReport r = verify_problem(made.problem, made.f, SamplingPolicy{});
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_rel_residual, 1e-2);
  }
}

TEST(Fermat, Pairs) {
  const Expr h = parse("z1 + z2^2/3", 2);
  for (auto fam : {FermatFamily::CosSin, FermatFamily::Mobius}) {
    const FermatPair pair = construct_fermat_pair(fam, h);
    EXPECT_EQ(pair.power, 2);
    SamplingPolicy p;
    p.radius = 1.0;
    EXPECT_TRUE(verify_problem(fermat_problem(pair, 2), pair.f, p).pass);
  }
  const FermatPair cubic = construct_fermat_pair(FermatFamily::Cubic, Expr::var(1));
  EXPECT_EQ(cubic.power, 3);
  int used = 0;
  for (const auto& z : points(1, 300, 8, 2.0)) {
    try {
      const Complex f = eval(cubic.f, z, {&EllipticContext::shared()});
      const Complex g = eval(cubic.g, z, {&EllipticContext::shared()});
      if (std::abs(f) > 100.0 || std::abs(g) > 100.0) continue;
      EXPECT_LE(std::abs(f * f * f + g * g * g - 1.0), 1e-7);
      ++used;
    } catch (const PoleHit&) {
    }
  }
  EXPECT_GE(used, 100);
}

}  // namespace
