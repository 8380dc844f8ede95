#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpdde/expr.hpp"

namespace fpdde {

// Coordinates w = (w2, ..., wn) in which a generated function is written.
//   Plain:   w = (z2, z3, ..., zn)
//   Rotated: w = (z2 - z1, z3, ..., zn); such functions are annihilated by
//            d/dz1 + d/dz2.
enum class PeriodBasis { Plain, Rotated };

// g(w) = sum_t amplitude_t * exp(2 pi i <a_t, w>) with <a_t, period> integral,
// so g(w + period) == g(w). <.,.> is the bilinear (unconjugated) product.
struct PeriodicSpec {
  std::vector<Complex> period;                 // n - 1 components
  std::vector<std::vector<Complex>> frequencies;
  std::vector<Complex> amplitudes;
  PeriodBasis basis = PeriodBasis::Plain;

  int dimension() const { return static_cast<int>(period.size()) + 1; }
  // Throws ProblemError if some <a_t, period> is further than 1e-12 from an integer.
  void validate() const;
};

// <a, b> without conjugation.
Complex bilinear(std::span<const Complex> a, std::span<const Complex> b);

// sum_j coeffs[j] * w_{j+2} expressed in z1..zn.
Expr linear_form(std::span<const Complex> coeffs, PeriodBasis basis);

// Random spec: each frequency is a0 + ((m - <a0,c'>) / <u,c'>) u with a0 small
// random, m in {-1, 0, 1} and u = conj(c'). Throws on a zero period.
PeriodicSpec draw_periodic_spec(std::span<const Complex> period, int terms, std::uint64_t seed,
                                PeriodBasis basis = PeriodBasis::Plain);

Expr periodic_expr(const PeriodicSpec& spec);

Expr make_periodic(std::span<const Complex> period, int terms, std::uint64_t seed,
                   PeriodBasis basis = PeriodBasis::Plain);

// g1 = make_periodic(...) + c1 * omega / (2 tau), omega = sum_j w_j,
// tau = sum_j period_j, so g1(w + period) = g1(w) + c1 / 2.
// tau == 0 is allowed only when c1 == 0.
Expr make_quasi_periodic(std::span<const Complex> period, Complex c1, int terms, std::uint64_t seed,
                         PeriodBasis basis = PeriodBasis::Plain);

// Polynomial with the same increment law: c1 omega / (2 tau) + P(<b, w>) where
// <b, period> = 0 and P has random coefficients and the given degree.
Expr make_quasi_periodic_polynomial(std::span<const Complex> period, Complex c1, int degree,
                                    std::uint64_t seed, PeriodBasis basis = PeriodBasis::Plain);

}  // namespace fpdde
