#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace fpdde {

// Weierstrass P for the invariants g2 = 0, g3 = 1, i.e. (P')^2 = 4 P^3 - 1.
//
// The lattice is equianharmonic: omega1 is the real half-period
// Gamma(1/3)^3 / (4 pi) ~ 1.5299540 and omega2 = omega1 * exp(i pi / 3), so
// the periods 2*omega1 and 2*omega2 span a hexagonal lattice with
// P(omega1) = (1/4)^(1/3), the real root of 4t^3 - 1.
//
// Evaluation reduces the argument into the Voronoi cell of the lattice around
// 0, sums the Laurent series there, and uses the duplication formula once when
// the reduced point is outside the fast-convergence disc.
class EllipticContext {
 public:
  EllipticContext();

  // Process-wide instance; immutable after construction.
  static const EllipticContext& shared();

  std::complex<double> omega1() const { return omega1_; }
  std::complex<double> omega2() const { return omega2_; }
  std::pair<std::complex<double>, std::complex<double>> half_periods() const {
    return {omega1_, omega2_};
  }

  // Coefficients c_k of P(z) = z^-2 + sum_{k>=2} c_k z^(2k-2); index k.
  std::span<const double> laurent_coefficients() const { return coeffs_; }

  // Representative of z modulo the lattice that lies in the cell around 0.
  // Throws PoleHit within 1e-8 of a lattice point.
  std::complex<double> reduce_point(std::complex<double> z) const;

  // (P(z), P'(z)). Throws PoleHit when the reduced point is within
  // kPoleRadius of the origin.
  std::pair<std::complex<double>, std::complex<double>> wp_pair(std::complex<double> z) const;

  static constexpr double kPoleRadius = 1e-2;
  static constexpr double kLatticeProximity = 1e-8;

 private:
  std::pair<std::complex<double>, std::complex<double>> series(std::complex<double> z) const;

  std::complex<double> omega1_;
  std::complex<double> omega2_;
  std::vector<double> coeffs_;
};

}  // namespace fpdde
