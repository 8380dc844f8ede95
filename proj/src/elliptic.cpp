#include "fpdde/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "fpdde/error.hpp"

namespace fpdde {
namespace {

using C = std::complex<double>;

constexpr int kSeriesOrder = 40;  // highest k in the Laurent table
constexpr double kSeriesRadius = 1.0;

}  // namespace

EllipticContext::EllipticContext() {
  const double g = std::tgamma(1.0 / 3.0);
  const double real_half = g * g * g / (4.0 * std::numbers::pi);
  omega1_ = C(real_half, 0.0);
  omega2_ = omega1_ * std::polar(1.0, std::numbers::pi / 3.0);

  // c_2 = g2/20, c_3 = g3/28,
  // c_k = 3 / ((2k+1)(k-3)) * sum_{m=2}^{k-2} c_m c_{k-m}  for k >= 4.
  coeffs_.assign(kSeriesOrder + 1, 0.0);
  coeffs_[2] = 0.0;
  coeffs_[3] = 1.0 / 28.0;
  for (int k = 4; k <= kSeriesOrder; ++k) {
    double s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += coeffs_[m] * coeffs_[k - m];
    coeffs_[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
  }
}

const EllipticContext& EllipticContext::shared() {
  static const EllipticContext ctx;
  return ctx;
}

C EllipticContext::reduce_point(C z) const {
  const C v1 = 2.0 * omega1_;
  const C v2 = 2.0 * omega2_;
  // Real coordinates of z in the basis (v1, v2).
  const double det = v1.real() * v2.imag() - v1.imag() * v2.real();
  const double a = (z.real() * v2.imag() - z.imag() * v2.real()) / det;
  const double b = (v1.real() * z.imag() - v1.imag() * z.real()) / det;
  const C base = z - std::round(a) * v1 - std::round(b) * v2;

  C best = base;
  for (int p = -1; p <= 1; ++p) {
    for (int q = -1; q <= 1; ++q) {
      const C cand = base - static_cast<double>(p) * v1 - static_cast<double>(q) * v2;
      if (std::abs(cand) < std::abs(best)) best = cand;
    }
  }
  if (std::abs(best) < kLatticeProximity) throw PoleHit("argument lies on the period lattice");
  return best;
}

std::pair<C, C> EllipticContext::series(C z) const {
  const C w = z * z;
  C p = 0.0;
  C dp = 0.0;
  C wk = 1.0;  // w^(k-2)
  for (int k = 2; k <= kSeriesOrder; ++k) {
    const double ck = coeffs_[static_cast<std::size_t>(k)];
    p += ck * wk * w;                                 // c_k z^(2k-2)
    dp += ck * (2.0 * k - 2.0) * wk * z;              // c_k (2k-2) z^(2k-3)
    wk *= w;
  }
  p += 1.0 / w;
  dp += -2.0 / (w * z);
  return {p, dp};
}

std::pair<C, C> EllipticContext::wp_pair(C z) const {
  const C r = reduce_point(z);
  if (std::abs(r) < kPoleRadius) throw PoleHit("argument within the pole neighbourhood of P");
  if (std::abs(r) <= kSeriesRadius) return series(r);

  // Duplication with g2 = 0: P'' = 6 P^2, q = P''/(2P') = 3P^2/P',
  // P(2u) = q^2 - 2P(u),  P'(2u) = q q' - P'(u),  q' = 6P - 18 P^4 / P'^2.
  const auto [p, dp] = series(r / 2.0);
  const C q = 3.0 * p * p / dp;
  const C p2 = p * p;
  const C dq = 6.0 * p - 18.0 * p2 * p2 / (dp * dp);
  return {q * q - 2.0 * p, q * dq - dp};
}

}  // namespace fpdde
