#include "fpdde/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fpdde/error.hpp"

namespace fpdde {
namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

void check_period(std::span<const Complex> period) {
  if (period.empty()) throw ProblemError("period vector is empty");
  if (std::all_of(period.begin(), period.end(), [](Complex c) { return c == Complex{}; })) {
    throw ProblemError("period vector must be nonzero");
  }
}

Complex sum_of(std::span<const Complex> v) {
  Complex s = 0.0;
  for (auto x : v) s += x;
  return s;
}

std::vector<Complex> conjugated(std::span<const Complex> v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(std::conj(x));
  return out;
}

Complex random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  return {re, u(rng)};
}

Expr quasi_linear_part(std::span<const Complex> period, Complex c1, PeriodBasis basis) {
  if (c1 == Complex{}) return Expr(0.0);
  const Complex tau = sum_of(period);
  if (tau == Complex{}) throw ProblemError("tau = sum of period components vanishes while c1 != 0");
  const std::vector<Complex> ones(period.size(), c1 / (2.0 * tau));
  return linear_form(ones, basis);
}

}  // namespace

Complex bilinear(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error("bilinear product of vectors with different lengths");
  Complex s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

void PeriodicSpec::validate() const {
  check_period(period);
  if (frequencies.size() != amplitudes.size()) throw ProblemError("frequency/amplitude count mismatch");
  for (const auto& a : frequencies) {
    if (a.size() != period.size()) throw ProblemError("frequency vector has wrong length");
    const Complex p = bilinear(a, period);
    if (std::abs(p - std::round(p.real())) > 1e-12) {
      throw ProblemError("frequency is not integral against the period");
    }
  }
}

Expr linear_form(std::span<const Complex> coeffs, PeriodBasis basis) {
  std::vector<Expr> terms;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == Complex{}) continue;
    const int var = static_cast<int>(j) + 2;
    Expr w = Expr::var(var);
    if (basis == PeriodBasis::Rotated && var == 2) w = w - Expr::var(1);
    terms.push_back(Expr(coeffs[j]) * w);
  }
  return fold_constants(Expr::add(std::move(terms)));
}

PeriodicSpec draw_periodic_spec(std::span<const Complex> period, int terms, std::uint64_t seed,
                                PeriodBasis basis) {
  check_period(period);
  if (terms < 1) throw ProblemError("periodic function needs at least one term");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(-1, 1);

  const std::vector<Complex> u = conjugated(period);
  const Complex uc = bilinear(u, period);  // |c'|^2 > 0

  PeriodicSpec spec{{period.begin(), period.end()}, {}, {}, basis};
  for (int t = 0; t < terms; ++t) {
    std::vector<Complex> a(period.size());
    for (auto& x : a) x = random_complex(rng, 0.15);
    const double m = pick_m(rng);
    const Complex scale = (m - bilinear(a, period)) / uc;
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += scale * u[j];
    spec.frequencies.push_back(std::move(a));
    const double modulus = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    spec.amplitudes.push_back(std::polar(modulus, phase));
  }
  spec.validate();
  return spec;
}

Expr periodic_expr(const PeriodicSpec& spec) {
  spec.validate();
  std::vector<Expr> terms;
  for (std::size_t t = 0; t < spec.frequencies.size(); ++t) {
    std::vector<Complex> scaled = spec.frequencies[t];
    for (auto& x : scaled) x *= kTwoPiI;
    Expr term = Expr::exp(linear_form(scaled, spec.basis));
    if (spec.amplitudes[t] != Complex(1.0)) term = Expr(spec.amplitudes[t]) * term;
    terms.push_back(std::move(term));
  }
  return fold_constants(Expr::add(std::move(terms)));
}

Expr make_periodic(std::span<const Complex> period, int terms, std::uint64_t seed, PeriodBasis basis) {
  return periodic_expr(draw_periodic_spec(period, terms, seed, basis));
}

Expr make_quasi_periodic(std::span<const Complex> period, Complex c1, int terms, std::uint64_t seed,
                         PeriodBasis basis) {
  check_period(period);
  const Expr linear = quasi_linear_part(period, c1, basis);
  return fold_constants(make_periodic(period, terms, seed, basis) + linear);
}

Expr make_quasi_periodic_polynomial(std::span<const Complex> period, Complex c1, int degree,
                                    std::uint64_t seed, PeriodBasis basis) {
  check_period(period);
  if (degree < 0) throw ProblemError("polynomial degree must be non-negative");
  std::mt19937_64 rng(seed);

  // b orthogonal (bilinearly) to the period, so <b, w> is period-invariant.
  std::vector<Complex> b(period.size());
  for (auto& x : b) x = random_complex(rng, 1.0);
  const std::vector<Complex> u = conjugated(period);
  const Complex scale = bilinear(b, period) / bilinear(u, period);
  for (std::size_t j = 0; j < b.size(); ++j) b[j] -= scale * u[j];

  const Expr invariant = linear_form(b, basis);
  std::vector<Expr> terms{quasi_linear_part(period, c1, basis)};
  for (int k = 0; k <= degree; ++k) {
    const Complex coeff = random_complex(rng, 1.0) / static_cast<double>(1 + k);
    terms.push_back(Expr(coeff) * Expr::pow(invariant, k));
  }
  return fold_constants(Expr::add(std::move(terms)));
}

}  // namespace fpdde
