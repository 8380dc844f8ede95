#include "fpdde/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpdde/error.hpp"
#include "fpdde/verify.hpp"

namespace fpdde {
namespace {

constexpr double kPeriodTolerance = 1e-9;
constexpr double kAnnihilationTolerance = 1e-10;

std::vector<Complex> negated(std::span<const Complex> c) {
  std::vector<Complex> out(c.begin(), c.end());
  for (auto& x : out) x = -x;
  return out;
}

bool effectively_zero(Complex tau, std::span<const Complex> c) {
  double scale = 1.0;
  for (auto x : c) scale = std::max(scale, std::abs(x));
  return std::abs(tau) <= 1e-12 * scale;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_shape(int n, std::span<const Complex> c, int min_dim) {
  if (n < min_dim) throw ProblemError("dimension must be >= " + std::to_string(min_dim));
  if (c.size() != static_cast<std::size_t>(n)) throw ProblemError("shift vector length differs from dimension");
  if (std::all_of(c.begin(), c.end(), [](Complex x) { return x == Complex{}; })) {
    throw ProblemError("shift vector must be nonzero");
  }
}

void check_vars(const Expr& e, int n, const char* what) {
  if (max_var_index(e) > n) throw ProblemError(std::string(what) + " uses a variable beyond the dimension");
}

SamplingPolicy check_policy() {
  SamplingPolicy p;
  p.samples = 50;
  p.seed = 7;
  return p;
}

// max |g(z+c) - g(z) - increment| / max(1, |g(z)|) over 50 polydisc points.
double increment_violation(const Expr& g, std::span<const Complex> c, Complex increment, int n) {
  const Expr shifted = shift(g, c);
  double worst = 0.0;
  for (const auto& z : sample_points(check_policy(), n)) {
    const Complex base = eval(g, z);
    const double v = std::abs(eval(shifted, z) - base - increment) / std::max(1.0, std::abs(base));
    worst = std::max(worst, std::isfinite(v) ? v : HUGE_VAL);
  }
  return worst;
}

void require_increment(const Expr& g, std::span<const Complex> c, Complex increment, int n,
                       const char* what) {
  const double v = increment_violation(g, c, increment, n);
  if (!(v <= kPeriodTolerance)) {
    throw ProblemError(std::string(what) + " violated: max relative deviation " + fmt(v));
  }
}

// (d1 + d2) g must vanish.
void require_annihilated(const Expr& g, int n) {
  const Expr d1 = derivative(g, 1);
  static constexpr Complex kDiagonal[] = {1.0, 1.0};
  const Expr dd = fold_constants(directional_derivative(g, kDiagonal));
  double worst = 0.0;
  for (const auto& z : sample_points(check_policy(), n)) {
    const double v = std::abs(eval(dd, z)) / std::max(1.0, std::abs(eval(d1, z)));
    worst = std::max(worst, std::isfinite(v) ? v : HUGE_VAL);
  }
  if (!(worst <= kAnnihilationTolerance)) {
    throw ProblemError("g is not annihilated by d/dz1 + d/dz2: max deviation " + fmt(worst));
  }
}

Expr sum_vars(int from, int to) {
  std::vector<Expr> terms;
  for (int j = from; j <= to; ++j) terms.push_back(Expr::var(j));
  return Expr::add(std::move(terms));
}

// tau and omega for both theorem families.
struct QuasiData {
  Complex tau;
  Complex k;  // c1 / (2 tau), 0 when c1 == 0
  Expr omega;
};

QuasiData quasi_data(int n, std::span<const Complex> c, bool rotated) {
  Complex tau = 0.0;
  for (int j = 1; j < n; ++j) tau += c[static_cast<std::size_t>(j)];
  Expr omega = sum_vars(2, n);
  if (rotated) {
    tau -= c[0];
    omega = omega - Expr::var(1);
  }
  const Complex c1 = c[0];
  if (effectively_zero(tau, c)) {
    if (c1 != Complex{}) throw ProblemError("tau vanishes while c1 != 0");
    return {tau, 0.0, omega};
  }
  return {tau, c1 / (2.0 * tau), omega};
}

PDDEProblem fte_problem(EquationKind kind, int n, std::span<const Complex> c, const Expr& phi, int m1) {
  PDDEProblem p;
  p.kind = kind;
  p.dimension = n;
  p.m1 = m1;
  p.shift.assign(c.begin(), c.end());
  p.phi = phi;
  return p;
}

// (z1 - c1)(g + k w) - (g + k(w - tau))^2 + (c1^2 - z1^2)/4 + phi(z - c)
Expr form_two(const Expr& g, const QuasiData& q, Complex c1, const Expr& phi_back) {
  const Expr z1 = Expr::var(1);
  const Expr k(q.k);
  return fold_constants((z1 - Expr(c1)) * (g + k * q.omega) -
                        pow(g + k * (q.omega - Expr(q.tau)), 2) +
                        (Expr(c1 * c1) - pow(z1, 2)) / Expr(4.0) + phi_back);
}

// phi(z - c) - (-(z1 - c1)/2 + g(z - c))^2
Expr form_one(const Expr& g_back, Complex c1, const Expr& phi_back) {
  const Expr z1 = Expr::var(1);
  return fold_constants(phi_back - pow(-(z1 - Expr(c1)) / Expr(2.0) + g_back, 2));
}

}  // namespace

Construction construct_t1(const T1Params& p) {
  const int n = p.dimension;
  check_shape(n, p.shift, 2);
  check_vars(p.g_part, n, "g");
  check_vars(p.phi, n, "phi");
  if (depends_on(p.g_part, 1)) throw ProblemError("g must not depend on z1");
  if (depends_on(p.phi, 1)) throw ProblemError("phi must not depend on z1");

  const Complex c1 = p.shift[0];
  const auto back = negated(p.shift);
  const Expr phi_back = shift(p.phi, back);
  Expr f;
  if (p.form == SolutionForm::I) {
    require_increment(p.g_part, p.shift, c1 / 2.0, n, "quasi-period relation g1(w+c') = g1(w) + c1/2");
    f = form_one(shift(p.g_part, back), c1, phi_back);
  } else {
    const QuasiData q = quasi_data(n, p.shift, false);
    require_increment(p.g_part, p.shift, 0.0, n, "periodicity g2(w+c') = g2(w)");
    f = form_two(p.g_part, q, c1, phi_back);
  }
  return {f, fte_problem(EquationKind::Fte, n, p.shift, p.phi, 2)};
}

Construction construct_t2(const T2Params& p) {
  const int n = p.dimension;
  check_shape(n, p.shift, 2);
  check_vars(p.g_part, n, "g");
  check_vars(p.phi, n, "phi");
  if (depends_on(p.phi, 1) || depends_on(p.phi, 2)) throw ProblemError("phi must not depend on z1 or z2");
  require_annihilated(p.g_part, n);

  const Complex c1 = p.shift[0];
  const auto back = negated(p.shift);
  const Expr phi_back = shift(p.phi, back);
  Expr f;
  if (p.form == SolutionForm::I) {
    require_increment(p.g_part, p.shift, c1 / 2.0, n, "quasi-period relation g2(w+c') = g2(w) + c1/2");
    f = form_one(shift(p.g_part, back), c1, phi_back);
  } else {
    const QuasiData q = quasi_data(n, p.shift, true);
    require_increment(p.g_part, p.shift, 0.0, n, "periodicity g4(w+c') = g4(w)");
    f = form_two(p.g_part, q, c1, phi_back);
  }
  return {f, fte_problem(EquationKind::Ftee, n, p.shift, p.phi, 2)};
}

Construction construct_cor1(int n, std::span<const Complex> c, const Expr& g) {
  check_shape(n, c, 2);
  check_vars(g, n, "g");
  if (depends_on(g, 1)) throw ProblemError("g must not depend on z1");
  require_increment(g, c, 0.0, n, "periodicity g2(w+c') = g2(w)");
  const QuasiData q = quasi_data(n, c, false);
  const Expr z1 = Expr::var(1);
  const Complex c1 = c[0];
  const Expr k(q.k);
  // 1 + (c1^2 - z1^2)/4 + k z1 w + z1 g - (g + k(w - tau))^2 - c1 (g + k w)
  const Expr f = fold_constants(Expr(1.0) + (Expr(c1 * c1) - pow(z1, 2)) / Expr(4.0) + k * z1 * q.omega +
                                z1 * g - pow(g + k * (q.omega - Expr(q.tau)), 2) -
                                Expr(c1) * (g + k * q.omega));
  return {f, fte_problem(EquationKind::Fte, n, c, Expr(1.0), 2)};
}

Construction construct_cor2(int n, std::span<const Complex> c, const Expr& g) {
  check_shape(n, c, 2);
  check_vars(g, n, "g");
  require_annihilated(g, n);
  require_increment(g, c, 0.0, n, "periodicity g4(w+c') = g4(w)");
  const QuasiData q = quasi_data(n, c, true);
  const Expr z1 = Expr::var(1);
  const Complex c1 = c[0];
  const Expr k(q.k);
  const Expr inner = g + k * (q.omega - Expr(q.tau));
  // 1 + z1 (g + k w) - c1 (g + k(w - tau)) - (g + k(w - tau))^2 - (c1^2 + z1^2)/4
  const Expr f = fold_constants(Expr(1.0) + z1 * (g + k * q.omega) - Expr(c1) * inner - pow(inner, 2) -
                                (Expr(c1 * c1) + pow(z1, 2)) / Expr(4.0));
  return {f, fte_problem(EquationKind::Ftee, n, c, Expr(1.0), 2)};
}

Construction negative_control_cubic(int n, std::span<const Complex> c, const Expr& g) {
  Construction out = construct_cor1(n, c, g);
  out.problem.m1 = 3;
  return out;
}

Construction construct_legacy(LegacyEquation which, const Expr& g, std::span<const Complex> c) {
  check_shape(2, c, 2);
  check_vars(g, 2, "G");
  const Complex c1 = c[0];
  const Complex c2 = c[1];
  const Expr z1 = Expr::var(1);
  const Expr z2 = Expr::var(2);
  const Expr quarter_c1sq(c1 * c1 / 4.0);

  PDDEProblem p;
  p.dimension = 2;
  p.m1 = 2;
  p.m2 = 1;
  p.shift.assign(c.begin(), c.end());

  Expr f;
  if (which == LegacyEquation::Equ1) {
    if (c2 == Complex{}) throw ProblemError("equ1 needs c2 != 0");
    if (depends_on(g, 1)) throw ProblemError("G1 must be a function of z2 alone");
    require_increment(g, c, 0.0, 2, "periodicity G1(z2 + c2) = G1(z2)");
    const Expr k(c1 / (2.0 * c2));
    // 1 - c1^2/4 - z1^2/4 + k z1 z2 - (c1^2/(2 c2))(z2 - c2) + (z1 - c1) G
    //   - [k (z2 - c2) + G]^2
    f = Expr(1.0) - quarter_c1sq - pow(z1, 2) / Expr(4.0) + k * z1 * z2 -
        Expr(c1 * c1 / (2.0 * c2)) * (z2 - Expr(c2)) + (z1 - Expr(c1)) * g -
        pow(k * (z2 - Expr(c2)) + g, 2);
    p.kind = EquationKind::Equ1;
  } else {
    const Complex period = c2 - c1;
    if (period == Complex{}) throw ProblemError("equ2 needs c2 != c1");
    require_annihilated(g, 2);
    require_increment(g, c, 0.0, 2, "periodicity G2(u + c2 - c1) = G2(u)");
    const Expr a3(c1 / (2.0 * period));
    const Expr u = z2 - z1;
    // 1 - c1^2/4 - z1^2/4 + z1 [G + a3 u] - c1 G - a3 c1 [u - (c2 - c1)]
    //   - [G + a3 (u - (c2 - c1))]^2
    f = Expr(1.0) - quarter_c1sq - pow(z1, 2) / Expr(4.0) + z1 * (g + a3 * u) - Expr(c1) * g -
        a3 * Expr(c1) * (u - Expr(period)) - pow(g + a3 * (u - Expr(period)), 2);
    p.kind = EquationKind::Equ2;
  }
  return {fold_constants(f), p};
}

FermatPair construct_fermat_pair(FermatFamily family, const Expr& h) {
  switch (family) {
    case FermatFamily::CosSin:
      return {Expr::cos(h), Expr::sin(h), 2};
    case FermatFamily::Mobius: {
      const Expr den = Expr(1.0) + pow(h, 2);
      return {fold_constants(Expr(2.0) * h / den), fold_constants((Expr(1.0) - pow(h, 2)) / den), 2};
    }
    case FermatFamily::Cubic: {
      const Expr ratio = Expr::wp_prime(h) / Expr(std::sqrt(3.0));
      const Expr den = Expr(2.0) * Expr::wp(h);
      return {fold_constants((Expr(1.0) + ratio) / den), fold_constants((Expr(1.0) - ratio) / den), 3};
    }
  }
  throw ProblemError("unknown Fermat family");
}

PDDEProblem fermat_problem(const FermatPair& pair, int dimension) {
  PDDEProblem p;
  p.kind = EquationKind::Fermat;
  p.dimension = dimension;
  p.m1 = pair.power;
  p.g = pair.g;
  return p;
}

}  // namespace fpdde
