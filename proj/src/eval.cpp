#include <cmath>
#include <string>

#include "fpdde/elliptic.hpp"
#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"

namespace fpdde {
namespace {

constexpr Complex kI{0.0, 1.0};

template <class T>
T integer_power(T base, unsigned n) {
  T result = Complex(1.0);
  while (n != 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n != 0) base = base * base;
  }
  return result;
}

// Complex arithmetic with a pole guard on division.
struct PlainArith {
  using T = Complex;
  const EvalOptions& opts;

  T divide(const T& n, const T& d) const {
    if (std::abs(d) < opts.pole_epsilon) throw PoleHit("denominator vanishes");
    return n / d;
  }
  T exp(const T& a) const { return std::exp(a); }
  T sin(const T& a) const { return std::sin(a); }
  T cos(const T& a) const { return std::cos(a); }
  T wp(const T& a, bool prime) const {
    if (opts.elliptic == nullptr) throw EvalError("Weierstrass node evaluated without elliptic context");
    const auto [p, dp] = opts.elliptic->wp_pair(a);
    return prime ? dp : p;
  }
};

struct ScaledArith {
  using T = ScaledComplex;
  double log_pole_epsilon;

  T divide(const T& n, const T& d) const {
    if (d.is_zero() || d.log_abs() < log_pole_epsilon) throw PoleHit("denominator vanishes");
    return n / d;
  }
  T exp(const T& a) const { return ScaledComplex::from_exponent(a.value()); }
  T sin(const T& a) const {
    const Complex u = a.value();
    return (ScaledComplex::from_exponent(kI * u) - ScaledComplex::from_exponent(-kI * u)) /
           ScaledComplex(2.0 * kI);
  }
  T cos(const T& a) const {
    const Complex u = a.value();
    return (ScaledComplex::from_exponent(kI * u) + ScaledComplex::from_exponent(-kI * u)) /
           ScaledComplex(2.0);
  }
  T wp(const T&, bool) const {
    throw EvalError("scaled evaluation does not support Weierstrass nodes");
  }
};

template <class Arith>
typename Arith::T eval_node(const Expr& e, std::span<const Complex> point, const Arith& ar) {
  using T = typename Arith::T;
  switch (e.op()) {
    case Op::Const:
      return T(e.value());
    case Op::Var: {
      const auto j = static_cast<std::size_t>(e.index());
      if (j > point.size()) {
        throw EvalError("point has " + std::to_string(point.size()) + " coordinates, expression uses z" +
                        std::to_string(j));
      }
      return T(point[j - 1]);
    }
    case Op::Add: {
      T sum = Complex(0.0);
      for (const auto& c : e.children()) sum = sum + eval_node(c, point, ar);
      return sum;
    }
    case Op::Mul: {
      T prod = Complex(1.0);
      for (const auto& c : e.children()) prod = prod * eval_node(c, point, ar);
      return prod;
    }
    case Op::Neg:
      return -eval_node(e.child(), point, ar);
    case Op::Div:
      return ar.divide(eval_node(e.child(0), point, ar), eval_node(e.child(1), point, ar));
    case Op::Pow: {
      const int k = e.exponent();
      const T base = eval_node(e.child(), point, ar);
      if (k >= 0) return integer_power(base, static_cast<unsigned>(k));
      return ar.divide(T(Complex(1.0)), integer_power(base, static_cast<unsigned>(-static_cast<long>(k))));
    }
    case Op::Exp:
      return ar.exp(eval_node(e.child(), point, ar));
    case Op::Sin:
      return ar.sin(eval_node(e.child(), point, ar));
    case Op::Cos:
      return ar.cos(eval_node(e.child(), point, ar));
    case Op::Wp:
      return ar.wp(eval_node(e.child(), point, ar), false);
    case Op::WpPrime:
      return ar.wp(eval_node(e.child(), point, ar), true);
  }
  throw EvalError("unknown expression node");
}

}  // namespace

Complex eval(const Expr& e, std::span<const Complex> point, const EvalOptions& opts) {
  return eval_node(e, point, PlainArith{opts});
}

ScaledComplex eval_scaled(const Expr& e, std::span<const Complex> point, double pole_epsilon) {
  return eval_node(e, point, ScaledArith{std::log(pole_epsilon)});
}

Complex fd_partial(const Expr& e, int var, std::span<const Complex> point, double step,
                   const EvalOptions& opts) {
  if (!(step > 0.0)) throw EvalError("finite-difference step must be positive");
  if (var < 1 || static_cast<std::size_t>(var) > point.size()) {
    throw EvalError("finite-difference variable out of range");
  }
  std::vector<Complex> fwd(point.begin(), point.end());
  std::vector<Complex> bwd = fwd;
  fwd[static_cast<std::size_t>(var - 1)] += step;
  bwd[static_cast<std::size_t>(var - 1)] -= step;
  return (eval(e, fwd, opts) - eval(e, bwd, opts)) / (2.0 * step);
}

}  // namespace fpdde
