#include "fpdde/error.hpp"
#include "fpdde/expr.hpp"

#include <span>
#include <vector>

namespace fpdde {
namespace {

// var is the direction: d(z_j) = var[j-1], zero past its end.
using Dir = std::span<const Complex>;

Expr d(const Expr& e, Dir var);

// Chain rule factor: outer * inner', dropped when the argument is constant along var.
Expr chain(const Expr& outer, const Expr& arg, Dir var) {
  const Expr inner = d(arg, var);
  if (inner.is_constant(0.0)) return Expr(0.0);
  return fold_constants(outer * inner);
}

Expr d(const Expr& e, Dir var) {
  switch (e.op()) {
    case Op::Const:
      return Expr(0.0);
    case Op::Var:
      return Expr(static_cast<std::size_t>(e.index()) <= var.size() ? var[e.index() - 1] : Complex(0.0));
    case Op::Add: {
      std::vector<Expr> terms;
      for (const auto& c : e.children()) terms.push_back(d(c, var));
      return fold_constants(Expr::add(std::move(terms)));
    }
    case Op::Mul: {
      const auto kids = e.children();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        Expr di = d(kids[i], var);
        if (di.is_constant(0.0)) continue;
        std::vector<Expr> factors(kids.begin(), kids.end());
        factors[i] = std::move(di);
        terms.push_back(Expr::mul(std::move(factors)));
      }
      return fold_constants(Expr::add(std::move(terms)));
    }
    case Op::Neg:
      return fold_constants(Expr::neg(d(e.child(), var)));
    case Op::Div: {
      const Expr& u = e.child(0);
      const Expr& v = e.child(1);
      const Expr du = d(u, var);
      const Expr dv = d(v, var);
      if (dv.is_constant(0.0)) return fold_constants(Expr::div(du, v));
      return fold_constants(Expr::div(du * v - u * dv, Expr::pow(v, 2)));
    }
    case Op::Pow: {
      const int k = e.exponent();
      const Expr& b = e.child();
      return chain(Expr(static_cast<double>(k)) * Expr::pow(b, k - 1), b, var);
    }
    case Op::Exp:
      return chain(e, e.child(), var);
    case Op::Sin:
      return chain(Expr::cos(e.child()), e.child(), var);
    case Op::Cos:
      return chain(-Expr::sin(e.child()), e.child(), var);
    case Op::Wp:
      return chain(Expr::wp_prime(e.child()), e.child(), var);
    case Op::WpPrime:
      // (wp')^2 = 4 wp^3 - 1  =>  wp'' = 6 wp^2
      return chain(Expr(6.0) * Expr::pow(Expr::wp(e.child()), 2), e.child(), var);
  }
  throw Error("unknown expression node");
}

}  // namespace

Expr derivative(const Expr& e, int var) {
  if (var < 1) throw Error("derivative variable must be >= 1");
  std::vector<Complex> unit(static_cast<std::size_t>(var), Complex(0.0));
  unit.back() = 1.0;
  return d(e, unit);
}

Expr directional_derivative(const Expr& e, std::span<const Complex> direction) { return d(e, direction); }

Expr partial(const Expr& e, const MultiIndex& index) {
  Expr out = e;
  for (int j = 0; j < index.dimension(); ++j) {
    for (int k = 0; k < index[static_cast<std::size_t>(j)]; ++k) out = derivative(out, j + 1);
  }
  return out;
}

}  // namespace fpdde
