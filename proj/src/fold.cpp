#include <cmath>

#include "fpdde/expr.hpp"

namespace fpdde {
namespace {

Complex ipow(Complex base, int k) {
  const bool invert = k < 0;
  unsigned n = invert ? static_cast<unsigned>(-static_cast<long>(k)) : static_cast<unsigned>(k);
  Complex result = 1.0;
  while (n != 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1;
  }
  return invert ? 1.0 / result : result;
}

Expr fold_add(std::span<const Expr> kids) {
  Complex sum = 0.0;
  std::vector<Expr> rest;
  auto absorb = [&](const Expr& k, auto& self) -> void {
    if (k.op() == Op::Add) {
      for (const auto& g : k.children()) self(g, self);
    } else if (k.is_constant()) {
      sum += k.value();
    } else {
      rest.push_back(k);
    }
  };
  for (const auto& k : kids) absorb(k, absorb);
  if (rest.empty()) return Expr(sum);
  if (sum != Complex{}) rest.insert(rest.begin(), Expr(sum));
  return Expr::add(std::move(rest));
}

Expr fold_mul(std::span<const Expr> kids) {
  Complex prod = 1.0;
  std::vector<Expr> rest;
  auto absorb = [&](const Expr& k, auto& self) -> void {
    if (k.op() == Op::Mul) {
      for (const auto& g : k.children()) self(g, self);
    } else if (k.is_constant()) {
      prod *= k.value();
    } else {
      rest.push_back(k);
    }
  };
  for (const auto& k : kids) absorb(k, absorb);
  if (prod == Complex{} || rest.empty()) return Expr(prod);
  if (prod == Complex(-1.0) && rest.size() == 1) return Expr::neg(rest.front());
  if (prod != Complex(1.0)) rest.insert(rest.begin(), Expr(prod));
  return Expr::mul(std::move(rest));
}

}  // namespace

Expr fold_constants(const Expr& e) {
  if (e.op() == Op::Const || e.op() == Op::Var) return e;

  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(fold_constants(c));

  switch (e.op()) {
    case Op::Add:
      return fold_add(kids);
    case Op::Mul:
      return fold_mul(kids);
    case Op::Neg: {
      const Expr& a = kids[0];
      if (a.is_constant()) return Expr(-a.value());
      if (a.op() == Op::Neg) return a.child();
      return Expr::neg(a);
    }
    case Op::Div: {
      const Expr& n = kids[0];
      const Expr& d = kids[1];
      if (d.is_constant(1.0)) return n;
      if (n.is_constant() && d.is_constant() && d.value() != Complex{}) {
        return Expr(n.value() / d.value());
      }
      if (n.is_constant(0.0)) return Expr(0.0);
      return Expr::div(n, d);
    }
    case Op::Pow: {
      const int k = e.exponent();
      const Expr& b = kids[0];
      if (k == 0) return Expr(1.0);
      if (k == 1) return b;
      if (b.is_constant() && (k > 0 || b.value() != Complex{})) return Expr(ipow(b.value(), k));
      if (b.op() == Op::Pow) return fold_constants(Expr::pow(b.child(), b.exponent() * k));
      return Expr::pow(b, k);
    }
    case Op::Exp:
      if (kids[0].is_constant()) return Expr(std::exp(kids[0].value()));
      return Expr::exp(kids[0]);
    case Op::Sin:
      if (kids[0].is_constant()) return Expr(std::sin(kids[0].value()));
      return Expr::sin(kids[0]);
    case Op::Cos:
      if (kids[0].is_constant()) return Expr(std::cos(kids[0].value()));
      return Expr::cos(kids[0]);
    case Op::Wp:
      return Expr::wp(kids[0]);
    case Op::WpPrime:
      return Expr::wp_prime(kids[0]);
    default:
      return e;
  }
}

}  // namespace fpdde
