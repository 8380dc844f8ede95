#include "fpdde/expr.hpp"

#include <algorithm>
#include <numeric>

#include "fpdde/error.hpp"

namespace fpdde {

struct Expr::Node {
  Op op;
  Complex value;
  int index;  // var index or exponent
  std::vector<Expr> kids;
};

Expr Expr::make(Op op, Complex value, int index, std::vector<Expr> kids) {
  return Expr(std::make_shared<const Node>(Node{op, value, index, std::move(kids)}));
}

Expr::Expr() : Expr(Complex{}) {}
Expr::Expr(Complex value) : node_(std::make_shared<const Node>(Node{Op::Const, value, 0, {}})) {}
Expr::Expr(double value) : Expr(Complex(value)) {}
Expr::Expr(int value) : Expr(Complex(static_cast<double>(value))) {}

Expr Expr::constant(Complex value) { return Expr(value); }

Expr Expr::var(int index) {
  if (index < 1) throw Error("variable index must be >= 1");
  return make(Op::Var, {}, index, {});
}

Expr Expr::add(std::vector<Expr> terms) {
  if (terms.empty()) return Expr(0.0);
  if (terms.size() == 1) return terms.front();
  return make(Op::Add, {}, 0, std::move(terms));
}

Expr Expr::mul(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1.0);
  if (factors.size() == 1) return factors.front();
  return make(Op::Mul, {}, 0, std::move(factors));
}

Expr Expr::neg(Expr child) { return make(Op::Neg, {}, 0, {std::move(child)}); }
Expr Expr::div(Expr n, Expr d) { return make(Op::Div, {}, 0, {std::move(n), std::move(d)}); }
Expr Expr::pow(Expr base, int k) { return make(Op::Pow, {}, k, {std::move(base)}); }
Expr Expr::exp(Expr a) { return make(Op::Exp, {}, 0, {std::move(a)}); }
Expr Expr::sin(Expr a) { return make(Op::Sin, {}, 0, {std::move(a)}); }
Expr Expr::cos(Expr a) { return make(Op::Cos, {}, 0, {std::move(a)}); }
Expr Expr::wp(Expr a) { return make(Op::Wp, {}, 0, {std::move(a)}); }
Expr Expr::wp_prime(Expr a) { return make(Op::WpPrime, {}, 0, {std::move(a)}); }

Op Expr::op() const { return node_->op; }
const Complex& Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
std::span<const Expr> Expr::children() const { return node_->kids; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.index != y.index || x.kids.size() != y.kids.size()) return false;
  if (x.op == Op::Const && x.value != y.value) return false;
  return std::equal(x.kids.begin(), x.kids.end(), y.kids.begin());
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, Expr::neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
Expr operator-(const Expr& a) { return Expr::neg(a); }
Expr exp(const Expr& e) { return Expr::exp(e); }
Expr sin(const Expr& e) { return Expr::sin(e); }
Expr cos(const Expr& e) { return Expr::cos(e); }
Expr pow(const Expr& e, int k) { return Expr::pow(e, k); }

MultiIndex::MultiIndex(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw Error("multi-index needs at least one component");
  for (int o : orders_) {
    if (o < 0) throw Error("multi-index components must be non-negative");
  }
}

MultiIndex MultiIndex::zero(int dimension) {
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

MultiIndex MultiIndex::unit(int dimension, int var) {
  if (var < 1 || var > dimension) throw Error("unit multi-index out of range");
  std::vector<int> v(static_cast<std::size_t>(dimension), 0);
  v[static_cast<std::size_t>(var - 1)] = 1;
  return MultiIndex(std::move(v));
}

int MultiIndex::length() const { return std::accumulate(orders_.begin(), orders_.end(), 0); }

int max_var_index(const Expr& e) {
  if (e.op() == Op::Var) return e.index();
  int m = 0;
  for (const auto& c : e.children()) m = std::max(m, max_var_index(c));
  return m;
}

bool depends_on(const Expr& e, int var) {
  if (e.op() == Op::Var) return e.index() == var;
  return std::any_of(e.children().begin(), e.children().end(),
                     [var](const Expr& c) { return depends_on(c, var); });
}

bool contains_elliptic(const Expr& e) {
  if (e.op() == Op::Wp || e.op() == Op::WpPrime) return true;
  return std::any_of(e.children().begin(), e.children().end(),
                     [](const Expr& c) { return contains_elliptic(c); });
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& c : e.children()) n += node_count(c);
  return n;
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  switch (e.op()) {
    case Op::Const:
      return e;
    case Op::Var: {
      const auto j = static_cast<std::size_t>(e.index());
      return j <= replacements.size() ? replacements[j - 1] : e;
    }
    default:
      break;
  }
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(substitute(c, replacements));
  switch (e.op()) {
    case Op::Add: return Expr::add(std::move(kids));
    case Op::Mul: return Expr::mul(std::move(kids));
    case Op::Neg: return Expr::neg(kids[0]);
    case Op::Div: return Expr::div(kids[0], kids[1]);
    case Op::Pow: return Expr::pow(kids[0], e.exponent());
    case Op::Exp: return Expr::exp(kids[0]);
    case Op::Sin: return Expr::sin(kids[0]);
    case Op::Cos: return Expr::cos(kids[0]);
    case Op::Wp: return Expr::wp(kids[0]);
    case Op::WpPrime: return Expr::wp_prime(kids[0]);
    default: break;
  }
  return e;
}

Expr shift(const Expr& e, std::span<const Complex> by) {
  std::vector<Expr> repl;
  repl.reserve(by.size());
  for (std::size_t j = 0; j < by.size(); ++j) {
    const Expr v = Expr::var(static_cast<int>(j + 1));
    repl.push_back(by[j] == Complex{} ? v : v + Expr(by[j]));
  }
  return fold_constants(substitute(e, repl));
}

}  // namespace fpdde
