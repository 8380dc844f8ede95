#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpdde/scaled_complex.hpp"

namespace fpdde {

using Complex = std::complex<double>;

class EllipticContext;

enum class Op { Const, Var, Add, Mul, Neg, Div, Pow, Exp, Sin, Cos, Wp, WpPrime };

// Immutable expression tree over z1..zn with complex constants. Copies share
// structure; nodes are never mutated after construction, so values can be
// passed between threads freely.
class Expr {
 public:
  Expr();  // constant 0
  Expr(Complex value);  // NOLINT(google-explicit-constructor)
  Expr(double value);   // NOLINT(google-explicit-constructor)
  Expr(int value);      // NOLINT(google-explicit-constructor)

  static Expr constant(Complex value);
  // 1-based variable index.
  static Expr var(int index);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr neg(Expr child);
  static Expr div(Expr numerator, Expr denominator);
  static Expr pow(Expr base, int exponent);
  static Expr exp(Expr arg);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  static Expr wp(Expr arg);
  static Expr wp_prime(Expr arg);

  Op op() const;
  // Valid for Op::Const.
  const Complex& value() const;
  // Variable index for Op::Var, exponent for Op::Pow.
  int index() const;
  int exponent() const;
  std::span<const Expr> children() const;
  const Expr& child(std::size_t i = 0) const { return children()[i]; }

  bool is_constant() const { return op() == Op::Const; }
  bool is_constant(Complex v) const { return is_constant() && value() == v; }

  // Structural equality; constants compare exactly.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, Complex value, int index, std::vector<Expr> kids);

  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr exp(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr pow(const Expr& e, int k);

// Multi-index (i1, ..., in) selecting the mixed partial d^|I| / dz1^i1 ... dzn^in.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> orders);
  static MultiIndex zero(int dimension);
  static MultiIndex unit(int dimension, int var);

  int dimension() const { return static_cast<int>(orders_.size()); }
  int operator[](std::size_t i) const { return orders_[i]; }
  const std::vector<int>& orders() const { return orders_; }
  int length() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> orders_;
};

struct EvalOptions {
  const EllipticContext* elliptic = nullptr;
  // Denominators with modulus below this are reported as PoleHit.
  double pole_epsilon = 1e-300;
};

// Throws PoleHit, or EvalError when the point is too short or an elliptic node
// is reached without a context.
Complex eval(const Expr& e, std::span<const Complex> point, const EvalOptions& opts = {});

// Overflow-free evaluation for entire expressions (no Wp/WpPrime).
ScaledComplex eval_scaled(const Expr& e, std::span<const Complex> point,
                          double pole_epsilon = 1e-300);

// d/dz_var, 1-based. Result is passed through fold_constants.
Expr derivative(const Expr& e, int var);
Expr partial(const Expr& e, const MultiIndex& index);
// Sum_j direction[j] * d/dz_{j+1}, taken in one pass so that arguments constant
// along the direction (e.g. z2 - z1 along (1, 1)) drop out exactly.
Expr directional_derivative(const Expr& e, std::span<const Complex> direction);

// Central difference in z_var with real step.
Complex fd_partial(const Expr& e, int var, std::span<const Complex> point, double step,
                   const EvalOptions& opts = {});

// replacements[j-1] takes the place of Var(j). Variables beyond the list are
// kept.
Expr substitute(const Expr& e, std::span<const Expr> replacements);
// Var(j) -> Var(j) + shift[j-1].
Expr shift(const Expr& e, std::span<const Complex> by);

Expr fold_constants(const Expr& e);

// Largest variable index appearing in e (0 if none).
int max_var_index(const Expr& e);
// Structural occurrence of Var(var).
bool depends_on(const Expr& e, int var);
bool contains_elliptic(const Expr& e);
std::size_t node_count(const Expr& e);

// Grammar-compatible text; parse(to_string(e), n) evaluates identically.
std::string to_string(const Expr& e);
std::string format_complex(Complex value);

// Grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('-'|'+') unary | power
//   power := atom ('^' ['-'] int | '^' '(' ['-'] int ')')?
//   atom  := number | 'i' | 'pi' | 'e' | 'z'digits | func '(' expr ')' | '(' expr ')'
//   func  := exp | sin | cos | sqrt | wp | wpd
// sqrt only accepts constant non-negative real arguments. The result is
// constant-folded. Throws ParseError.
Expr parse(std::string_view text, int dimension);

// Parses an expression that must be free of variables and returns its value.
Complex parse_constant(std::string_view text);

}  // namespace fpdde
