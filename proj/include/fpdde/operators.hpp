#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpdde/expr.hpp"

namespace fpdde {

// G f = sum_I a_I(z) d^I f over multi-indices with 1 <= |I| <= n.
struct LinearPDOperator {
  int dimension = 0;
  std::vector<std::pair<MultiIndex, Expr>> terms;

  // Throws ProblemError for bad index lengths, dimension mismatches, or when
  // every coefficient vanishes at a handful of sampled points.
  void validate() const;

  // d/dz1 and d/dz1 + d/dz2.
  static LinearPDOperator first_partial(int dimension);
  static LinearPDOperator directional_12(int dimension);
};

enum class EquationKind { Fermat, Xc, Xw, Equ1, Equ2, Fte, Ftee, Fg };

std::string_view kind_name(EquationKind kind);
EquationKind parse_kind(std::string_view name);

// One equation instance. Residual shapes (LHS - RHS):
//   fermat  f^m1 + g^m1 - 1
//   xc      (d1 f)^m1 + f(z+c)^m2 - 1
//   xw      (d1 f + d2 f)^m1 + f(z+c)^m2 - 1
//   equ1    xc with (m1, m2) = (2, 1)
//   equ2    xw with (m1, m2) = (2, 1)
//   fte     (d1 f)^m1 + f(z+c) - phi(z2..zn)
//   ftee    (d1 f + d2 f)^m1 + f(z+c) - phi(z3..zn)
//   fg      (G f)^m1 + alpha (f(z+c) - f(z))^m2 - beta
// The (xc, xw) powers (n, m) of the original two-variable equations map onto
// (m1, m2) here so they cannot collide with the dimension.
struct PDDEProblem {
  EquationKind kind = EquationKind::Fte;
  int dimension = 0;
  int m1 = 2;
  int m2 = 1;
  std::vector<Complex> shift;
  std::optional<Expr> alpha;
  std::optional<Expr> beta;
  std::optional<Expr> phi;
  std::optional<Expr> g;
  std::optional<LinearPDOperator> op;

  // Throws ProblemError on missing fields or violated invariants.
  void validate() const;
};

Expr apply_linear_operator(const LinearPDOperator& op, const Expr& f);

// f(z+c) - f(z); rejects c == 0.
Expr difference(const Expr& f, std::span<const Complex> c);

Expr residual(const PDDEProblem& p, const Expr& f);

// The individual LHS and RHS terms of the equation for f; the verifier scales
// residuals by the largest of them.
std::vector<Expr> equation_terms(const PDDEProblem& p, const Expr& f);

}  // namespace fpdde
