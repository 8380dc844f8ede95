#include "fpdde/operators.hpp"

#include <algorithm>

#include "fpdde/error.hpp"
#include "probe.hpp"

namespace fpdde {
namespace {

void check_expr_dimension(const Expr& e, int n, const char* what) {
  if (max_var_index(e) > n) {
    throw ProblemError(std::string(what) + " uses a variable beyond dimension " + std::to_string(n));
  }
}

const Expr& require(const std::optional<Expr>& e, const char* what, EquationKind kind) {
  if (!e) {
    throw ProblemError(std::string("kind ") + std::string(kind_name(kind)) + " requires " + what);
  }
  return *e;
}

bool is_zero_vector(std::span<const Complex> c) {
  return std::all_of(c.begin(), c.end(), [](Complex x) { return x == Complex{}; });
}

Expr first_partial_of(const Expr& f) { return derivative(f, 1); }
Expr directional_of(const Expr& f) {
  static constexpr Complex kDiagonal[] = {1.0, 1.0};
  return fold_constants(directional_derivative(f, kDiagonal));
}

}  // namespace

LinearPDOperator LinearPDOperator::first_partial(int dimension) {
  return {dimension, {{MultiIndex::unit(dimension, 1), Expr(1.0)}}};
}

LinearPDOperator LinearPDOperator::directional_12(int dimension) {
  return {dimension,
          {{MultiIndex::unit(dimension, 1), Expr(1.0)}, {MultiIndex::unit(dimension, 2), Expr(1.0)}}};
}

void LinearPDOperator::validate() const {
  if (dimension < 1) throw ProblemError("operator dimension must be >= 1");
  if (terms.empty()) throw ProblemError("operator has no terms");
  bool any_nonzero = false;
  for (const auto& [index, coeff] : terms) {
    if (index.dimension() != dimension) throw ProblemError("operator multi-index has wrong length");
    if (index.length() < 1 || index.length() > dimension) {
      throw ProblemError("operator multi-index order must lie in [1, n]");
    }
    check_expr_dimension(coeff, dimension, "operator coefficient");
    if (!detail::vanishes_on_probe(coeff, dimension)) any_nonzero = true;
  }
  if (!any_nonzero) throw ProblemError("all operator coefficients vanish identically");
}

std::string_view kind_name(EquationKind kind) {
  switch (kind) {
    case EquationKind::Fermat: return "fermat";
    case EquationKind::Xc: return "xc";
    case EquationKind::Xw: return "xw";
    case EquationKind::Equ1: return "equ1";
    case EquationKind::Equ2: return "equ2";
    case EquationKind::Fte: return "fte";
    case EquationKind::Ftee: return "ftee";
    case EquationKind::Fg: return "fg";
  }
  return "?";
}

EquationKind parse_kind(std::string_view name) {
  for (auto k : {EquationKind::Fermat, EquationKind::Xc, EquationKind::Xw, EquationKind::Equ1,
                 EquationKind::Equ2, EquationKind::Fte, EquationKind::Ftee, EquationKind::Fg}) {
    if (kind_name(k) == name) return k;
  }
  throw ProblemError("unknown equation kind '" + std::string(name) + "'");
}

void PDDEProblem::validate() const {
  const int n = dimension;
  if (n < 1) throw ProblemError("dimension must be >= 1");
  if (m1 < 1 || m2 < 1) throw ProblemError("exponents m1, m2 must be positive");

  const bool two_var_operator =
      kind == EquationKind::Xw || kind == EquationKind::Equ2 || kind == EquationKind::Ftee;
  if (two_var_operator && n < 2) throw ProblemError("d1 + d2 operator needs dimension >= 2");
  if ((kind == EquationKind::Equ1 || kind == EquationKind::Equ2) && n != 2) {
    throw ProblemError("equ1/equ2 are two-variable equations");
  }

  if (kind != EquationKind::Fermat) {
    if (shift.size() != static_cast<std::size_t>(n)) {
      throw ProblemError("shift vector must have " + std::to_string(n) + " components");
    }
    const bool needs_nonzero_shift =
        kind == EquationKind::Fte || kind == EquationKind::Ftee || kind == EquationKind::Fg;
    if (needs_nonzero_shift && is_zero_vector(shift)) throw ProblemError("shift vector must be nonzero");
  }

  switch (kind) {
    case EquationKind::Fermat:
      check_expr_dimension(require(g, "g", kind), n, "g");
      break;
    case EquationKind::Fte: {
      const Expr& p = require(phi, "phi", kind);
      check_expr_dimension(p, n, "phi");
      if (depends_on(p, 1)) throw ProblemError("phi must not depend on z1");
      break;
    }
    case EquationKind::Ftee: {
      const Expr& p = require(phi, "phi", kind);
      check_expr_dimension(p, n, "phi");
      if (depends_on(p, 1) || depends_on(p, 2)) throw ProblemError("phi must not depend on z1 or z2");
      break;
    }
    case EquationKind::Fg: {
      if (!op) throw ProblemError("kind fg requires an operator");
      if (op->dimension != n) throw ProblemError("operator dimension differs from problem dimension");
      op->validate();
      const Expr& a = require(alpha, "alpha", kind);
      const Expr& b = require(beta, "beta", kind);
      check_expr_dimension(a, n, "alpha");
      check_expr_dimension(b, n, "beta");
      if (detail::vanishes_on_probe(a, n)) throw ProblemError("alpha vanishes identically");
      if (detail::vanishes_on_probe(b, n)) throw ProblemError("beta vanishes identically");
      break;
    }
    default:
      break;
  }
}

Expr apply_linear_operator(const LinearPDOperator& op, const Expr& f) {
  std::vector<Expr> terms;
  terms.reserve(op.terms.size());
  for (const auto& [index, coeff] : op.terms) {
    if (index.dimension() != op.dimension) throw ProblemError("operator multi-index has wrong length");
    terms.push_back(coeff * partial(f, index));
  }
  return fold_constants(Expr::add(std::move(terms)));
}

Expr difference(const Expr& f, std::span<const Complex> c) {
  if (is_zero_vector(c)) throw ProblemError("difference operator needs a nonzero shift");
  return fold_constants(shift(f, c) - f);
}

std::vector<Expr> equation_terms(const PDDEProblem& p, const Expr& f) {
  p.validate();
  check_expr_dimension(f, p.dimension, "candidate");
  const Expr one(1.0);
  switch (p.kind) {
    case EquationKind::Fermat:
      return {fold_constants(pow(f, p.m1)), fold_constants(pow(*p.g, p.m1)), one};
    case EquationKind::Xc:
      return {fold_constants(pow(first_partial_of(f), p.m1)), fold_constants(pow(shift(f, p.shift), p.m2)),
              one};
    case EquationKind::Xw:
      return {fold_constants(pow(directional_of(f), p.m1)), fold_constants(pow(shift(f, p.shift), p.m2)),
              one};
    case EquationKind::Equ1:
      return {fold_constants(pow(first_partial_of(f), 2)), shift(f, p.shift), one};
    case EquationKind::Equ2:
      return {fold_constants(pow(directional_of(f), 2)), shift(f, p.shift), one};
    case EquationKind::Fte:
      return {fold_constants(pow(first_partial_of(f), p.m1)), shift(f, p.shift), *p.phi};
    case EquationKind::Ftee:
      return {fold_constants(pow(directional_of(f), p.m1)), shift(f, p.shift), *p.phi};
    case EquationKind::Fg:
      return {fold_constants(pow(apply_linear_operator(*p.op, f), p.m1)),
              fold_constants(*p.alpha * pow(difference(f, p.shift), p.m2)), *p.beta};
  }
  throw ProblemError("unknown equation kind");
}

Expr residual(const PDDEProblem& p, const Expr& f) {
  auto terms = equation_terms(p, f);
  // Last term is the right-hand side.
  const Expr rhs = terms.back();
  terms.back() = -rhs;
  return fold_constants(Expr::add(std::move(terms)));
}

}  // namespace fpdde
