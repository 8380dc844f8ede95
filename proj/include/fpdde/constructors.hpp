#pragma once

#include <span>
#include <vector>

#include "fpdde/expr.hpp"
#include "fpdde/operators.hpp"

namespace fpdde {

enum class SolutionForm { I, II };

// Entire solutions of (d1 f)^2 + f(z+c) = phi(z2..zn).
//   form I:  g_part is g1(z2..zn) with g1(w + c') = g1(w) + c1/2
//   form II: g_part is g2(z2..zn) with g2(w + c') = g2(w), tau = c2+..+cn
// where c' = (c2..cn). phi must not depend on z1.
struct T1Params {
  int dimension = 0;
  std::vector<Complex> shift;
  SolutionForm form = SolutionForm::II;
  Expr g_part;
  Expr phi = Expr(1.0);
};

// Entire solutions of (d1 f + d2 f)^2 + f(z+c) = phi(z3..zn). g_part is
// written in z but must depend on z1, z2 only through z2 - z1 (so that
// d1 + d2 annihilates it), with period (c2 - c1, c3, .., cn) in the
// coordinates (z2 - z1, z3, .., zn): g(z + c) = g(z) (+ c1/2 for form I).
// tau = c2 - c1 + c3 + .. + cn.
struct T2Params {
  int dimension = 0;
  std::vector<Complex> shift;
  SolutionForm form = SolutionForm::II;
  Expr g_part;
  Expr phi = Expr(1.0);
};

struct Construction {
  Expr f;
  PDDEProblem problem;
};

// Throw ProblemError when tau == 0 with c1 != 0 (form II), when the
// periodicity or increment law of g_part fails (the message carries the
// largest violation), or when the variable restrictions are broken.
Construction construct_t1(const T1Params& params);
Construction construct_t2(const T2Params& params);

// The phi == 1 closed forms, transcribed term by term rather than routed
// through construct_t1 / construct_t2.
Construction construct_cor1(int dimension, std::span<const Complex> shift, const Expr& g2);
Construction construct_cor2(int dimension, std::span<const Complex> shift, const Expr& g4);

// The m1 = 3 analog of construct_cor1: same f, equation with m1 = 3. Its
// residual is expected not to vanish.
Construction negative_control_cubic(int dimension, std::span<const Complex> shift, const Expr& g2);

enum class LegacyEquation { Equ1, Equ2 };

// Two-variable solutions of (d1 f)^2 + f(z+c) = 1 (equ1, g periodic in z2
// with period c2) and (d1 f + d2 f)^2 + f(z+c) = 1 (equ2, g a function of
// z2 - z1 with period c2 - c1).
Construction construct_legacy(LegacyEquation which, const Expr& g, std::span<const Complex> shift);

enum class FermatFamily { CosSin, Mobius, Cubic };

struct FermatPair {
  Expr f;
  Expr g;
  int power = 2;  // f^power + g^power = 1
};

FermatPair construct_fermat_pair(FermatFamily family, const Expr& h);

// The fermat-kind problem the pair solves.
PDDEProblem fermat_problem(const FermatPair& pair, int dimension);

}  // namespace fpdde
